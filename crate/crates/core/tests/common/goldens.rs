// Output of `density_oracle::regenerate_goldens`.
pub const W_AT_1_GOLDEN: f64 = 7.635187488879632e-1;
pub const W_AT_1E_3_GOLDEN: f64 = 6.368223510283554e-4;
