//! Shared oracles and frozen golden values for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Brute-force density values, frozen from `density_oracle::regenerate_goldens`
/// (10^7 midpoint samples per decade of |v|, one Richardson step).
pub const W_AT_1: f64 = W_AT_1_GOLDEN;
pub const W_AT_1E_3: f64 = W_AT_1E_3_GOLDEN;

include!("goldens.rs");

/// `w(s) = ∫_{-∞}^0 2(1 - cos(s·k(v))) / (v² + π²) dv`, `k(v) = (1+e^v)/(1-e^v)`,
/// by composite midpoint sums on log-graded decades of |v| with one
/// Richardson extrapolation, plus analytic pieces for |v| > 40 and
/// |v| < 1e-7. Works directly in v; shares nothing with the library route.
pub fn brute_force_density(s: f64, samples_per_decade: usize) -> f64 {
    let integrand = |v: f64| {
        // v < 0; k(v) = -coth(v/2)
        let k = -1.0 / (0.5 * v).tanh();
        2.0 * (1.0 - (s * k).cos()) / (v * v + PI * PI)
    };
    let mut edges = vec![-40.0, -10.0];
    let mut e = -10.0;
    while e < -1.5e-7 {
        e /= 10.0;
        edges.push(e);
    }
    let mut total = 0.0;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let fine = midpoint(&integrand, a, b, samples_per_decade);
        let coarse = midpoint(&integrand, a, b, samples_per_decade / 2);
        total += (4.0 * fine - coarse) / 3.0;
    }
    let last = -*edges.last().unwrap();
    // |v| > 40: k = 1 to within e^-40
    let far = 2.0 * (1.0 - s.cos()) * (0.5 - (40.0 / PI).atan() / PI) / 1.0;
    // |v| < last: the cosine averages out (bounded by last²/s), the 1 stays
    let near = 2.0 * (last / PI).atan() / PI;
    total + far + near
}

fn midpoint(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    // Neumaier summation
    let mut sum = 0.0;
    let mut c = 0.0;
    for i in 0..n {
        let x = f(a + (i as f64 + 0.5) * h);
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    (sum + c) * h
}
