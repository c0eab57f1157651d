//! 7-point Gauss / 15-point Kronrod embedded pair.
//!
//! Both rules are open: no node sits on a panel endpoint, so integrands
//! with integrable endpoint singularities can be handed over as they are.

use super::QuadValue;

/// Kronrod abscissae on [-1, 1]; odd indices are the Gauss nodes, the last
/// entry is the centre.
pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights; `WG[j]` belongs to the node `XGK[2j + 1]`, the last one to
/// the centre.
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub(crate) const NODES: usize = 15;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate<T> {
    pub value: T,
    pub err: f64,
}

/// Applies the pair on `[a, b]`. Returns the abscissa of the first
/// non-finite sample as the error.
pub(crate) fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> Result<PanelEstimate<T>, f64>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut eval = |t: f64| -> Result<T, f64> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(t)
        }
    };

    let f_center = eval(center)?;
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = f_center.norm() * WGK[7];

    let mut lower = [T::default(); 7];
    let mut upper = [T::default(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        lower[j] = f1;
        upper[j] = f2;
        let pair = f1 + f2;
        res_k = res_k + pair * WGK[j];
        if j % 2 == 1 {
            res_g = res_g + pair * WG[j / 2];
        }
        res_abs += WGK[j] * (f1.norm() + f2.norm());
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((lower[j] - mean).norm() + (upper[j] - mean).norm());
    }

    let scale = half.abs();
    let value = res_k * half;
    let err = rescale_error((res_k - res_g).norm() * scale, res_abs * scale, res_asc * scale);
    Ok(PanelEstimate { value, err })
}

fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw;
    if res_asc != 0.0 && err != 0.0 {
        let ratio = (200.0 * err / res_asc).powf(1.5);
        err = if ratio < 1.0 { res_asc * ratio } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}
