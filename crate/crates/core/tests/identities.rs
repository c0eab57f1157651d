use cm_verify::arctan_cm::{
    g2_integrand, g_closed, g_via_g2, imag_vanishing_integral, laplace_kernel_identity, normalization_identity,
    symmetry_check, EvalPoint, OscKernelParams,
};
use cm_verify::Tolerance;

fn pt(x: f64) -> EvalPoint {
    EvalPoint::new(x).unwrap()
}

fn tight() -> Tolerance {
    Tolerance::new(1e-14, 1e-12, 1_000_000).unwrap()
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn g2_form_matches_closed_form() {
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let r = g_via_g2(pt(x), &tight()).unwrap();
        let g = g_closed(pt(x));
        assert!(r.converged);
        assert!((r.value - g).abs() <= 1e-8 * g, "x={x}: {} vs {g}", r.value);
    }
}

#[test]
fn g2_halves_agree_under_inversion() {
    for x in [0.05, 1.0, 20.0] {
        let h = symmetry_check(pt(x), &tight()).unwrap();
        assert!((h.lower.value - h.upper.value).abs() <= 1e-12 * h.lower.value + h.combined_err());
    }
}

#[test]
fn g2_integrand_pointwise() {
    // t = 1/2: (9/4) / (x/2 (x²/4 + 9/4)(ln²2 + π²))
    let x = 1.0;
    let l = 2f64.ln();
    let expected = 2.25 / (0.5 * (0.25 + 2.25) * (l * l + std::f64::consts::PI.powi(2)));
    assert!((g2_integrand(x, 0.5) - expected).abs() < 1e-15);
}

#[test]
fn imaginary_part_vanishes() {
    for x in log_spaced(0.05, 50.0, 20) {
        let r = imag_vanishing_integral(pt(x), &tight()).unwrap();
        assert!(r.converged, "x={x}");
        assert!(r.value.abs() <= 1e-9, "x={x}: {}", r.value);
    }
}

#[test]
fn normalization_against_arctan_antiderivative() {
    // ∫_0^Y dy/(y²+π²) = atan(Y/π)/π → 1/2
    let half = (f64::MAX / std::f64::consts::PI).atan() / std::f64::consts::PI;
    let n = normalization_identity(&tight()).unwrap();
    assert!((n.lower.value - half).abs() <= 1e-10);
    assert!((n.upper.value - 0.5).abs() <= 1e-10);
    assert!((n.total() - 1.0).abs() <= 1e-10);
    assert!(n.err_est() <= 1e-10);
}

#[test]
fn kernel_identity_grid() {
    // ∫₀^∞ e^{-xs}(1 - cos ωs) ds = 1/x - x/(x² + ω²) = ω²/(x(x² + ω²))
    let oracle = |a: f64, b: f64, x: f64| {
        let w = b / a;
        w * w / (x * (x * x + w * w)) / (b * b)
    };
    let vals = [0.2, 0.5, 1.0, 2.0, 5.0];
    for a in vals {
        for b in vals {
            for x in [0.1, 1.0, 10.0] {
                let (lhs, rhs) = laplace_kernel_identity(OscKernelParams::new(a, b).unwrap(), x, &tight()).unwrap();
                let o = oracle(a, b, x);
                assert!((lhs - o).abs() <= 1e-12 * o, "lhs a={a} b={b} x={x}");
                assert!((rhs.value - lhs).abs() <= 1e-9, "a={a} b={b} x={x}: {} vs {lhs}", rhs.value);
            }
        }
    }
}

#[test]
fn kernel_identity_from_t() {
    for t in [0.0, 0.3, 0.9] {
        let p = OscKernelParams::from_t(t).unwrap();
        assert_eq!((p.a(), p.b()), (1.0 - t, 1.0 + t));
        let (lhs, rhs) = laplace_kernel_identity(p, 2.0, &tight()).unwrap();
        assert!((lhs - rhs.value).abs() < 1e-10);
    }
}
