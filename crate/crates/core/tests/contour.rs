use std::f64::consts::PI;

use cm_verify::contour::{
    arc_bound_check, cut_jump_integral, g_boundary, g_eval, g_from_cut_integral, keyhole_integral,
    keyhole_integral_with, numeric_residue, offset_point, residue_one, residue_z0, z0, ContourSpec, SegmentMode,
};
use cm_verify::{Error, Tolerance};
use num_complex::Complex64;

fn tol() -> Tolerance {
    Tolerance::new(1e-11, 1e-11, 400_000).unwrap()
}

fn g_closed(x: f64) -> f64 {
    1.0 / ((x * x + 1.0) * x.atan())
}

#[test]
fn closure_on_grid() {
    for x in [0.5, 1.0, 2.0] {
        for big_r in [10.0, 100.0] {
            for r in [0.1, 0.01] {
                let rep = keyhole_integral(x, &ContourSpec::new(big_r, r).unwrap(), &tol()).unwrap();
                assert!(rep.converged);
                let scale = 1.0 + rep.loop_integral.norm();
                assert!(rep.closure_defect <= 1e-6 * scale, "x={x} R={big_r} r={r}: {}", rep.closure_defect);
                let direct = (rep.loop_integral - rep.residue_sum_times_2pi_i()).norm();
                assert_eq!(direct, rep.closure_defect);
            }
        }
    }
}

#[test]
fn spec_examples_close() {
    for (x, big_r, r) in [(1.0, 10.0, 0.1), (0.5, 20.0, 0.05)] {
        let rep = keyhole_integral(x, &ContourSpec::new(big_r, r).unwrap(), &tol()).unwrap();
        assert!(rep.closure_defect <= 1e-6);
    }
}

#[test]
fn dropping_the_jump_breaks_closure() {
    let spec = ContourSpec::new(10.0, 0.1).unwrap();
    let honest = keyhole_integral(1.0, &spec, &tol()).unwrap();
    let broken = keyhole_integral_with(1.0, &spec, SegmentMode::UpperOnBoth, &tol()).unwrap();
    // the missing piece is exactly the straight-segment total
    assert!((broken.closure_defect - honest.segments.norm()).abs() < 1e-9);
    assert!(broken.closure_defect > 0.1);
}

#[test]
fn finite_offset_rays_also_close() {
    let mut spec = ContourSpec::new(10.0, 0.1).unwrap();
    spec.delta = 1e-3;
    let rep = keyhole_integral_with(2.0, &spec, SegmentMode::FiniteOffset, &tol()).unwrap();
    assert!(rep.closure_defect <= 1e-9);
}

#[test]
fn residues_match_small_circles() {
    for x in [0.5, 1.0, 2.0] {
        let n1 = numeric_residue(x, Complex64::new(1.0, 0.0), 0.01, &tol()).unwrap();
        assert!((n1.value - residue_one(x).unwrap()).norm() <= 1e-6);
        let n0 = numeric_residue(x, z0(x), 0.01, &tol()).unwrap();
        assert!((n0.value - residue_z0(x).unwrap()).norm() <= 1e-6);
    }
}

#[test]
fn residue_real_part_gives_g() {
    for x in [0.01, 0.3, 1.0, 7.0, 300.0] {
        let r = residue_z0(x).unwrap();
        assert!((-r.re / x - g_closed(x)).abs() <= 1e-14 * g_closed(x));
        assert!((-r.im - g_closed(x)).abs() <= 1e-14 * g_closed(x));
    }
}

#[test]
fn reconstruction_from_full_cut() {
    for x in [0.5, 1.0, 2.0, 5.0] {
        let cut = cut_jump_integral(x, f64::INFINITY, 0.0, &tol()).unwrap();
        assert!(cut.converged);
        let g = g_from_cut_integral(x, cut.value);
        assert!((g.re - g_closed(x)).abs() <= 1e-6, "x={x}");
        assert!(g.im.abs() <= 1e-9, "x={x}: {}", g.im);
    }
    let cut = cut_jump_integral(1.0, f64::INFINITY, 0.0, &tol()).unwrap();
    let i_over = cut.value / (Complex64::new(0.0, 2.0 * PI) * Complex64::new(1.0, 1.0));
    assert!((1.0 - i_over.re - 2.0 / PI).abs() <= 1e-6);
}

#[test]
fn cut_integral_is_the_keyhole_segment_total() {
    let t = tol();
    let spec = ContourSpec::new(1e3, 1e-3).unwrap();
    let rep = keyhole_integral(1.0, &spec, &t).unwrap();
    let cut = cut_jump_integral(1.0, 1e3, 1e-3, &t.with_abs(0.25 * t.abs_tol)).unwrap();
    assert_eq!(cut.value, rep.segments);
}

#[test]
fn arcs_shrink_and_respect_analytic_bounds() {
    let mut prev: Option<(f64, f64)> = None;
    for (big_r, r) in [(1e3, 1e-3), (1e4, 1e-4), (1e5, 1e-5)] {
        let a = arc_bound_check(1.0, big_r, r, &tol()).unwrap();
        assert!(a.within_bounds(), "{a:?}");
        if let Some((po, pi)) = prev {
            assert!(a.outer < po && a.inner < pi);
        }
        prev = Some((a.outer, a.inner));
    }
    let a = arc_bound_check(1.0, 1e3, 1e-4, &tol()).unwrap();
    assert!(a.outer <= 10.08);
    assert!((a.inner_bound.unwrap() - 2.1469).abs() < 1e-3);
    // below e^{2π} no bound applies
    let a = arc_bound_check(1.0, 100.0, 0.01, &tol()).unwrap();
    assert!(a.outer_bound.is_none() && a.inner_bound.is_none());
}

#[test]
fn branch_consistency() {
    for x in [0.5, 1.0, 2.0] {
        for t in [-5.0, -1.5, -0.5, -0.05] {
            for upper in [true, false] {
                let limit = g_boundary(t, x, upper).unwrap();
                let diffs: Vec<f64> = [1e-3, 1e-4]
                    .iter()
                    .map(|&d| (g_eval(offset_point(t, d, upper), x).unwrap() - limit).norm() / d)
                    .collect();
                // difference ≤ C·δ with the same C at both offsets
                assert!(diffs[1] <= 1.1 * diffs[0] + 1e-6, "x={x} t={t}: {diffs:?}");
                assert!(diffs[0] < 100.0 * (1.0 + limit.norm() / t.abs()));
            }
        }
    }
}

#[test]
fn geometry_errors() {
    let spec = ContourSpec::new(1.0005, 0.5).unwrap();
    assert!(matches!(keyhole_integral(1.0, &spec, &tol()), Err(Error::Geometry { .. })));
    assert!(ContourSpec::new(0.9, 0.5).is_err());
    assert!(ContourSpec::new(2.0, 0.0).is_err());
}
