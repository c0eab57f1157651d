use std::f64::consts::FRAC_2_PI;

use cm_verify::arctan_cm::{
    density_w, g_closed, g_via_g2, g_via_representation, imag_vanishing_integral, laplace_kernel_identity,
    normalization_identity, DensityPoint, EvalPoint, OscKernelParams,
};
use cm_verify::cm_checker::{
    bernstein_check, cm_sign_table, derivative, h3_closed, log_cm_check, sign_change_root, stieltjes_refutation_on,
    AnalyticFn, ClassReport, SignEntry, REFUTATION_GRID, REFUTATION_ORDER, ROOT_BRACKET,
};
use cm_verify::contour::{
    arc_bound_check, cut_jump_integral, g_from_cut_integral, keyhole_integral, numeric_residue, residue_one,
    residue_z0, z0, ContourSpec,
};
use cm_verify::{Error, Tolerance};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::grid::log_spaced;
use crate::report::{Entry, Report};

pub const REPRESENTATION_GRID: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
pub const CONTOUR_GRID: [f64; 3] = [0.5, 1.0, 2.0];
pub const CM_MAX_ORDER: usize = 10;

pub fn cm_grid() -> Vec<f64> {
    log_spaced(0.1, 10.0, 8)
}

/// Knobs shared by the suites; `None` selects each suite's default.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub x: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub max_order: Option<usize>,
    pub function: Option<String>,
}

fn tight() -> Tolerance {
    Tolerance::new(1e-14, 1e-12, 1_000_000).expect("valid tolerance")
}

/// Quadrature tolerance for a relative check tolerance `check`.
fn quad_tol(check: f64) -> Tolerance {
    Tolerance::new((check * 1e-5).max(1e-15), (check * 1e-2).clamp(1e-12, 1e-3), 2_000_000).expect("valid tolerance")
}

fn pt(x: f64) -> EvalPoint {
    EvalPoint::new(x).expect("x grids are validated at parse time")
}

fn flat<T: Sync, F>(items: &[T], f: F) -> Vec<Entry>
where
    F: Fn(&T) -> Vec<Entry> + Sync + Send,
{
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn fail(name: String, e: &Error) -> Entry {
    Entry::failed(name, &e.to_string())
}

pub fn representation(o: &Options) -> Report {
    let xs = o.x.clone().unwrap_or_else(|| REPRESENTATION_GRID.to_vec());
    let check = o.tol.unwrap_or(1e-7);
    let qt = quad_tol(check);
    let mut entries = flat(&xs, |&x| {
        let name = format!("g(x={x}) via density");
        let g = g_closed(pt(x));
        vec![match g_via_representation(pt(x), &qt) {
            Ok(r) => Entry::compare(name, g, r.value, check * g).require_converged(r.converged),
            Err(e) => fail(name, &e),
        }]
    });
    let s = 1e-3;
    let name = "w(s)/s at s=1e-3 vs 2/pi".to_owned();
    entries.push(match density_w(s, &Tolerance::default()) {
        Ok(p) => Entry::compare(name, FRAC_2_PI, p.w / s, 0.01 * FRAC_2_PI).require_converged(p.converged),
        Err(e) => fail(name, &e),
    });
    Report::new("verify-representation", entries)
}

pub const KERNEL_AB: [f64; 5] = [0.2, 0.5, 1.0, 2.0, 5.0];
pub const KERNEL_X: [f64; 3] = [0.1, 1.0, 10.0];

pub fn identities(o: &Options) -> Report {
    let xs = o.x.clone().unwrap_or_else(|| REPRESENTATION_GRID.to_vec());
    let check = o.tol.unwrap_or(1e-8);
    let t = tight();
    let mut entries = Vec::new();

    match normalization_identity(&t) {
        Ok(n) => {
            let conv = n.lower.converged && n.upper.converged;
            entries.push(Entry::compare("normalization total", 1.0, n.total(), 1e-10).require_converged(conv));
            entries.push(Entry::compare("normalization (0 1) half", 0.5, n.lower.value, 1e-10));
            entries.push(Entry::compare("normalization (1 inf) half", 0.5, n.upper.value, 1e-10));
        }
        Err(e) => entries.push(fail("normalization".into(), &e)),
    }

    entries.extend(flat(&xs, |&x| {
        let name = format!("g(x={x}) via t-integral");
        let g = g_closed(pt(x));
        vec![match g_via_g2(pt(x), &t) {
            Ok(r) => Entry::compare(name, g, r.value, check * g).require_converged(r.converged),
            Err(e) => fail(name, &e),
        }]
    }));

    entries.extend(flat(&log_spaced(0.05, 50.0, 20), |&x| {
        let name = format!("imaginary part x={x:.6}");
        vec![match imag_vanishing_integral(pt(x), &t) {
            Ok(r) => Entry::compare(name, 0.0, r.value, 1e-9).require_converged(r.converged),
            Err(e) => fail(name, &e),
        }]
    }));

    let triples: Vec<(f64, f64, f64)> = KERNEL_AB
        .iter()
        .flat_map(|&a| KERNEL_AB.iter().flat_map(move |&b| KERNEL_X.iter().map(move |&x| (a, b, x))))
        .collect();
    entries.extend(flat(&triples, |&(a, b, x)| {
        let name = format!("kernel a={a} b={b} x={x}");
        let p = OscKernelParams::new(a, b).expect("positive grid");
        vec![match laplace_kernel_identity(p, x, &t) {
            Ok((lhs, rhs)) => Entry::compare(name, lhs, rhs.value, 1e-9).require_converged(rhs.converged),
            Err(e) => fail(name, &e),
        }]
    }));
    Report::new("verify-identities", entries)
}

pub const KEYHOLE_R: [f64; 2] = [10.0, 100.0];
pub const KEYHOLE_SMALL_R: [f64; 2] = [0.1, 0.01];

pub fn contour(o: &Options) -> Report {
    let xs = o.x.clone().unwrap_or_else(|| CONTOUR_GRID.to_vec());
    let check = o.tol.unwrap_or(1e-6);
    let t = Tolerance::new(1e-11, 1e-11, 400_000).expect("valid tolerance");

    let mut entries = flat(&xs, |&x| {
        let mut out = Vec::new();
        for big_r in KEYHOLE_R {
            for r in KEYHOLE_SMALL_R {
                let name = format!("closure x={x} R={big_r} r={r}");
                out.push(
                    match ContourSpec::new(big_r, r).and_then(|s| keyhole_integral(x, &s, &t)) {
                        Ok(rep) => Entry::compare(name, 0.0, rep.closure_defect, check * (1.0 + rep.loop_integral.norm()))
                            .require_converged(rep.converged),
                        Err(e) => fail(name, &e),
                    },
                );
            }
        }
        for (label, center, exact) in [
            ("Res(G 1)", Complex64::new(1.0, 0.0), residue_one(x)),
            ("Res(G z0)", z0(x), residue_z0(x)),
        ] {
            let name = format!("{label} small circle x={x}");
            out.push(match (numeric_residue(x, center, 0.01, &t), exact) {
                (Ok(n), Ok(c)) => Entry::compare(name, 0.0, (n.value - c).norm(), check).require_converged(n.converged),
                (Err(e), _) | (_, Err(e)) => fail(name, &e),
            });
        }
        let name = format!("g(x={x}) from cut");
        match cut_jump_integral(x, f64::INFINITY, 0.0, &t) {
            Ok(cut) => {
                let g = g_from_cut_integral(x, cut.value);
                out.push(Entry::compare(name, g_closed(pt(x)), g.re, check).require_converged(cut.converged));
                out.push(Entry::compare(format!("Im g(x={x}) from cut"), 0.0, g.im, 1e-9));
            }
            Err(e) => out.push(fail(name, &e)),
        }
        out
    });

    let radii = [(1e3, 1e-3), (1e4, 1e-4), (1e5, 1e-5)];
    let arcs: Vec<_> = radii.par_iter().map(|&(big_r, r)| arc_bound_check(1.0, big_r, r, &t)).collect();
    let mut prev: Option<(f64, f64)> = None;
    for (&(big_r, r), a) in radii.iter().zip(arcs) {
        match a {
            Ok(a) => {
                for (label, value, bound) in [("outer arc", a.outer, a.outer_bound), ("inner arc", a.inner, a.inner_bound)] {
                    let radius = if label == "outer arc" { big_r } else { r };
                    if let Some(b) = bound {
                        entries.push(Entry::compare(format!("{label} radius={radius:e} within analytic bound"), 0.0, value, b));
                    }
                }
                if let Some((po, pi)) = prev {
                    entries.push(decreasing(format!("outer arc decreasing at R={big_r:e}"), po, a.outer));
                    entries.push(decreasing(format!("inner arc decreasing at r={r:e}"), pi, a.inner));
                }
                prev = Some((a.outer, a.inner));
            }
            Err(e) => entries.push(fail(format!("arcs R={big_r:e} r={r:e}"), &e)),
        }
    }
    Report::new("verify-contour", entries)
}

fn decreasing(name: String, previous: f64, current: f64) -> Entry {
    Entry {
        name,
        target: Some(previous),
        computed: Some(current),
        tol: None,
        pass: current < previous,
    }
}

pub fn function_by_name(name: &str) -> Option<AnalyticFn> {
    Some(match name {
        "g" => AnalyticFn::g(),
        "inv-arctan" => AnalyticFn::inv_arctan(),
        "arctan" => AnalyticFn::arctan(),
        "exp-neg" => AnalyticFn::exp_neg(),
        "one-minus-exp-neg" => AnalyticFn::one_minus_exp_neg(),
        _ => return None,
    })
}

pub const FUNCTION_NAMES: [&str; 5] = ["g", "inv-arctan", "arctan", "exp-neg", "one-minus-exp-neg"];

fn sign_entries(report: &ClassReport) -> Vec<Entry> {
    report
        .entries
        .iter()
        .map(|e: &SignEntry| Entry {
            name: format!(
                "{} {} n={} x={} sign {}",
                report.property,
                report.function,
                e.n,
                e.x,
                if e.required_sign > 0 { '+' } else { '-' }
            ),
            target: Some(0.0),
            computed: Some(e.value),
            tol: Some(e.err_bound),
            pass: e.holds() && e.is_confident(),
        })
        .collect()
}

fn class_entries(r: Result<ClassReport, Error>, what: &str) -> Vec<Entry> {
    match r {
        Ok(rep) => sign_entries(&rep),
        Err(e) => vec![fail(what.to_owned(), &e)],
    }
}

pub fn check_cm(o: &Options) -> Report {
    let grid = o.x.clone().unwrap_or_else(cm_grid);
    let order = o.max_order.unwrap_or(CM_MAX_ORDER);
    let tables: Vec<(AnalyticFn, bool)> = match o.function.as_deref() {
        None => vec![(AnalyticFn::g(), false), (AnalyticFn::inv_arctan(), true)],
        Some(name) => vec![(function_by_name(name).expect("validated by the parser"), false)],
    };
    let entries = flat(&tables, |(f, log)| {
        if *log {
            class_entries(log_cm_check(f, &grid, order), "logCM table")
        } else {
            class_entries(cm_sign_table(f, &grid, order), "CM table")
        }
    });
    Report::new("check-cm", entries)
}

pub fn check_bernstein(o: &Options) -> Report {
    let grid = o.x.clone().unwrap_or_else(|| REFUTATION_GRID.to_vec());
    let order = o.max_order.unwrap_or(REFUTATION_ORDER);
    let f = function_by_name(o.function.as_deref().unwrap_or("arctan")).expect("validated by the parser");
    Report::new("check-bernstein", class_entries(bernstein_check(&f, &grid, order), "Bernstein table"))
}

pub fn refute_stieltjes(o: &Options) -> Report {
    let grid = o.x.clone().unwrap_or_else(|| REFUTATION_GRID.to_vec());
    let order = o.max_order.unwrap_or(REFUTATION_ORDER);
    let mut entries = Vec::new();
    match stieltjes_refutation_on(&grid, order) {
        Ok(r) => {
            for w in &r.report.witnesses {
                entries.push(Entry {
                    name: format!("witness x={} n={}", w.x, w.n),
                    target: (w.n == 3).then(|| h3_closed(w.x)),
                    computed: Some(w.value),
                    tol: Some(w.err_bound),
                    pass: w.is_witness(),
                });
            }
            entries.push(Entry {
                name: format!("verdict {}", r.verdict),
                target: None,
                computed: None,
                tol: None,
                pass: true,
            });
        }
        Err(e) => entries.push(fail("witness search".into(), &e)),
    }
    let name = "h''' root".to_owned();
    entries.push(match sign_change_root(ROOT_BRACKET) {
        Ok(root) => Entry::compare(name, 1.0 / 3f64.sqrt(), root, 1e-12),
        Err(e) => fail(name, &e),
    });
    let arctan = AnalyticFn::arctan();
    entries.extend(grid.iter().map(|&x| {
        let name = format!("h''' closed form vs circle x={x}");
        match derivative(&arctan, x, 3) {
            Ok(d) => Entry::compare(name, h3_closed(x), d.value, 1e-9),
            Err(e) => fail(name, &e),
        }
    }));
    Report::new("refute-stieltjes", entries)
}

/// Every suite with its defaults, concatenated; entry names are prefixed
/// with the suite they come from.
pub fn report_all() -> Report {
    let base = Options::default();
    let control = Options {
        function: Some("one-minus-exp-neg".into()),
        ..base.clone()
    };
    let parts = [
        representation(&base),
        identities(&base),
        contour(&base),
        check_cm(&base),
        check_bernstein(&control),
        refute_stieltjes(&base),
    ];
    let mut entries = Vec::new();
    for p in parts {
        entries.extend(p.entries.into_iter().map(|mut e| {
            e.name = format!("{}/{}", p.suite, e.name);
            e
        }));
    }
    Report::new("report-all", entries)
}

pub fn density(points: &[f64], tol: &Tolerance) -> Vec<Result<DensityPoint, Error>> {
    points.par_iter().map(|&s| density_w(s, tol)).collect()
}
