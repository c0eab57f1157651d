//! `f(x) = 1/arctan x`, `g = -(log f)'`, and the integral representations
//! that exhibit `g` as a Laplace transform of a non-negative density.
//!
//! Every integrand carrying the weight `1/(t(ln²t + π²))` is rewritten with
//! `v = ln t` before quadrature, which removes the log-singular endpoint at
//! `t = 0` (and the matching slowly decaying tail at `t = ∞`) exactly.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_oscillatory_decaying, integrate_semi_infinite, integrate_with_breaks, Interval, QuadResult,
    Tolerance,
};

const PI2: f64 = PI * PI;

/// Argument of `f` and `g`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EvalPoint(f64);

impl EvalPoint {
    pub fn new(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Self(x))
        } else {
            Err(Error::Domain {
                what: "evaluation point x",
                value: x,
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EvalPoint {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        Self::new(x)
    }
}

/// One sample `(s, w(s))` of the Bernstein density of `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPoint {
    pub s: f64,
    pub w: f64,
    pub err: f64,
    pub converged: bool,
}

/// The pair `(a, b)` of the kernel identity
/// `1/(x(a²x² + b²)) = b⁻² ∫₀^∞ e^{-xs}(1 - cos(bs/a)) ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscKernelParams {
    a: f64,
    b: f64,
}

impl OscKernelParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain { what: "kernel parameter a", value: a });
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::Domain { what: "kernel parameter b", value: b });
        }
        Ok(Self { a, b })
    }

    /// `a = 1 - t`, `b = 1 + t`; requires `0 <= t < 1`.
    pub fn from_t(t: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::Domain { what: "kernel parameter t", value: t });
        }
        Self::new(1.0 - t, 1.0 + t)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// `1 / arctan x`.
pub fn f_closed(x: EvalPoint) -> f64 {
    1.0 / x.0.atan()
}

/// `1 / ((x² + 1) arctan x)`.
pub fn g_closed(x: EvalPoint) -> f64 {
    let x = x.0;
    1.0 / ((x * x + 1.0) * x.atan())
}

/// `1 - cos θ` without cancellation.
fn one_minus_cos(theta: f64) -> f64 {
    let h = (0.5 * theta).sin();
    2.0 * h * h
}

/// `k(v) = (1 + e^v)/(1 - e^v)` at `v = -y`, `y > 0`.
fn cot_half(y: f64) -> f64 {
    1.0 / (0.5 * y).tanh()
}

/// Where the density integral switches from `v` to `u = k(v)`.
pub const DENSITY_SPLIT_V: f64 = -1.0;

/// Amplitude of the density integrand after `u = k(v)`:
/// `4 / ((u² - 1)(ln²((u-1)/(u+1)) + π²))`.
pub fn density_amplitude(u: f64) -> f64 {
    let l = (-2.0 / (u + 1.0)).ln_1p();
    4.0 / ((u - 1.0) * (u + 1.0) * (l * l + PI2))
}

/// Upper bound on `w`: `1 - cos <= 2` and the weight `2/(v²+π²)` has mass 1
/// on `(-∞, 0)`.
pub const DENSITY_CAP: f64 = 2.0;

/// `w(s) = ∫₀¹ 2(1 - cos((1+t)/(1-t)·s)) / (t(ln²t + π²)) dt`.
///
/// With `v = ln t` this is `∫_{-∞}^0 2(1 - cos(s·k(v)))/(v² + π²) dv`.
/// On `v < -1` the integrand is smooth and integrated directly. On
/// `(-1, 0)` the frequency `k(v)` blows up like `2/|v|`; there the
/// substitution `u = k(v)` makes the phase linear, `s·u`, and hands the
/// piece to the oscillatory integrator.
pub fn density_w(s: f64, tol: &Tolerance) -> Result<DensityPoint> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain {
            what: "Laplace variable s",
            value: s,
        });
    }
    tol.validate()?;
    if s == 0.0 {
        return Ok(DensityPoint {
            s,
            w: 0.0,
            err: 0.0,
            converged: true,
        });
    }
    let piece = tol.with_abs(0.5 * tol.abs_tol);

    let outer = integrate_semi_infinite(
        |y: f64| 2.0 * one_minus_cos(s * cot_half(y)) / (y * y + PI2),
        -DENSITY_SPLIT_V,
        &piece,
    )?;
    let u_split = cot_half(-DENSITY_SPLIT_V);
    let inner = integrate_oscillatory_decaying(density_amplitude, s, Interval::semi_infinite(u_split)?, &piece)?;

    let w = outer.value + inner.value;
    let err = outer.err_est + inner.err_est;
    Ok(DensityPoint {
        s,
        w,
        err,
        converged: outer.converged && inner.converged && err <= tol.target(w.abs()),
    })
}

/// Upper end of the truncated Laplace integral.
pub fn laplace_cutoff(x: f64) -> f64 {
    50f64.max(40.0 / x)
}

/// `g(x) = ∫₀^∞ w(s) e^{-xs} ds`, nested: each outer node evaluates
/// [`density_w`].
///
/// The outer range is cut at [`laplace_cutoff`]; the tail is bounded by
/// `DENSITY_CAP · e^{-x S}/x` and, together with the propagated inner
/// errors, folded into `err_est`.
pub fn g_via_representation(x: EvalPoint, tol: &Tolerance) -> Result<QuadResult> {
    tol.validate()?;
    let x = x.0;
    let cutoff = laplace_cutoff(x);
    let inner_tol = tol.with_abs((0.25 * x * tol.abs_tol).max(1e-15)).with_rel(0.25 * tol.rel_tol);

    let mut inner_evals = 0usize;
    let mut inner_err_max = 0.0f64;
    let mut inner_converged = true;
    let mut failure = None;
    let mut integrand = |s: f64| match density_w(s, &inner_tol) {
        Ok(p) => {
            inner_evals += 1;
            inner_err_max = inner_err_max.max(p.err);
            inner_converged &= p.converged;
            p.w * (-x * s).exp()
        }
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };

    let mut breaks = vec![0.0];
    let mut b = 0.5 / x.max(1e-3);
    while b < cutoff {
        breaks.push(b);
        b *= 4.0;
    }
    breaks.push(cutoff);

    let outer = integrate_with_breaks(&mut integrand, &breaks, &tol.with_rel(0.5 * tol.rel_tol));
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;

    let tail = DENSITY_CAP * (-x * cutoff).exp() / x;
    // inner errors within their targets satisfy err <= abs + rel·w, which
    // integrates to abs/x + rel·g
    let propagated = if inner_converged {
        inner_tol.abs_tol / x + inner_tol.rel_tol * outer.value.abs()
    } else {
        inner_err_max / x
    };
    let err_est = outer.err_est + tail + propagated;
    Ok(QuadResult {
        value: outer.value,
        err_est,
        n_evals: inner_evals,
        converged: outer.converged && inner_converged && err_est <= tol.target(outer.value.abs()),
    })
}

/// The `(0, 1)` integrand of `g(x) = 2∫₀¹ …` with the weight
/// `1/(t(ln²t+π²))` stripped, in the overflow-safe orientation `t <= 1`.
fn g2_core(x: f64, t: f64, one_minus_t: f64) -> f64 {
    let p = 1.0 + t;
    p * p / (x * (x * x * one_minus_t * one_minus_t + p * p))
}

/// `(1 + t)² / (x t (x²(1-t)² + (1+t)²)(ln²t + π²))`, the integrand of
/// `g(x) = 2 ∫₀¹ … dt` evaluated pointwise in `t`.
pub fn g2_integrand(x: f64, t: f64) -> f64 {
    let l = t.ln();
    let p = 1.0 + t;
    let m = 1.0 - t;
    p * p / (x * t * (x * x * m * m + p * p) * (l * l + PI2))
}

/// `(1 - t²) / (t (x²(1-t)² + (1+t)²)(ln²t + π²))`, the integrand whose
/// integral over `(0, ∞)` vanishes.
pub fn imag_integrand(x: f64, t: f64) -> f64 {
    let l = t.ln();
    let m = 1.0 - t;
    let p = 1.0 + t;
    (m * p) / (t * (x * x * m * m + p * p) * (l * l + PI2))
}

/// `∫_{(1,∞)}` pieces are computed in `v = ln t ∈ (0, ∞)` from the plain
/// `t`-form while `e^{2v}` is representable, and from the reciprocal form
/// beyond.
const T_FORM_LIMIT: f64 = 300.0;

/// The two halves of the `g(x) = 2∫₀¹ …` integrand over `(0,1)` and
/// `(1,∞)`; the substitution `t ↦ 1/t` maps one onto the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halves {
    pub lower: QuadResult,
    pub upper: QuadResult,
}

impl Halves {
    pub fn combined_err(&self) -> f64 {
        self.lower.err_est + self.upper.err_est
    }
}

fn g2_lower(x: f64, tol: &Tolerance) -> Result<QuadResult> {
    // t = e^{-y}
    integrate_semi_infinite(
        |y: f64| {
            let t = (-y).exp();
            g2_core(x, t, -(-y).exp_m1()) / (y * y + PI2)
        },
        0.0,
        tol,
    )
}

fn g2_upper(x: f64, tol: &Tolerance) -> Result<QuadResult> {
    // t = e^{v}, dt = t dv
    integrate_semi_infinite(
        |v: f64| {
            if v <= T_FORM_LIMIT {
                let t = v.exp();
                let p = 1.0 + t;
                let m = 1.0 - t;
                p * p / (x * (x * x * m * m + p * p) * (v * v + PI2))
            } else {
                let r = (-v).exp();
                g2_core(x, r, 1.0 - r) / (v * v + PI2)
            }
        },
        0.0,
        tol,
    )
}

/// `g(x) = 2 ∫₀¹ (1+t)² / (x t (x²(1-t)² + (1+t)²)(ln²t + π²)) dt`.
pub fn g_via_g2(x: EvalPoint, tol: &Tolerance) -> Result<QuadResult> {
    let mut r = g2_lower(x.0, tol)?;
    r.value *= 2.0;
    r.err_est *= 2.0;
    r.converged &= r.err_est <= tol.target(r.value.abs());
    Ok(r)
}

/// Both halves of `∫₀^∞` of the `g2` integrand.
pub fn symmetry_check(x: EvalPoint, tol: &Tolerance) -> Result<Halves> {
    Ok(Halves {
        lower: g2_lower(x.0, tol)?,
        upper: g2_upper(x.0, tol)?,
    })
}

/// `∫₀^∞ (1 - t²) / (t (x²(1-t)² + (1+t)²)(ln²t + π²)) dt`, formed as the
/// sum of its `(0,1)` and `(1,∞)` halves. Its vanishing is what makes the
/// keyhole reconstruction of `g` real.
pub fn imag_vanishing_integral(x: EvalPoint, tol: &Tolerance) -> Result<QuadResult> {
    let x = x.0;
    let lower = integrate_semi_infinite(
        |y: f64| {
            let t = (-y).exp();
            let m = -(-y).exp_m1();
            let p = 1.0 + t;
            (m * p) / ((x * x * m * m + p * p) * (y * y + PI2))
        },
        0.0,
        tol,
    )?;
    let upper = integrate_semi_infinite(
        |v: f64| {
            if v <= T_FORM_LIMIT {
                let t = v.exp();
                let m = 1.0 - t;
                let p = 1.0 + t;
                (m * p) / ((x * x * m * m + p * p) * (v * v + PI2))
            } else {
                let r = (-v).exp();
                let m = r - 1.0;
                let p = r + 1.0;
                (m * p) / ((x * x * m * m + p * p) * (v * v + PI2))
            }
        },
        0.0,
        tol,
    )?;
    let err_est = lower.err_est + upper.err_est;
    Ok(QuadResult {
        value: lower.value + upper.value,
        err_est,
        n_evals: lower.n_evals + upper.n_evals,
        converged: lower.converged && upper.converged,
    })
}

/// `∫₀^∞ dt / (t(ln²t + π²))` split at `t = 1`; each half is `1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub lower: QuadResult,
    pub upper: QuadResult,
}

impl Normalization {
    pub fn total(&self) -> f64 {
        self.lower.value + self.upper.value
    }

    pub fn err_est(&self) -> f64 {
        self.lower.err_est + self.upper.err_est
    }
}

pub fn normalization_identity(tol: &Tolerance) -> Result<Normalization> {
    // (0,1): v = ln t = -y ; (1,∞): v = ln t
    let lower = integrate_semi_infinite(|y: f64| 1.0 / (y * y + PI2), 0.0, tol)?;
    let upper = integrate_semi_infinite(|v: f64| 1.0 / (PI2 + v * v), 0.0, tol)?;
    Ok(Normalization { lower, upper })
}

/// Returns `(1/(x(a²x² + b²)), b⁻² ∫₀^∞ e^{-xs}(1 - cos(bs/a)) ds)`.
pub fn laplace_kernel_identity(p: OscKernelParams, x: f64, tol: &Tolerance) -> Result<(f64, QuadResult)> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { what: "x", value: x });
    }
    let (a, b) = (p.a, p.b);
    let lhs = 1.0 / (x * (a * a * x * x + b * b));
    let b2 = b * b;
    let inner_tol = tol.with_abs(tol.abs_tol * b2);
    let mut r = integrate_oscillatory_decaying(|s: f64| (-x * s).exp(), b / a, Interval::semi_infinite(0.0)?, &inner_tol)?;
    r.value /= b2;
    r.err_est /= b2;
    Ok((lhs, r))
}

/// Small-`s` slope of `w`, forced by `g(x) ~ 2/(πx²)` as `x → ∞`.
pub const DENSITY_SLOPE_AT_ORIGIN: f64 = FRAC_2_PI;
