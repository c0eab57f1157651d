//! The keyhole residue computation behind the Laplace representation of
//! `g(x) = 1/((x²+1) arctan x)`.
//!
//! `G(z) = (z+1) / (z (z - z₀) log z)` with `z₀ = (i - x)/(i + x)` and the
//! principal logarithm. Inside a keyhole around the negative real axis the
//! only poles are `z₀` (on the unit circle) and `1`, so
//! `∮ G = 2πi (Res(G; z₀) + Res(G; 1))`. Letting the arcs shrink/grow, the
//! loop reduces to the jump of `G` across the cut, which yields
//! `g(x) = 1/x - I / (2πi (x + i))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result, Singularity};
use crate::quadrature::{
    integrate_complex_path_panels, integrate_finite, integrate_semi_infinite_generic, CircleArc,
    Interval, LineSegment, QuadResult, Tolerance,
};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Closest approach of the contour to a pole of `G` before the geometry is
/// rejected.
pub const MIN_CLEARANCE: f64 = 1e-3;

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "x", value: x })
    }
}

/// `z₀ = (i - x)/(i + x) = ((1 - x²) + 2ix)/(1 + x²)`, a point on the unit
/// circle in the upper half plane.
pub fn z0(x: f64) -> Complex64 {
    let d = 1.0 + x * x;
    Complex64::new((1.0 - x * x) / d, 2.0 * x / d)
}

/// `G(z)` on the principal branch, `arg z ∈ (-π, π]`.
pub fn g_eval(z: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Pole {
            which: Singularity::Origin,
        });
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::OnBranchCut { re: z.re, im: z.im });
    }
    let zz = z0(x);
    if (z - zz).norm() <= 4.0 * f64::EPSILON {
        return Err(Error::Pole { which: Singularity::Z0 });
    }
    let log = z.ln();
    if log == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole { which: Singularity::One });
    }
    Ok((z + 1.0) / (z * (z - zz) * log))
}

/// Boundary value of `G` on the cut, approached from `Im z > 0` (`upper`)
/// or `Im z < 0`: `(t+1) / (t (ln(-t) ± πi)(t - z₀))`, `t < 0`.
pub fn g_boundary(t: f64, x: f64, upper: bool) -> Result<Complex64> {
    check_x(x)?;
    if !(t < 0.0) {
        return Err(Error::Domain {
            what: "cut abscissa t",
            value: t,
        });
    }
    let log = Complex64::new((-t).ln(), if upper { PI } else { -PI });
    Ok(Complex64::new(t + 1.0, 0.0) / (t * log * (t - z0(x))))
}

/// `Res(G; z₀) = -(i + x) / ((x² + 1) arctan x)`.
pub fn residue_z0(x: f64) -> Result<Complex64> {
    check_x(x)?;
    let g = 1.0 / ((x * x + 1.0) * x.atan());
    Ok(Complex64::new(-x * g, -g))
}

/// `Res(G; 1) = (i + x)/x = 1 + i/x`.
pub fn residue_one(x: f64) -> Result<Complex64> {
    check_x(x)?;
    Ok(Complex64::new(1.0, 1.0 / x))
}

/// `(1/2πi) ∮_{|z - center| = radius} G dz`.
pub fn numeric_residue(x: f64, center: Complex64, radius: f64, tol: &Tolerance) -> Result<QuadResult<Complex64>> {
    check_x(x)?;
    let circle = CircleArc::circle(center, radius);
    let mut r = integrate_complex_path_panels(|z| g_eval(z, x).unwrap_or(Complex64::new(f64::NAN, 0.0)), &circle, 4, tol)?;
    r.value /= TWO_PI_I;
    r.err_est /= 2.0 * PI;
    Ok(r)
}

/// Keyhole geometry: outer radius `R > 1`, inner radius `0 < r < 1`.
/// `delta` is the angular offset used when the straight sides are laid on
/// rays `arg z = ±(π - delta)` instead of on the cut itself; `panels` is the
/// initial number of equal panels on each piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub delta: f64,
    pub panels: usize,
}

impl ContourSpec {
    pub fn new(outer_radius: f64, inner_radius: f64) -> Result<Self> {
        let spec = Self {
            outer_radius,
            inner_radius,
            delta: 1e-3,
            panels: 4,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.outer_radius > 1.0) || !self.outer_radius.is_finite() {
            return Err(Error::InvalidContour("outer radius must exceed 1"));
        }
        if !(self.inner_radius > 0.0 && self.inner_radius < 1.0) {
            return Err(Error::InvalidContour("inner radius must lie in (0, 1)"));
        }
        if !(self.delta > 0.0 && self.delta < PI / 8.0) {
            return Err(Error::InvalidContour("delta must lie in (0, π/8)"));
        }
        if self.panels == 0 {
            return Err(Error::InvalidContour("panels must be positive"));
        }
        Ok(())
    }

    /// Rejects contours passing within [`MIN_CLEARANCE`] of `1` or `z₀`.
    /// The origin is the excised branch point and is not checked.
    pub fn check_clearance(&self, x: f64) -> Result<()> {
        for (which, p) in [(Singularity::One, Complex64::new(1.0, 0.0)), (Singularity::Z0, z0(x))] {
            let m = p.norm();
            let mut d = (m - self.outer_radius).abs().min((m - self.inner_radius).abs());
            // distance to the cut segment [-R, -r]
            let foot = p.re.clamp(-self.outer_radius, -self.inner_radius);
            d = d.min((p - foot).norm());
            if d < MIN_CLEARANCE {
                return Err(Error::Geometry { which, distance: d });
            }
        }
        Ok(())
    }
}

/// How the two straight sides of the keyhole are integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentMode {
    /// Boundary values `G±` on the cut itself.
    Limit,
    /// `G⁺` on both sides: drops the jump across the cut, so the loop no
    /// longer closes.
    UpperOnBoth,
    /// Rays at `arg z = ±(π - delta)`, arcs shortened to match; an honest
    /// closed contour away from the cut.
    FiniteOffset,
}

/// Pieces of one keyhole evaluation and the residue-theorem comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueReport {
    pub res_z0: Complex64,
    pub res_1: Complex64,
    pub outer_arc: Complex64,
    pub inner_arc: Complex64,
    pub segments: Complex64,
    pub loop_integral: Complex64,
    /// `|loop_integral - 2πi (res_z0 + res_1)|`
    pub closure_defect: f64,
    pub err_est: f64,
    pub converged: bool,
}

impl ResidueReport {
    pub fn residue_sum_times_2pi_i(&self) -> Complex64 {
        TWO_PI_I * (self.res_z0 + self.res_1)
    }
}

/// `∫ G` over the keyhole with the straight sides taken on the cut.
pub fn keyhole_integral(x: f64, spec: &ContourSpec, tol: &Tolerance) -> Result<ResidueReport> {
    keyhole_integral_with(x, spec, SegmentMode::Limit, tol)
}

pub fn keyhole_integral_with(x: f64, spec: &ContourSpec, mode: SegmentMode, tol: &Tolerance) -> Result<ResidueReport> {
    check_x(x)?;
    spec.validate()?;
    spec.check_clearance(x)?;
    let (big_r, small_r) = (spec.outer_radius, spec.inner_radius);
    let piece = tol.with_abs(0.25 * tol.abs_tol);
    let g = |z: Complex64| g_eval(z, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN));

    // The open rule never lands on θ = ±π, so with the sides on the cut the
    // arcs can run all the way to it.
    let edge = match mode {
        SegmentMode::FiniteOffset => PI - spec.delta,
        SegmentMode::Limit | SegmentMode::UpperOnBoth => PI,
    };
    let outer = integrate_complex_path_panels(g, &CircleArc::new(Complex64::new(0.0, 0.0), big_r, -edge, edge), spec.panels, &piece)?;
    let inner = integrate_complex_path_panels(g, &CircleArc::new(Complex64::new(0.0, 0.0), small_r, edge, -edge), spec.panels, &piece)?;

    let segments = match mode {
        SegmentMode::Limit => cut_jump_integral(x, big_r, small_r, &piece)?,
        SegmentMode::UpperOnBoth => {
            let upper = side_integral(x, big_r, small_r, true, &piece)?;
            // traversed back outward along the lower side with the same G⁺
            QuadResult {
                value: Complex64::new(0.0, 0.0),
                err_est: 2.0 * upper.err_est,
                n_evals: 2 * upper.n_evals,
                converged: upper.converged,
            }
        }
        SegmentMode::FiniteOffset => {
            let upper_ray = LineSegment {
                from: Complex64::from_polar(big_r, edge),
                to: Complex64::from_polar(small_r, edge),
            };
            let lower_ray = LineSegment {
                from: Complex64::from_polar(small_r, -edge),
                to: Complex64::from_polar(big_r, -edge),
            };
            let a = integrate_complex_path_panels(g, &upper_ray, spec.panels, &piece)?;
            let b = integrate_complex_path_panels(g, &lower_ray, spec.panels, &piece)?;
            QuadResult {
                value: a.value + b.value,
                err_est: a.err_est + b.err_est,
                n_evals: a.n_evals + b.n_evals,
                converged: a.converged && b.converged,
            }
        }
    };

    let res_z0 = residue_z0(x)?;
    let res_1 = residue_one(x)?;
    let loop_integral = outer.value + inner.value + segments.value;
    let err_est = outer.err_est + inner.err_est + segments.err_est;
    let closure_defect = (loop_integral - TWO_PI_I * (res_z0 + res_1)).norm();
    Ok(ResidueReport {
        res_z0,
        res_1,
        outer_arc: outer.value,
        inner_arc: inner.value,
        segments: segments.value,
        loop_integral,
        closure_defect,
        err_est,
        converged: outer.converged && inner.converged && segments.converged,
    })
}

/// `∫_{-R}^{-r} G±(t) dt`.
fn side_integral(x: f64, big_r: f64, small_r: f64, upper: bool, tol: &Tolerance) -> Result<QuadResult<Complex64>> {
    // t = -e^v, dt = -e^v dv, v from ln R down to ln r
    let f = |v: f64| {
        let t = -v.exp();
        g_boundary(t, x, upper).map(|g| g * -t).unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let iv = Interval::new(small_r.ln(), big_r.ln())?;
    integrate_finite(f, iv, tol)
}

/// Integrand of the cut contribution in `v = ln τ`:
/// `-2πi (1 - τ) / ((v² + π²)(τ + z₀))`, overflow-safe for large `v`.
fn cut_kernel(v: f64, zz: Complex64) -> Complex64 {
    let ratio = if v <= 0.0 {
        let t = v.exp();
        Complex64::new(1.0 - t, 0.0) / (zz + t)
    } else {
        let r = (-v).exp();
        Complex64::new(r - 1.0, 0.0) / (zz * r + 1.0)
    };
    -TWO_PI_I * ratio / (v * v + PI * PI)
}

/// Contribution of the two straight sides, `∫_{-R}^{-r} (G⁺ - G⁻) dt`,
/// i.e. `-2πi ∫_r^R (1-τ) / (τ (ln²τ + π²)(τ + z₀)) dτ` after `t = -τ`.
///
/// `R = ∞` and/or `r = 0` give the limit `I` of the full cut.
pub fn cut_jump_integral(x: f64, big_r: f64, small_r: f64, tol: &Tolerance) -> Result<QuadResult<Complex64>> {
    check_x(x)?;
    if !((0.0..1.0).contains(&small_r) && big_r > 1.0) {
        return Err(Error::InvalidContour("cut integral needs 0 <= r < 1 < R"));
    }
    let zz = z0(x);
    let half = tol.with_abs(0.5 * tol.abs_tol);
    let f = |v: f64| cut_kernel(v, zz);
    // (ln r, 0) and (0, ln R)
    let lower = if small_r == 0.0 {
        integrate_semi_infinite_generic(|y: f64| f(-y), 0.0, &half)?
    } else {
        integrate_finite(f, Interval::new(small_r.ln(), 0.0)?, &half)?
    };
    let upper = if big_r.is_infinite() {
        integrate_semi_infinite_generic(f, 0.0, &half)?
    } else {
        integrate_finite(f, Interval::new(0.0, big_r.ln())?, &half)?
    };
    Ok(QuadResult {
        value: lower.value + upper.value,
        err_est: lower.err_est + upper.err_est,
        n_evals: lower.n_evals + upper.n_evals,
        converged: lower.converged && upper.converged,
    })
}

/// `1/x - I / (2πi (x + i))`; equals `g(x)` (and is real) when `I` is the
/// full cut integral.
pub fn g_from_cut_integral(x: f64, cut: Complex64) -> Complex64 {
    Complex64::new(1.0 / x, 0.0) - cut / (TWO_PI_I * Complex64::new(x, 1.0))
}

/// Analytic bound on `|∫_{|z|=R} G|`: `2π(R+1)/((ln R - 2π)(R - 1))`, only
/// meaningful once `ln R > 2π`.
pub fn outer_arc_bound(big_r: f64) -> Option<f64> {
    let d = big_r.ln() - 2.0 * PI;
    (d > 0.0 && big_r > 1.0).then(|| 2.0 * PI * (big_r + 1.0) / (d * (big_r - 1.0)))
}

/// Analytic bound on `|∫_{|z|=r} G|`: `2π(1+r)/((-ln r - 2π)(1 - r))`, only
/// meaningful once `-ln r > 2π`.
pub fn inner_arc_bound(small_r: f64) -> Option<f64> {
    let d = -small_r.ln() - 2.0 * PI;
    (d > 0.0 && small_r > 0.0 && small_r < 1.0).then(|| 2.0 * PI * (1.0 + small_r) / (d * (1.0 - small_r)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcBounds {
    pub outer: f64,
    pub outer_bound: Option<f64>,
    pub inner: f64,
    pub inner_bound: Option<f64>,
}

impl ArcBounds {
    /// Numeric magnitudes respect the analytic bounds wherever those apply.
    pub fn within_bounds(&self) -> bool {
        self.outer_bound.map_or(true, |b| self.outer <= b) && self.inner_bound.map_or(true, |b| self.inner <= b)
    }
}

/// Magnitudes of the two circular arcs next to their analytic bounds.
pub fn arc_bound_check(x: f64, big_r: f64, small_r: f64, tol: &Tolerance) -> Result<ArcBounds> {
    check_x(x)?;
    if !(big_r > 1.0 && small_r > 0.0 && small_r < 1.0) {
        return Err(Error::InvalidContour("arc check needs 0 < r < 1 < R"));
    }
    let g = |z: Complex64| g_eval(z, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let origin = Complex64::new(0.0, 0.0);
    let outer = integrate_complex_path_panels(g, &CircleArc::new(origin, big_r, -PI, PI), 4, tol)?;
    let inner = integrate_complex_path_panels(g, &CircleArc::new(origin, small_r, PI, -PI), 4, tol)?;
    Ok(ArcBounds {
        outer: outer.value.norm(),
        outer_bound: outer_arc_bound(big_r),
        inner: inner.value.norm(),
        inner_bound: inner_arc_bound(small_r),
    })
}

/// A point on a ray `arg z = ±(π - δ)` at distance `|t|`, for comparing
/// finite-offset values with the boundary values `G±(t)`.
pub fn offset_point(t: f64, delta: f64, upper: bool) -> Complex64 {
    let angle = if upper { PI - delta } else { -(PI - delta) };
    Complex64::from_polar(-t, angle)
}
