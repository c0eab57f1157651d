use num_complex::Complex64;

use super::{adaptive, QuadResult, Tolerance};
use crate::error::{Error, Result};

/// A continuously differentiable curve `z(τ)` on a finite parameter range.
pub trait ComplexPath {
    /// `(τ_start, τ_end)` with `τ_start < τ_end`.
    fn param_range(&self) -> (f64, f64);
    fn point(&self, tau: f64) -> Complex64;
    fn derivative(&self, tau: f64) -> Complex64;

    /// Same curve, opposite direction.
    fn reversed(self) -> Reversed<Self>
    where
        Self: Sized,
    {
        Reversed(self)
    }
}

/// Traverses the inner path backwards via `τ ↦ -τ`. Negating the parameter
/// is exact in floating point, so the reversed integral reuses the very
/// same sample points.
#[derive(Debug, Clone, Copy)]
pub struct Reversed<P>(pub P);

impl<P: ComplexPath> ComplexPath for Reversed<P> {
    fn param_range(&self) -> (f64, f64) {
        let (a, b) = self.0.param_range();
        (-b, -a)
    }

    fn point(&self, tau: f64) -> Complex64 {
        self.0.point(-tau)
    }

    fn derivative(&self, tau: f64) -> Complex64 {
        -self.0.derivative(-tau)
    }
}

/// `center + radius · e^{iθ}` with θ running linearly from `start` to
/// `end`; `end < start` gives a clockwise arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArc {
    pub center: Complex64,
    pub radius: f64,
    pub start: f64,
    pub end: f64,
}

impl CircleArc {
    pub fn new(center: Complex64, radius: f64, start: f64, end: f64) -> Self {
        Self {
            center,
            radius,
            start,
            end,
        }
    }

    /// Full counter-clockwise circle.
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Self::new(center, radius, -std::f64::consts::PI, std::f64::consts::PI)
    }

    fn angle(&self, tau: f64) -> f64 {
        self.start + tau * (self.end - self.start)
    }
}

impl ComplexPath for CircleArc {
    fn param_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn point(&self, tau: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, self.angle(tau))
    }

    fn derivative(&self, tau: f64) -> Complex64 {
        Complex64::i() * Complex64::from_polar(self.radius, self.angle(tau)) * (self.end - self.start)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSegment {
    pub from: Complex64,
    pub to: Complex64,
}

impl ComplexPath for LineSegment {
    fn param_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn point(&self, tau: f64) -> Complex64 {
        self.from + (self.to - self.from) * tau
    }

    fn derivative(&self, _tau: f64) -> Complex64 {
        self.to - self.from
    }
}

/// `∫ f(z(τ)) z'(τ) dτ` along `path`; `err_est` bounds the modulus of the
/// complex error.
pub fn integrate_complex_path<F, P>(mut f: F, path: &P, tol: &Tolerance) -> Result<QuadResult<Complex64>>
where
    F: FnMut(Complex64) -> Complex64,
    P: ComplexPath + ?Sized,
{
    tol.validate()?;
    let (a, b) = path.param_range();
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let mut integrand = |tau: f64| f(path.point(tau)) * path.derivative(tau);
    adaptive::integrate_panels(&mut integrand, &[a, b], tol)
}

/// [`integrate_complex_path`] starting from `panels` equal parameter
/// panels instead of one.
pub fn integrate_complex_path_panels<F, P>(
    mut f: F,
    path: &P,
    panels: usize,
    tol: &Tolerance,
) -> Result<QuadResult<Complex64>>
where
    F: FnMut(Complex64) -> Complex64,
    P: ComplexPath + ?Sized,
{
    tol.validate()?;
    let (a, b) = path.param_range();
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let n = panels.max(1);
    let mut breaks: Vec<f64> = (0..n).map(|k| a + (b - a) * (k as f64 / n as f64)).collect();
    breaks.push(b);
    let mut integrand = |tau: f64| f(path.point(tau)) * path.derivative(tau);
    adaptive::integrate_panels(&mut integrand, &breaks, tol)
}
