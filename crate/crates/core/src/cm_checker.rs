//! Sign tests for complete monotonicity and its relatives, driven by
//! Cauchy-circle differentiation of analytic functions.
//!
//! A sign table can only be *consistent* with a property up to the orders
//! and points sampled; violations, on the other hand, are certified as
//! soon as a derivative has the wrong sign by more than its error bound.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Highest derivative order [`derivative`] accepts.
pub const MAX_ORDER: usize = 24;

/// Samples on the differentiation circle.
pub const SAMPLES: usize = 256;

/// Circle radius as a fraction of the distance to the nearest singularity.
pub const RADIUS_FACTOR: f64 = 0.5;

type Eval = dyn Fn(Complex64) -> Complex64 + Send + Sync;
type Radius = dyn Fn(f64) -> f64 + Send + Sync;

/// A function real on `(0, ∞)` with an analytic continuation, together
/// with the distance from each `x > 0` to the nearest singularity of that
/// continuation.
#[derive(Clone)]
pub struct AnalyticFn {
    name: String,
    eval: Arc<Eval>,
    radius: Arc<Radius>,
}

impl fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFn").field("name", &self.name).finish_non_exhaustive()
    }
}

impl AnalyticFn {
    pub fn new<F, R>(name: impl Into<String>, eval: F, singularity_radius: R) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        R: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            radius: Arc::new(singularity_radius),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }

    pub fn singularity_radius(&self, x: f64) -> f64 {
        (self.radius)(x)
    }

    /// `arctan`, branch points at `±i`.
    pub fn arctan() -> Self {
        Self::new("arctan", |z: Complex64| z.atan(), |x: f64| x.hypot(1.0))
    }

    /// `1/arctan`, singular at `0` and `±i`.
    pub fn inv_arctan() -> Self {
        Self::new("1/arctan", |z: Complex64| z.atan().inv(), |x: f64| x.min(x.hypot(1.0)))
    }

    /// `g(x) = 1/((x² + 1) arctan x) = -(log(1/arctan))'`.
    pub fn g() -> Self {
        Self::new(
            "g",
            |z: Complex64| ((z * z + 1.0) * z.atan()).inv(),
            |x: f64| x.min(x.hypot(1.0)),
        )
    }

    /// `e^{-x}`, entire.
    pub fn exp_neg() -> Self {
        Self::new("exp(-x)", |z: Complex64| (-z).exp(), |x: f64| 1.0 + x)
    }

    /// `1 - e^{-x}`, entire.
    pub fn one_minus_exp_neg() -> Self {
        Self::new("1-exp(-x)", |z: Complex64| 1.0 - (-z).exp(), |x: f64| 1.0 + x)
    }

    /// `log ∘ self` on the principal branch. Only meaningful where `self`
    /// is zero-free and off the negative axis near `(0, ∞)`; the radius is
    /// inherited.
    pub fn log_of(&self) -> Self {
        let inner = Arc::clone(&self.eval);
        let radius = Arc::clone(&self.radius);
        Self {
            name: format!("log({})", self.name),
            eval: Arc::new(move |z| inner(z).ln()),
            radius: Arc::new(move |x| radius(x)),
        }
    }
}

/// `f⁽ⁿ⁾(x)` with a bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub err_bound: f64,
}

impl Derivative {
    /// The error bound exceeds the value itself.
    pub fn low_confidence(&self) -> bool {
        self.err_bound > self.value.abs()
    }
}

/// `f⁽ⁿ⁾(x)` from [`SAMPLES`] points on a circle of radius
/// `0.5 · singularity_radius(x)`.
pub fn derivative(f: &AnalyticFn, x: f64, n: usize) -> Result<Derivative> {
    derivative_with_radius_factor(f, x, n, RADIUS_FACTOR)
}

pub fn derivative_with_radius_factor(f: &AnalyticFn, x: f64, n: usize, factor: f64) -> Result<Derivative> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { what: "x", value: x });
    }
    if n > MAX_ORDER {
        return Err(Error::Domain {
            what: "derivative order",
            value: n as f64,
        });
    }
    if !(factor > 0.0 && factor < 1.0) {
        return Err(Error::Domain {
            what: "radius factor",
            value: factor,
        });
    }
    let big_r = f.singularity_radius(x);
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(Error::Domain {
            what: "singularity radius",
            value: big_r,
        });
    }
    let rho = factor * big_r;

    let m = SAMPLES;
    let mut samples = Vec::with_capacity(m);
    let mut max_abs = 0.0f64;
    for k in 0..m {
        let theta = 2.0 * PI * k as f64 / m as f64;
        let z = Complex64::new(x, 0.0) + Complex64::from_polar(rho, theta);
        let v = f.eval(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Evaluation { re: z.re, im: z.im });
        }
        max_abs = max_abs.max(v.norm());
        samples.push(v);
    }

    // scaled Taylor coefficient a_j ρ^j
    let coefficient = |j: usize| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in samples.iter().enumerate() {
            let phase = -2.0 * PI * ((j * k) % m) as f64 / m as f64;
            acc += v * Complex64::from_polar(1.0, phase);
        }
        acc / m as f64
    };

    let scale = factorial(n) / rho.powi(n as i32);
    let value = coefficient(n).re * scale;

    // Aliasing is bounded by the size of the coefficients in the middle of
    // the spectrum; rounding by the sample magnitude.
    let tail = (m / 2 - 8..=m / 2).map(|j| coefficient(j).norm()).fold(0.0, f64::max);
    let rounding = 64.0 * f64::EPSILON * max_abs;
    Ok(Derivative {
        value,
        err_bound: scale * (rounding + tail),
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Cm,
    LogCm,
    Bernstein,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Cm => "CM",
            Property::LogCm => "logCM",
            Property::Bernstein => "Bernstein",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violated,
}

/// One derivative and the sign it is required to have.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignEntry {
    pub x: f64,
    pub n: usize,
    pub value: f64,
    pub err_bound: f64,
    /// `+1` or `-1`.
    pub required_sign: i8,
    /// `(sign · value - err_bound) / (|value| + err_bound)`
    pub margin: f64,
}

impl SignEntry {
    fn new(x: f64, n: usize, d: Derivative, required_sign: i8) -> Self {
        let signed = f64::from(required_sign) * d.value;
        let denom = d.value.abs() + d.err_bound;
        let margin = if denom > 0.0 { (signed - d.err_bound) / denom } else { 0.0 };
        Self {
            x,
            n,
            value: d.value,
            err_bound: d.err_bound,
            required_sign,
            margin,
        }
    }

    pub fn holds(&self) -> bool {
        self.margin > 0.0
    }

    /// `|value| > 10 · err_bound`.
    pub fn is_confident(&self) -> bool {
        self.value.abs() > 10.0 * self.err_bound
    }

    /// Wrong sign, well outside the error bound.
    pub fn is_witness(&self) -> bool {
        self.margin < 0.0 && self.is_confident()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub property: Property,
    pub function: String,
    pub grid: Vec<f64>,
    pub max_order: usize,
    pub entries: Vec<SignEntry>,
    pub verdict: Verdict,
    pub witnesses: Vec<SignEntry>,
}

impl ClassReport {
    fn assemble(property: Property, f: &AnalyticFn, grid: &[f64], max_order: usize, entries: Vec<SignEntry>) -> Self {
        let witnesses: Vec<SignEntry> = entries.iter().copied().filter(SignEntry::is_witness).collect();
        Self {
            property,
            function: f.name().to_owned(),
            grid: grid.to_vec(),
            max_order,
            verdict: if witnesses.is_empty() {
                Verdict::Consistent
            } else {
                Verdict::Violated
            },
            witnesses,
            entries,
        }
    }

    /// Entries whose sign is not settled by the error bound.
    pub fn inconclusive(&self) -> impl Iterator<Item = &SignEntry> {
        self.entries.iter().filter(|e| !e.holds() && !e.is_witness())
    }

    pub fn all_confident(&self) -> bool {
        self.entries.iter().all(SignEntry::is_confident)
    }
}

fn sign_table(
    property: Property,
    f: &AnalyticFn,
    differentiated: &AnalyticFn,
    grid: &[f64],
    orders: std::ops::RangeInclusive<usize>,
    sign: impl Fn(usize) -> i8,
) -> Result<ClassReport> {
    let max_order = *orders.end();
    if max_order > MAX_ORDER {
        return Err(Error::Domain {
            what: "max_order",
            value: max_order as f64,
        });
    }
    let mut entries = Vec::with_capacity(grid.len() * (max_order + 1));
    for &x in grid {
        for n in orders.clone() {
            let d = derivative(differentiated, x, n)?;
            entries.push(SignEntry::new(x, n, d, sign(n)));
        }
    }
    Ok(ClassReport::assemble(property, f, grid, max_order, entries))
}

fn alternating(n: usize) -> i8 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)ⁿ f⁽ⁿ⁾(x) ≥ 0` for `n = 0..=max_order`.
pub fn cm_sign_table(f: &AnalyticFn, grid: &[f64], max_order: usize) -> Result<ClassReport> {
    sign_table(Property::Cm, f, f, grid, 0..=max_order, alternating)
}

/// `(-1)ⁿ (log f)⁽ⁿ⁾(x) ≥ 0` for `n = 1..=max_order`.
pub fn log_cm_check(f: &AnalyticFn, grid: &[f64], max_order: usize) -> Result<ClassReport> {
    let log = f.log_of();
    sign_table(Property::LogCm, f, &log, grid, 1..=max_order.max(1), alternating)
}

/// `f ≥ 0` and `(-1)ⁿ⁻¹ f⁽ⁿ⁾(x) ≥ 0` for `n = 1..=max_order`.
pub fn bernstein_check(f: &AnalyticFn, grid: &[f64], max_order: usize) -> Result<ClassReport> {
    sign_table(Property::Bernstein, f, f, grid, 0..=max_order, |n| {
        if n == 0 {
            1
        } else {
            -alternating(n)
        }
    })
}

/// `arctan'''(x) = 2(3x² - 1)/(1 + x²)³`, negative on `(0, 1/√3)`.
pub fn h3_closed(x: f64) -> f64 {
    let q = 1.0 + x * x;
    2.0 * (3.0 * x * x - 1.0) / (q * q * q)
}

/// Root of [`h3_closed`] inside `bracket` by bisection.
pub fn sign_change_root(bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let f_lo = h3_closed(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_lo.signum() == h3_closed(hi).signum() {
        return Err(Error::Inconsistent(format!("h''' has no sign change on [{lo}, {hi}]")));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = h3_closed(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Default bracket for [`sign_change_root`].
pub const ROOT_BRACKET: (f64, f64) = (0.1, 10.0);

pub const REFUTATION_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
pub const REFUTATION_ORDER: usize = 3;

/// Outcome of the refutation: `arctan = 1/f` fails to be a Bernstein
/// function, so `f = 1/arctan` is not a Stieltjes transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub report: ClassReport,
    pub verdict: &'static str,
}

impl Refutation {
    /// The witness at the smallest order, then smallest `x`.
    pub fn primary_witness(&self) -> &SignEntry {
        self.report
            .witnesses
            .iter()
            .min_by(|a, b| a.n.cmp(&b.n).then(a.x.total_cmp(&b.x)))
            .expect("refutation always carries a witness")
    }
}

pub const NOT_STIELTJES: &str = "not Stieltjes";

pub fn stieltjes_refutation() -> Result<Refutation> {
    stieltjes_refutation_on(&REFUTATION_GRID, REFUTATION_ORDER)
}

pub fn stieltjes_refutation_on(grid: &[f64], max_order: usize) -> Result<Refutation> {
    let report = bernstein_check(&AnalyticFn::arctan(), grid, max_order)?;
    if report.witnesses.is_empty() {
        return Err(Error::Inconsistent(format!(
            "arctan passed the Bernstein sign test on {grid:?} up to order {max_order}; \
             no witness against the Stieltjes property"
        )));
    }
    Ok(Refutation {
        report,
        verdict: NOT_STIELTJES,
    })
}
