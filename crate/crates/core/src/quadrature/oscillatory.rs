//! `∫ a(u) (1 - cos ωu) du` for positive, decaying amplitudes `a`.
//!
//! The range is cut at the zeros `u_j = (j + ½)π/ω` of the cosine. Leading
//! panels are integrated directly with `1 - cos ωu = 2 sin²(ωu/2)`, which
//! keeps small values free of cancellation. On an infinite range the tail
//! is split into the non-oscillatory `∫ a` (semi-infinite map) minus the
//! alternating series of half-period panels of `a(u) cos ωu`, whose
//! partial sums are accelerated by repeated averaging.

use std::f64::consts::PI;

use super::{integrate_adaptive, integrate_semi_infinite, Interval, QuadResult, Tolerance};
use crate::error::{Error, Result};

/// Cap on the number of averaging passes over the partial sums.
pub const MAX_ACCELERATION_DEPTH: usize = 12;

/// Half-period panels integrated directly before the tail split.
const LEADING_PANELS: usize = 2;

/// Terms of the alternating tail series before giving up.
const MAX_TAIL_TERMS: usize = 400;

pub fn integrate_oscillatory_decaying<F>(
    mut amplitude: F,
    frequency: f64,
    iv: Interval,
    tol: &Tolerance,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    tol.validate()?;
    if !(frequency > 0.0) || !frequency.is_finite() {
        return Err(Error::Domain {
            what: "oscillation frequency",
            value: frequency,
        });
    }
    let omega = frequency;
    let zero = |j: f64| (j + 0.5) * PI / omega;
    // first cosine zero strictly above lo
    let mut j = (iv.lo() * omega / PI - 0.5).floor();
    while zero(j) <= iv.lo() {
        j += 1.0;
    }

    // every piece gets a share of the absolute budget
    let piece = tol.with_abs(tol.abs_tol / 8.0);
    let mut total = QuadResult {
        value: 0.0,
        err_est: 0.0,
        n_evals: 0,
        converged: true,
    };
    let absorb = |total: &mut QuadResult, r: QuadResult, sign: f64| {
        total.value += sign * r.value;
        total.err_est += r.err_est;
        total.n_evals += r.n_evals;
        total.converged &= r.converged;
    };

    let mut with_weight = |u: f64| {
        let h = (0.5 * omega * u).sin();
        amplitude(u) * 2.0 * h * h
    };

    let mut lo = iv.lo();
    let mut panels = 0usize;
    while iv.is_finite() || panels < LEADING_PANELS {
        let hi = zero(j).min(iv.hi());
        let r = integrate_adaptive(&mut with_weight, Interval::new(lo, hi)?, &piece)?;
        absorb(&mut total, r, 1.0);
        lo = hi;
        j += 1.0;
        panels += 1;
        if lo >= iv.hi() {
            return Ok(finish(total, tol));
        }
    }

    let base = integrate_semi_infinite(&mut amplitude, lo, &piece)?;
    absorb(&mut total, base, 1.0);

    let tail = accelerate_cosine_tail(&mut amplitude, omega, lo, j, &piece)?;
    absorb(&mut total, tail, -1.0);
    Ok(finish(total, tol))
}

fn finish(mut total: QuadResult, tol: &Tolerance) -> QuadResult {
    total.converged &= total.err_est <= tol.target(total.value.abs());
    total
}

/// Sum of `∫ a(u) cos ωu` over `[lo, ∞)`, where `lo` is the cosine zero
/// with index `j - 1`.
fn accelerate_cosine_tail<F>(
    amplitude: &mut F,
    omega: f64,
    lo: f64,
    mut j: f64,
    tol: &Tolerance,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    let term_tol = tol.with_abs(tol.abs_tol / 64.0);
    let mut weighted = |u: f64| amplitude(u) * (omega * u).cos();

    let mut partial = Vec::with_capacity(64);
    let mut running = 0.0;
    let mut panel_err = 0.0;
    let mut n_evals = 0;
    let mut all_converged = true;
    let mut prev: Option<f64> = None;
    let mut prev_diff = f64::INFINITY;
    let mut growing = 0;
    let mut a = lo;

    while partial.len() < MAX_TAIL_TERMS {
        let b = (j + 0.5) * PI / omega;
        let r = integrate_adaptive(&mut weighted, Interval::new(a, b)?, &term_tol)?;
        running += r.value;
        panel_err += r.err_est;
        n_evals += r.n_evals;
        all_converged &= r.converged;
        partial.push(running);
        a = b;
        j += 1.0;

        let est = averaged_estimate(&partial);
        if let Some(p) = prev {
            let diff = (est - p).abs();
            let enough = partial.len() > MAX_ACCELERATION_DEPTH.min(6);
            if enough && diff + panel_err <= tol.target(est.abs()) && diff <= prev_diff {
                return Ok(QuadResult {
                    value: est,
                    err_est: diff + panel_err,
                    n_evals,
                    converged: all_converged,
                });
            }
            growing = if diff > prev_diff { growing + 1 } else { 0 };
            if growing >= 8 && partial.len() > 4 * MAX_ACCELERATION_DEPTH {
                // acceleration is diverging; report the best we have
                return Ok(QuadResult {
                    value: est,
                    err_est: diff + panel_err,
                    n_evals,
                    converged: false,
                });
            }
            prev_diff = diff;
        }
        prev = Some(est);
    }

    let est = averaged_estimate(&partial);
    Ok(QuadResult {
        value: est,
        err_est: prev.map_or(f64::INFINITY, |p| (est - p).abs()) + panel_err,
        n_evals,
        converged: false,
    })
}

/// Repeated pairwise averaging of the trailing partial sums, up to
/// [`MAX_ACCELERATION_DEPTH`] passes.
fn averaged_estimate(partial: &[f64]) -> f64 {
    let depth = MAX_ACCELERATION_DEPTH.min(partial.len() - 1);
    let mut row: Vec<f64> = partial[partial.len() - depth - 1..].to_vec();
    for _ in 0..depth {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::new(1e-12, 1e-12, 200_000).unwrap()
    }

    #[test]
    fn exponential_amplitude_closed_forms() {
        for (omega, exact) in [(1.0, 0.5), (10.0, 1.0 - 1.0 / 101.0), (0.01, 1.0 - 1.0 / 1.0001)] {
            let r = integrate_oscillatory_decaying(|u: f64| (-u).exp(), omega, Interval::semi_infinite(0.0).unwrap(), &tol())
                .unwrap();
            assert!(r.converged, "{omega}: {r:?}");
            assert!((r.value - exact).abs() < 1e-11, "{omega}: {} vs {exact}", r.value);
        }
    }

    #[test]
    fn algebraic_amplitude_matches_closed_form() {
        // ∫_0^∞ (1 - cos ωu)/u² du = πω/2 is singular-free after the first
        // panel; use ∫_1^∞ instead against direct integration.
        let amp = |u: f64| 1.0 / (u * u);
        let r = integrate_oscillatory_decaying(amp, 3.0, Interval::semi_infinite(1.0).unwrap(), &tol()).unwrap();
        assert!(r.converged, "{r:?}");
        // ∫_0^1 (1-cos 3u)/u² du + value = 3π/2
        let head = integrate_adaptive(
            |u: f64| {
                let h = (1.5 * u).sin();
                2.0 * h * h / (u * u)
            },
            Interval::new(0.0, 1.0).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!((head.value + r.value - 1.5 * PI).abs() < 1e-10, "{}", head.value + r.value);
    }

    #[test]
    fn finite_interval_sums_panels() {
        let amp = |u: f64| 1.0 / (1.0 + u);
        let iv = Interval::new(0.3, 40.0).unwrap();
        let osc = integrate_oscillatory_decaying(amp, 5.0, iv, &tol()).unwrap();
        let direct = integrate_adaptive(|u: f64| amp(u) * (1.0 - (5.0 * u).cos()), iv, &tol()).unwrap();
        assert!((osc.value - direct.value).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_frequency() {
        let iv = Interval::semi_infinite(0.0).unwrap();
        assert!(integrate_oscillatory_decaying(|u: f64| (-u).exp(), 0.0, iv, &tol()).is_err());
        assert!(integrate_oscillatory_decaying(|u: f64| (-u).exp(), f64::NAN, iv, &tol()).is_err());
    }

    #[test]
    fn growing_amplitude_is_reported_unconverged() {
        let iv = Interval::semi_infinite(0.0).unwrap();
        let r = integrate_oscillatory_decaying(|u: f64| u, 1.0, iv, &Tolerance::default()).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn averaging_accelerates_alternating_harmonic() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let est = averaged_estimate(&partial);
        assert!((est - 2f64.ln()).abs() < 1e-7, "{est}");
    }
}
