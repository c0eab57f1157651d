//! Globally adaptive bisection over a tree of Gauss–Kronrod panels.
//!
//! Every split replaces a leaf by its two halves and the parent value is
//! re-formed as `left + right`. Totals are always tree sums, and all leaves
//! sharing the current maximal error are split together, so the result is
//! a function of the panel tree alone: two runs see the same samples, the
//! same tree and the same rounding. A path traversed in the opposite
//! direction (parameter negated) yields exactly the negated value.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::kronrod::{gk15, NODES};
use super::{QuadResult, QuadValue, Tolerance};
use crate::error::{Error, Result};

struct Node<T> {
    lo: f64,
    hi: f64,
    value: T,
    err: f64,
    parent: Option<usize>,
    children: Option<(usize, usize)>,
}

#[derive(PartialEq)]
struct Pending {
    err: f64,
    idx: usize,
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

/// Panels narrower than this (relative to their location, or absolutely
/// relative to the whole range) are never split again.
fn splittable(lo: f64, hi: f64, span: f64) -> bool {
    let mid = 0.5 * (lo + hi);
    let width = hi - lo;
    lo < mid
        && mid < hi
        && width > 1e3 * f64::EPSILON * lo.abs().max(hi.abs())
        && width > 1e-250 * span
}

/// Integrates `f` over consecutive panels delimited by `breaks` (strictly
/// increasing, at least two entries).
pub(crate) fn integrate_panels<T, F>(f: &mut F, breaks: &[f64], tol: &Tolerance) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    debug_assert!(breaks.len() >= 2);
    let span = breaks[breaks.len() - 1] - breaks[0];
    let mut nodes: Vec<Node<T>> = Vec::with_capacity(64);
    let mut heap = BinaryHeap::new();
    let mut roots = Vec::with_capacity(breaks.len() - 1);
    let mut n_evals = 0usize;

    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let est = gk15(f, lo, hi).map_err(|abscissa| Error::IntegrandFailure { abscissa })?;
        n_evals += NODES;
        let idx = nodes.len();
        nodes.push(Node {
            lo,
            hi,
            value: est.value,
            err: est.err,
            parent: None,
            children: None,
        });
        roots.push(idx);
        if splittable(lo, hi, span) {
            heap.push(Pending { err: est.err, idx });
        }
    }

    let mut batch = Vec::new();
    loop {
        let value = mirror_sum(&roots, |i| nodes[i].value);
        let err = mirror_sum(&roots, |i| nodes[i].err);
        if err <= tol.target(value.norm()) {
            return Ok(QuadResult {
                value,
                err_est: err,
                n_evals,
                converged: true,
            });
        }

        batch.clear();
        if let Some(top) = heap.pop() {
            let e = top.err;
            batch.push(top.idx);
            while heap.peek().is_some_and(|p| p.err == e) {
                batch.push(heap.pop().unwrap().idx);
            }
        }
        if batch.is_empty() || n_evals + 2 * NODES * batch.len() > tol.max_evals {
            return Ok(QuadResult {
                value,
                err_est: err,
                n_evals,
                converged: false,
            });
        }

        for &idx in &batch {
            let (lo, hi) = (nodes[idx].lo, nodes[idx].hi);
            let mid = 0.5 * (lo + hi);
            let left = gk15(f, lo, mid).map_err(|abscissa| Error::IntegrandFailure { abscissa })?;
            let right = gk15(f, mid, hi).map_err(|abscissa| Error::IntegrandFailure { abscissa })?;
            n_evals += 2 * NODES;

            let l = nodes.len();
            for (a, b, est) in [(lo, mid, left), (mid, hi, right)] {
                let i = nodes.len();
                nodes.push(Node {
                    lo: a,
                    hi: b,
                    value: est.value,
                    err: est.err,
                    parent: Some(idx),
                    children: None,
                });
                if splittable(a, b, span) {
                    heap.push(Pending { err: est.err, idx: i });
                }
            }
            nodes[idx].children = Some((l, l + 1));

            let mut cur = Some(idx);
            while let Some(i) = cur {
                let (a, b) = nodes[i].children.expect("internal node");
                nodes[i].value = nodes[a].value + nodes[b].value;
                nodes[i].err = nodes[a].err + nodes[b].err;
                cur = nodes[i].parent;
            }
        }
    }
}

/// Pairwise sum whose association is symmetric under reversal of `items`.
fn mirror_sum<T: QuadValue>(items: &[usize], get: impl Fn(usize) -> T + Copy) -> T {
    match items.len() {
        0 => T::default(),
        1 => get(items[0]),
        n if n % 2 == 0 => mirror_sum(&items[..n / 2], get) + mirror_sum(&items[n / 2..], get),
        n => {
            let m = n / 2;
            get(items[m]) + (mirror_sum(&items[..m], get) + mirror_sum(&items[m + 1..], get))
        }
    }
}
