//! Numerical verification that `1/arctan` is logarithmically completely
//! monotonic on `(0, ∞)` and that it is not a Stieltjes transform.
//!
//! * [`quadrature`]: adaptive real, semi-infinite, complex-path and
//!   oscillatory integration.
//! * [`arctan_cm`]: `f = 1/arctan`, `g = -(log f)'`, the Bernstein density
//!   `w(s)` with `g(x) = ∫ w(s) e^{-xs} ds`, and the auxiliary integral
//!   identities used to derive it.
//! * [`contour`]: the keyhole residue computation behind that
//!   representation.
//! * [`cm_checker`]: derivative sign tables for CM, log-CM and Bernstein
//!   properties, and the refutation of the Stieltjes property.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod arctan_cm;
pub mod cm_checker;
pub mod contour;
pub mod error;
pub mod quadrature;

pub use error::{Error, Result, Singularity};
pub use quadrature::{Interval, QuadResult, Tolerance};
