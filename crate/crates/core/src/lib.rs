//! Optimal transport distances on the line, cumulant-class certificates and
//! Gaussian-approximation bounds for finitely supported laws.
//!
//! Distances to a Gaussian are computed through the quantile coupling
//! `u -> (F^{-1}(u), G^{-1}(u))`, which is optimal for every convex cost of
//! `|x - y|` in one dimension.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Series coefficients and reference values are quoted as published.
#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod cumulants;
pub mod dist;
pub mod error;
pub mod numeric;
pub mod special;
pub mod tilt;
pub mod transport;

pub use dist::{Distribution1d, GaussianLaw, LatticeDistribution, Law};
pub use error::{Error, Result};
