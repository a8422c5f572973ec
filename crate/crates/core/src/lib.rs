//! Exact computation of Hirzebruch genera for manifolds with a `Z/p` action,
//! starting from the weights of the fixed points.
//!
//! Three independent routes are provided and cross-checked:
//!
//! * the cyclotomic trace route ([`cyclotomic`]), which sums
//!   `-Tr prod 1/f(-2 pi i x_k / p)` over the fixed points in `Q(zeta_p)`;
//! * the B-series route ([`fixedpoint::ab_coefficient`]), which turns each
//!   trace into a coefficient of `A(u) B(u)`;
//! * the p-series route ([`fixedpoint::p_series_term`]), which sums
//!   `<(p u / [u]_p) prod u / [u]_{x_k}>_n`.
//!
//! All arithmetic is exact over `Q` or `Q[delta, eps]`; values are reduced
//! mod `p` only at the end.

pub mod cpn;
pub mod cyclotomic;
pub mod error;
pub mod fixedpoint;
pub mod genus;
pub mod rings;
pub mod series;

pub use error::{Error, Result};
pub use genus::{Genus, GenusKind, GenusSpec};
pub use rings::{GradedPoly, GradedPolyModP, ModP, OddPrime, Rational, Residue};
pub use series::Series;
