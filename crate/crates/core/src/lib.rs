//! Exact computations certifying, for a rational slope `p/q` with `|p| > 1`,
//! that two knots sharing a `p/q`-surgery have different zeroth coefficient
//! HOMFLYPT polynomials.
//!
//! - [`poly`]: Laurent polynomials over ℤ and the skein ring ℤ[α^{±1}][H, C]
//! - [`surgery`]: gluing matrices for duals and double duals, slope parameters
//! - [`braid`]: braid words, closures, the positive cable braid
//! - [`homfly`]: a generic HOMFLYPT oracle and a positive-braid Γ recursion
//! - [`skein_tree`]: symbolic skein/linking trees for the two knots
//! - [`certify`]: end-to-end certificates

pub mod braid;
pub mod certify;
pub mod error;
pub mod homfly;
pub mod poly;
pub mod skein_tree;
pub mod surgery;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use poly::{BiLaurent, LaurentPoly, SkeinElem};
pub use surgery::{GluingMatrix, SlopeParams};
