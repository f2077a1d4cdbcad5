//! Exact arithmetic in ℤ[α^{±1}], ℤ[v^{±1}, z^{±1}] and ℤ[α^{±1}][H, C].
//!
//! Coefficients are arbitrary precision. Terms are kept in ascending key
//! order with no zero coefficients, so equality, hashing and printing are
//! canonical.

mod bilaurent;
mod laurent;
mod skein_elem;

pub use bilaurent::BiLaurent;
pub use laurent::LaurentPoly;
pub use skein_elem::SkeinElem;

