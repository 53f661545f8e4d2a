//! Computational algebra for binary finite fields: GF(2^n) arithmetic and
//! structure theory, polynomials over extension fields, Walsh spectra of
//! Boolean functions, and construction plus verification of APN function
//! families derived from the quadratic bent map B(X) = X^(2^(n/2)+1).

pub mod apn;
pub mod field;
pub mod poly;
pub mod spectrum;

pub use field::{FieldElem, FieldError, FieldSpec};
pub use poly::{Poly, PolyError};
