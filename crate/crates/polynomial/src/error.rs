//! Error taxonomy for polynomial operations.

use thiserror::Error;

use crate::poly::{ExpPair, VarTag};

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// A binary operation received operands in different variable pairs.
    #[error("variable tag mismatch: {0} vs {1}")]
    TagMismatch(VarTag, VarTag),
    /// An operation that needs a plain (non-Laurent) polynomial met a
    /// negative exponent.
    #[error("negative exponent in {0:?} where non-negative exponents are required")]
    NegativeExponent(ExpPair),
    /// The operation is undefined for the zero polynomial.
    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    /// `exact_div` was asked for a quotient that does not exist in the
    /// Laurent ring.
    #[error("inexact division")]
    NotDivisible,
    /// A serialized polynomial could not be decoded.
    #[error("malformed polynomial data: {0}")]
    Malformed(String),
}
