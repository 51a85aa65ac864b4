//! Exact arithmetic over the field of rational functions in one variable `q`
//! with rational coefficients, together with dense linear algebra over that
//! field.
//!
//! The building blocks are:
//!
//! * [`Laurent`] — Laurent polynomials in `q` with `BigRational` coefficients,
//!   stored sparsely by exponent.
//! * [`Scalar`] — elements of the rational-function field ℚ(q), kept in a
//!   canonical fraction form so that structural equality coincides with
//!   equality in the field.
//! * [`Matrix`] — dense matrices of scalars with reduction, inversion,
//!   kernels and linear solving.
//!
//! Everything is exact; no floating point is used anywhere.

mod laurent;
mod matrix;
mod parse;
mod scalar;

pub use laurent::Laurent;
pub use matrix::{Matrix, SolveOutcome};
pub use scalar::Scalar;

use thiserror::Error;

/// A rational number with arbitrary precision.
pub type QRat = num::BigRational;

/// An arbitrary-precision integer.
pub type QInt = num::BigInt;

/// Errors produced by arithmetic and parsing.
#[derive(Debug, Error)]
pub enum NumError {
    /// A fraction was formed with a zero denominator.
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    /// Division of a scalar by zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A matrix that was required to be invertible is singular.
    #[error("matrix is singular")]
    Singular,
    /// Operand shapes do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// The input text is not a valid scalar expression.
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// Convenience constructor for a rational number `n/d`.
pub fn qrat(n: i64, d: i64) -> QRat {
    QRat::new(QInt::from(n), QInt::from(d))
}
