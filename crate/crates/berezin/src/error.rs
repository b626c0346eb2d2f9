//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in exact or numeric evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live over different space dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Evaluation requested at a point of the singular set N(xi,eta) = 0.
    #[error("evaluation on the singular set N(xi,eta) = 0")]
    EvalOnSingularSet,

    /// A lambda-scalar denominator vanishes at the requested lambda.
    #[error("lambda = {0} is a pole of a coefficient")]
    PoleAtLambda(String),

    /// A Gauss/anti-Gauss pivot is singular; the element lies outside the big cell.
    #[error("not in the big cell: {0}")]
    NotInBigCell(String),

    /// tr(xy) = 0, where a signed power of the trace is required.
    #[error("zero trace")]
    ZeroTrace,

    /// The fractional-linear action hits its pole.
    #[error("pole of the fractional-linear action: {0}")]
    PoleAtPoint(String),

    /// Signed power t^{sigma,eps} is undefined at t = 0.
    #[error("signed power undefined at t = 0")]
    UndefinedSignedPower,

    /// Internal sentinel: the Berezin series exceeded its termination bound.
    #[error("Berezin series did not terminate within {0} steps (internal error)")]
    NonTerminating(usize),

    /// Division by a non-unit of the symbol ring.
    #[error("not invertible in the symbol ring: {0}")]
    NotInvertible(String),

    /// Invalid constructor input (determinant, trace, chart conditions).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Expression / word / rational parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
