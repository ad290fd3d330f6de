use thiserror::Error;

use crate::algebra::Algebra;

/// Errors raised by algebra, transformation and verification routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Two operands live in different algebras.
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: Algebra, right: Algebra },

    /// Sizes of vectors or coefficient matrices do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An argument falls outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An eigenvalue falls outside the domain of a spectral function.
    #[error("eigenvalue #{index} = {value:e} outside domain {domain}")]
    EigenvalueDomain {
        index: usize,
        value: f64,
        domain: String,
    },

    /// Majorization precondition does not hold; `slack` is the most negative partial-sum slack.
    #[error("not majorized: partial-sum slack {slack:e} at k = {k}")]
    NotMajorized { k: usize, slack: f64 },

    /// Caller supplied an invalid object (frame, idempotent, descriptor, config).
    #[error("usage error: {0}")]
    Usage(String),

    /// A numerical routine failed to converge or lost its invariants.
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
