//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the library.
///
/// Algorithmic failures of the extension step itself (no solution, bad
/// roots, ...) are not errors: they are normal outcomes represented by
/// [`crate::ExtensionOutcome`]. `Error` covers violated preconditions,
/// malformed inputs and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("discriminant requires degree >= 1, got degree 0")]
    ConstantPolynomial,

    #[error("invalid interval: lower bound must be strictly below upper bound")]
    InvalidInterval,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("insufficient moments: need index up to {needed}, have up to {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("malformed moments file: {0}")]
    MalformedMomentsFile(String),

    #[error("malformed rule document: {0}")]
    MalformedDocument(String),

    #[error("duplicate quadrature nodes make the weight system singular")]
    DuplicateNodes,

    #[error("certificate violation: {0}")]
    CertificateViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
