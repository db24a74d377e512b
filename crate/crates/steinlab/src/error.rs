//! Crate-wide error type.

/// Errors raised by the numerical operations.
///
/// Variants mirror the failure modes of the contracts: bad inputs, pairs of
/// laws that no algorithm covers, missing derivative/growth declarations,
/// singular evaluation points, ill-conditioned discrete operators, and
/// cross-validation mismatches that exceed the certified error budget.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid law: {0}")]
    InvalidLaw(String),

    #[error("unsupported law pair: {0}")]
    UnsupportedPair(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("singular evaluation point: {0}")]
    Singularity(String),

    #[error("ill-conditioned operator (estimated condition {estimate:.3e}): {context}")]
    Conditioning { estimate: f64, context: String },

    #[error(
        "tolerance exceeded: |{left} - {right}| = {gap:.3e} > budget {budget:.3e} ({context})"
    )]
    ToleranceExceeded {
        left: f64,
        right: f64,
        gap: f64,
        budget: f64,
        context: String,
    },

    #[error("inconclusive sample size: {0}")]
    InconclusiveSampleSize(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
