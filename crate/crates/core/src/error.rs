use thiserror::Error;

/// Errors raised by the spectral computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The request lies outside the supported evaluation window.
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),
    /// Malformed or non-finite input.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A certification step failed (e.g. a bracket without a sign change).
    #[error("internal consistency failure: {0}")]
    Internal(String),
    /// An independent oracle was given bounds too small to be complete.
    #[error("oracle insufficient: {0}")]
    OracleInsufficient(String),
    /// A structural invariant was violated.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// `true` for errors caused by the caller's parameters rather than by a
    /// numerical failure.
    pub fn is_domain_error(&self) -> bool {
        matches!(self, Error::UnsupportedRange(_) | Error::InvalidArgument(_))
    }
}
