use thiserror::Error;

/// Errors raised by the library.
///
/// Arithmetic that must be exact (polynomial division that the formulas
/// guarantee, factorial ratios) panics instead of returning an error: a
/// remainder there is a bug, not a recoverable condition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {n} exceeds the {what} cap of {cap}")]
    CapExceeded { n: usize, cap: usize, what: &'static str },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
