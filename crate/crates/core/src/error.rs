use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("non-invertible: {0}")]
    NonInvertible(String),
    #[error("invalid root datum: {0}")]
    Datum(String),
    #[error("group too large: {0}")]
    GroupTooLarge(String),
    #[error("increase bound: {0}")]
    Bound(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
