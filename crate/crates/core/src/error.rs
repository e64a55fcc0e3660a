use thiserror::Error;

/// Errors raised by the numrad library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Shapes do not fit the operation (non-square input, length mismatch, ...).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A value lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input. `line` is 1-based; 0 means the whole document.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("index {index} out of range 1..={len}")]
    Index { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
