//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by problem construction, solvers, mechanisms, and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector had the wrong length for the object it was used with.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A value violated a domain precondition (non-finite, non-positive
    /// scale, empty piece list, lower > upper, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A requested computation exceeds a hard size limit.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An experiment configuration field is unusable.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    /// Filesystem failure, tagged with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed JSON in a config or instance file.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
