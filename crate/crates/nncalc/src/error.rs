use thiserror::Error;

/// Errors produced by constructors and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// A shape constraint between matrices, layers, or networks was violated.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A scalar or count argument violated its precondition.
    #[error("{0}")]
    InvalidParameter(String),

    /// A NaN or infinity appeared where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
