use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unsupported local specification: {0}")]
    UnsupportedSpec(String),

    #[error("mass table incomplete: no local density for {0}")]
    MassTableIncomplete(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
