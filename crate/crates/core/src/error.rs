//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the mathematical domain of an operation was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input broke an interface contract (dimension mismatch, unnormalized state, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The iterative eigensolver hit its restart cap before reaching tolerance.
    #[error("eigensolver did not converge: best residual {residual:.3e} after {restarts} restarts")]
    Convergence { residual: f64, restarts: usize },

    /// A size or memory cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    /// Malformed on-disk data (bad magic bytes, truncated payload, unparsable config).
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
