use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An index or quantum number outside the truncated basis.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degenerate state: {0}")]
    Degenerate(String),

    /// A physical parameter outside the range where a construction is defined.
    #[error("parameter domain error: {0}")]
    ParameterDomain(String),

    /// The requested truncation is too small for the requested accuracy.
    #[error("convergence error: {message} (suggested cutoff: {suggested_cutoff})")]
    Convergence {
        message: String,
        suggested_cutoff: usize,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
