use thiserror::Error;

/// Errors produced by the solvers and the exact oracle.
#[derive(Debug, Error)]
pub enum KimuraError {
    /// A parameter lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested index or degree exceeds what was prepared.
    #[error("range error: requested {requested}, available {available}")]
    Range { requested: usize, available: usize },

    /// Inconsistent dimensions between operands.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A numerical procedure failed; the message carries diagnostics.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Input data violates a solver precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, KimuraError>;

impl KimuraError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        KimuraError::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        KimuraError::Contract(msg.into())
    }
}
