use thiserror::Error;

/// Errors produced by code construction, decoding and pipeline simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("pipeline contract violation: {0}")]
    ContractViolation(String),

    #[error("malformed quantization spec `{0}` (expected Qi.Qc.Qf)")]
    QuantSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
