use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` covers precondition violations (rejected inputs), `Horizon`
/// covers results that would need more materialized data than available,
/// and `Uncertified` covers outcomes the exact/interval machinery could
/// not resolve at the configured precision.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("horizon exceeded: {0}")]
    Horizon(String),

    #[error("axis arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("uncertified: {0}")]
    Uncertified(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Exit code the CLI maps this error to: 2 for domain rejections,
    /// 3 for unresolved/uncertified outcomes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Uncertified(_) | Error::Horizon(_) => 3,
            _ => 2,
        }
    }
}
