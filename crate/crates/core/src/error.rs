use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid class specification: {0}")]
    InvalidClass(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
