use thiserror::Error;

use crate::algebra::{Backend, Field, Signature};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: &'static str },

    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(Backend, Backend),

    #[error("{op} requires the complex field")]
    ComplexOnly { op: &'static str },

    #[error("{0}")]
    Usage(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("binding for `{name}` has type {actual}, outside its declared type {declared}")]
    BindingType { name: String, declared: String, actual: String },

    #[error("no binding for symbol `{0}`")]
    Unbound(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
