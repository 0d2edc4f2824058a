use thiserror::Error;

/// Errors raised by the arithmetic, curve and isogeny routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("unsupported characteristic {0}: reduction data needs characteristic 0 or p >= 5")]
    UnsupportedCharacteristic(u64),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("mismatched base fields: {0} vs {1}")]
    FieldMismatch(String, String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
