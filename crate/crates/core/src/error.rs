use alloc::string::String;

/// Errors raised by the exact-arithmetic, formula, generator and engine layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("formula has no terms")]
    EmptyFormula,
    #[error("Lehmer measure undefined: {0}")]
    MeasureUndefined(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("derivation mismatch at {what}: expected {expected}, got {got}")]
    DerivationMismatch {
        what: String,
        expected: String,
        got: String,
    },
    #[error("trace replay diverged at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error("registry entry {0} failed validation")]
    Registry(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
