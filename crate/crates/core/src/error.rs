use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("field mismatch: {0}")]
    Field(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("fit failure: {0}")]
    Fit(String),
    #[error("pole order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("vector does not generate the module up to weight {level}")]
    NotGenerating { level: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
