use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("field mismatch in {0}")]
    FieldMismatch(&'static str),
    #[error("algebra mismatch in {0}")]
    AlgebraMismatch(&'static str),
    #[error("coring mismatch in {0}")]
    CoringMismatch(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("criterion not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
