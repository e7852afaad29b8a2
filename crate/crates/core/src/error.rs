use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("ground set must contain at least one element")]
    EmptyGround,
    #[error("element index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("duplicate split {0}")]
    DuplicateSplit(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("invalid order parameters: {0}")]
    InvalidParams(String),
    #[error("expected two distinct elements")]
    SameElement,
    #[error("need at least {need} elements, got {got}")]
    TooFewElements { need: usize, got: usize },
    #[error("split system is empty")]
    EmptySystem,
    #[error("split system is not compatible")]
    Incompatible,
    #[error("distance is not circular")]
    NotCircular,
    #[error("split system is not linearly independent")]
    Dependent,
    #[error("not an allowable pair: {0}")]
    NotAllowable(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
}

pub type Result<T> = std::result::Result<T, Error>;
