use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("relations imply a cycle through `{0}`")]
    CycleDetected(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("poset is not homogeneous")]
    NotHomogeneous,
    #[error("poset is not connected")]
    NotConnected,
    #[error("cube enumeration in dimension {dim} exceeded the cap of {cap} (at least {partial} cubes)")]
    CapExceeded { dim: usize, cap: usize, partial: usize },
    #[error("boundary maps do not compose to zero: {0}")]
    NotAComplex(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("collapse search exhausted its budget of {0} nodes")]
    BudgetExhausted(usize),
    #[error("loops have different basepoints")]
    BasepointMismatch,
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("grid map is not monotone at {0:?}")]
    NonMonotoneInput(Vec<usize>),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
