use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient candidates: requested {requested} points, only {available} candidates")]
    InsufficientCandidates { requested: usize, available: usize },

    #[error("degenerate point/basis pairing at level {level} (pivot {pivot:e}, tolerance {tolerance:e})")]
    Degenerate {
        level: usize,
        pivot: f64,
        tolerance: f64,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("multi-index {0:?} is not a member of the index set")]
    NotAMember(Vec<usize>),

    #[error("offset {offset} out of range (size {size})")]
    OffsetOutOfRange { offset: usize, size: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("axis {axis} has {len} points/functions, need at least {needed}")]
    AxisTooShort {
        axis: usize,
        len: usize,
        needed: usize,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {value} outside domain [{lo}, {hi}] on axis {axis}")]
    OutsideDomain {
        axis: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("size guard exceeded: {what} = {size} > {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("singular matrix")]
    Singular,

    #[error("missing sample for grid offset {0}")]
    MissingSample(usize),

    #[error("bad input data: {0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
