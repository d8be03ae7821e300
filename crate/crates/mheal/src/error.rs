use thiserror::Error;

/// Library-wide error type. Variants carry the indices or line numbers needed
/// to locate the offending input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no points")]
    EmptyInput,

    #[error("operation needs at least two points, got {0}")]
    FewerThanTwoPoints(usize),

    #[error("operation needs at least three points, got {0}")]
    FewerThanThreePoints(usize),

    #[error("row {row} has zero norm and cannot be placed on the sphere")]
    ZeroNormRow { row: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteInput { row: usize, col: usize },

    #[error("points {i} and {j} coincide within the duplicate tolerance")]
    DuplicatePoints { i: usize, j: usize },

    #[error("budget {budget} exceeds pool size {pool}")]
    BudgetExceedsPool { budget: usize, pool: usize },

    #[error("no unselected candidates remain")]
    PoolExhausted,

    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("k = {k} exceeds the number of distinct points ({distinct})")]
    KExceedsDistinctPoints { k: usize, distinct: usize },

    #[error("rotation candidate count {m} exceeds cluster size {size}")]
    MExceedsCluster { m: usize, size: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subset is empty")]
    EmptySubset,

    #[error("labeled data is empty")]
    EmptyData,

    #[error("label at row {row} must be +1 or -1, got {value}")]
    BadLabel { row: usize, value: f64 },

    #[error("hypothesis pool has no survivors")]
    NoSurvivors,

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("inconsistent dimension at line {line}: expected {expected}, got {got}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
