use thiserror::Error;

pub type Result<T> = std::result::Result<T, SieveError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SieveError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary (max deviation of U^dagger U from I is {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("vector {index} is linearly dependent on its predecessors")]
    LinearlyDependent { index: usize },

    /// Indices are 1-based.
    #[error("basis vector {vector} is not an eigenvector of projector {projector}")]
    NotEigenvector { projector: usize, vector: usize },

    #[error("projector {projector} is not a diagonal 0/1 matrix")]
    NotDiagonal { projector: usize },

    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("refusing {what} for n = {n} without an explicit override (--force)")]
    ResourceGuard { what: &'static str, n: usize },

    #[error("state is not normalized (squared norm {norm_sq})")]
    Unnormalized { norm_sq: f64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid axis assignment: {0}")]
    InvalidAxes(String),

    #[error("invalid tolerance {0}: must be finite and strictly positive")]
    InvalidTolerance(f64),

    #[error("not a valid proposition system: {0}")]
    InvalidSystem(String),

    #[error("not a valid partition: {0}")]
    InvalidPartition(String),

    #[error("not a valid basis: {0}")]
    InvalidBasis(String),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
}

impl SieveError {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        SieveError::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
