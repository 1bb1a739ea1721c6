use std::fmt;

/// Errors raised by instance construction, statistics, and normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A matrix was not square.
    NotSquare { rows: usize, cols: usize },
    /// The two data matrices have different dimensions.
    DimensionMismatch { a_n: usize, b_n: usize },
    /// The instance (or an operation's input) is below the minimum size.
    TooSmall { n: usize, min: usize, context: &'static str },
    /// A matrix entry is NaN or infinite.
    NonFinite { matrix: &'static str, row: usize, col: usize },
    /// A permutation mapping is not a bijection, or has the wrong length.
    InvalidPermutation { reason: String },
    /// The instance has a constant cost landscape (sigma_Q = 0), so no
    /// standard form exists.
    DegenerateInstance { reason: String },
    /// A data matrix collapses to a constant under zero-mean shifting, so it
    /// cannot be rescaled to unit entry spread.
    DegenerateMatrix { matrix: &'static str },
    /// An equivalence transform's precondition does not hold.
    InvalidTransform { reason: String },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            CoreError::DimensionMismatch { a_n, b_n } => {
                write!(f, "matrix dimensions differ: A is {a_n}x{a_n}, B is {b_n}x{b_n}")
            }
            CoreError::TooSmall { n, min, context } => {
                write!(f, "{context} requires n >= {min}, got n = {n}")
            }
            CoreError::NonFinite { matrix, row, col } => {
                write!(f, "matrix {matrix} has a non-finite entry at ({row},{col})")
            }
            CoreError::InvalidPermutation { reason } => {
                write!(f, "invalid permutation: {reason}")
            }
            CoreError::DegenerateInstance { reason } => {
                write!(f, "degenerate instance: {reason}")
            }
            CoreError::DegenerateMatrix { matrix } => {
                write!(
                    f,
                    "matrix {matrix} is constant per entry class after zero-mean shifting; \
                     it cannot be normalized"
                )
            }
            CoreError::InvalidTransform { reason } => {
                write!(f, "invalid transform: {reason}")
            }
        }
    }
}

impl std::error::Error for CoreError {}
