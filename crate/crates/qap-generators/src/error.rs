use std::fmt;

use qap_core::CoreError;

/// Largest instance size any generator will produce. Keeps accidental
/// parameter typos (for example an oversized hypercube) from exhausting
/// memory; the study-sized instances all sit far below this.
pub const MAX_GENERATED_SIZE: usize = 2048;

/// Errors raised by the instance generators.
#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    /// A parameter violates its documented range or relationship.
    Config { reason: String },
    /// The distance and flow matrices of a hybrid differ in size.
    SizeMismatch { distance_n: usize, flow_n: usize },
    /// The requested instance would exceed [`MAX_GENERATED_SIZE`].
    TooLarge { n: usize, max: usize },
    /// A structured flow pattern came out empty even after one threshold
    /// resample.
    EmptyFlows { threshold: f64 },
    /// A generator specification string is malformed.
    Spec { reason: String },
    /// Generated matrices failed instance validation.
    Core(CoreError),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Config { reason } => write!(f, "invalid generator config: {reason}"),
            GenError::SizeMismatch { distance_n, flow_n } => {
                write!(
                    f,
                    "distance matrix is {distance_n}x{distance_n} but flow matrix is \
                     {flow_n}x{flow_n}"
                )
            }
            GenError::TooLarge { n, max } => {
                write!(f, "requested size {n} exceeds the generator cap of {max}")
            }
            GenError::EmptyFlows { threshold } => {
                write!(
                    f,
                    "structured flows are empty: no pair lies within distance {threshold} \
                     (after one threshold resample)"
                )
            }
            GenError::Spec { reason } => write!(f, "invalid generator spec: {reason}"),
            GenError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for GenError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            GenError::Core(err) => Some(err),
            _ => None,
        }
    }
}

impl From<CoreError> for GenError {
    fn from(err: CoreError) -> Self {
        GenError::Core(err)
    }
}
