use std::fmt;

use qap_core::CoreError;

/// Errors raised by landscape sampling and feature computation.
#[derive(Debug, Clone, PartialEq)]
pub enum LandscapeError {
    /// A parameter violates its documented range or relationship.
    Config { reason: String },
    /// The underlying instance is unusable.
    Core(CoreError),
}

impl fmt::Display for LandscapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LandscapeError::Config { reason } => {
                write!(f, "invalid landscape config: {reason}")
            }
            LandscapeError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for LandscapeError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            LandscapeError::Core(err) => Some(err),
            _ => None,
        }
    }
}

impl From<CoreError> for LandscapeError {
    fn from(err: CoreError) -> Self {
        LandscapeError::Core(err)
    }
}
