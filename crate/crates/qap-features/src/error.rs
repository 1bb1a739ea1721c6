use std::fmt;

use qap_core::CoreError;
use qap_landscape::LandscapeError;

/// Errors from feature computation.
///
/// Feature formulas themselves are total on standard-form data; failures
/// come from the normalization step (degenerate instances) or from the
/// landscape sampler.
#[derive(Debug)]
pub enum FeatureError {
    Core(CoreError),
    Landscape(LandscapeError),
}

impl fmt::Display for FeatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureError::Core(e) => write!(f, "{e}"),
            FeatureError::Landscape(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FeatureError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            FeatureError::Core(e) => Some(e),
            FeatureError::Landscape(e) => Some(e),
        }
    }
}

impl From<CoreError> for FeatureError {
    fn from(e: CoreError) -> Self {
        FeatureError::Core(e)
    }
}

impl From<LandscapeError> for FeatureError {
    fn from(e: LandscapeError) -> Self {
        FeatureError::Landscape(e)
    }
}
