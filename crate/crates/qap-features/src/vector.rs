//! Assembly of the complete named feature vector.

use qap_core::{cost_statistics, standardize, Instance, StandardFormInstance, TripodParams};
use qap_io::{feature_index, FEATURE_COUNT, FEATURE_NAMES, LANDSCAPE_START};
use qap_landscape::{landscape_features, LandscapeConfig};

use crate::combined::combined_features;
use crate::error::FeatureError;
use crate::matrix_feats::{matrix_features, MATRIX_FEATURE_COUNT};

/// Number of features computable without landscape sampling.
pub const DETERMINISTIC_FEATURE_COUNT: usize = LANDSCAPE_START;

/// A complete 40-entry feature vector in catalog order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: [f64; FEATURE_COUNT],
}

impl FeatureVector {
    /// All values, in catalog order.
    pub fn values(&self) -> &[f64; FEATURE_COUNT] {
        &self.values
    }

    /// Value of the named feature (canonical name or alias).
    pub fn value(&self, name: &str) -> Option<f64> {
        feature_index(name).map(|i| self.values[i])
    }

    /// The catalog names, index-aligned with [`FeatureVector::values`].
    pub fn names() -> &'static [&'static str; FEATURE_COUNT] {
        &FEATURE_NAMES
    }
}

/// The 32 deterministic features of an already-standardized instance:
/// 12 distance-matrix, 12 flow-matrix, 8 combined, in catalog order.
///
/// # Errors
/// Propagates failures of the exact cost statistics (n < 3).
pub fn deterministic_features(
    std: &StandardFormInstance,
) -> Result<[f64; DETERMINISTIC_FEATURE_COUNT], FeatureError> {
    let stats = cost_statistics(&std.to_instance("standard form"))?;
    let distance = matrix_features(&std.d);
    let flow = matrix_features(&std.f);
    let combined = combined_features(std, &stats);

    let mut out = [0.0; DETERMINISTIC_FEATURE_COUNT];
    out[..MATRIX_FEATURE_COUNT].copy_from_slice(&distance);
    out[MATRIX_FEATURE_COUNT..2 * MATRIX_FEATURE_COUNT].copy_from_slice(&flow);
    out[2 * MATRIX_FEATURE_COUNT..].copy_from_slice(&combined);
    Ok(out)
}

/// Standardizes `inst` and computes the 32 deterministic features.
///
/// # Errors
/// Propagates standardization failures (too small or degenerate).
pub fn deterministic_feature_vector(
    inst: &Instance,
) -> Result<[f64; DETERMINISTIC_FEATURE_COUNT], FeatureError> {
    let std = standardize(inst, TripodParams::default())?;
    deterministic_features(&std)
}

/// Standardizes `inst` and computes the full 40-feature vector; the eight
/// landscape features are sampled from the standard-form instance with the
/// given configuration.
///
/// # Errors
/// Propagates standardization and landscape-sampling failures.
pub fn full_feature_vector(
    inst: &Instance,
    landscape_cfg: &LandscapeConfig,
) -> Result<FeatureVector, FeatureError> {
    let std = standardize(inst, TripodParams::default())?;
    let deterministic = deterministic_features(&std)?;
    let sampled = landscape_features(&std.to_instance(inst.label()), landscape_cfg)?;

    let mut values = [0.0; FEATURE_COUNT];
    values[..DETERMINISTIC_FEATURE_COUNT].copy_from_slice(&deterministic);
    values[DETERMINISTIC_FEATURE_COUNT..].copy_from_slice(&sampled);
    Ok(FeatureVector { values })
}
