//! The canonical 40-feature vocabulary.
//!
//! Every feature this workspace computes is identified by one of the names
//! below, in this exact order: 12 distance-matrix features, the same 12 for
//! the flow matrix, 8 features combining both matrices, and 8 fitness
//! landscape features. Feature CSV columns, projection configs, and selector
//! configs all resolve names against this single list, so producers and
//! consumers can never disagree about which column holds which measurement.

/// Number of named features in the catalog.
pub const FEATURE_COUNT: usize = 40;

/// Index of the first fitness-landscape feature. Features at indices
/// `LANDSCAPE_START..FEATURE_COUNT` require landscape sampling and may be
/// absent from a [`crate::FeatureRow`]; everything below is deterministic.
pub const LANDSCAPE_START: usize = 32;

/// The canonical feature names, in catalog order.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    // Distance-matrix features (computed on the standard-form matrix D).
    "Distance Normalised Mean",
    "Distance Trace Proportion",
    "Distance Sparsity",
    "Distance Dominance",
    "Distance TRIPOD Score",
    "Distance Diversity",
    "Distance Outliers",
    "Distance Skewness",
    "Distance Kurtosis",
    "Distance Betafit Alpha",
    "Distance Betafit Beta",
    "Distance Near Similarity",
    // The same measurements applied to the flow matrix F.
    "Flow Normalised Mean",
    "Flow Trace Proportion",
    "Flow Sparsity",
    "Flow Dominance",
    "Flow TRIPOD Score",
    "Flow Diversity",
    "Flow Outliers",
    "Flow Skewness",
    "Flow Kurtosis",
    "Flow Betafit Alpha",
    "Flow Betafit Beta",
    "Flow Near Similarity",
    // Features combining both matrices (or neither).
    "Instance Size",
    "Maximum Symmetry",
    "Gilmore Lawler Bound",
    "Distribution Similarity",
    "Ruggedness Coefficient",
    "Least Dominance",
    "Most Dominance",
    "Improvement of Mu from One Assignment",
    // Fitness landscape features (sampled, seed-dependent).
    "Average Distance to Optima",
    "Fitness Distance Correlation",
    "Accumulated Escape Probability",
    "Base Dispersion Metric",
    "Optima Dispersion Metric",
    "Average Descent",
    "Optima Fitness Coefficient",
    "Entropy Difference",
];

/// Short name accepted as an alias for "Accumulated Escape Probability";
/// the seven-feature projection refers to the feature this way.
pub const ESCAPE_PROBABILITY_ALIAS: &str = "Escape Probability";

/// Resolves a feature name (canonical or alias) to its catalog index.
pub fn feature_index(name: &str) -> Option<usize> {
    let canonical = if name == ESCAPE_PROBABILITY_ALIAS {
        "Accumulated Escape Probability"
    } else {
        name
    };
    FEATURE_NAMES.iter().position(|&n| n == canonical)
}

/// Like [`feature_index`], but produces the catalog error (listing every
/// valid name) when the lookup fails.
pub fn resolve_feature_name(name: &str) -> Result<usize, crate::IoError> {
    feature_index(name).ok_or_else(|| crate::IoError::UnknownFeature { name: name.to_string() })
}

/// Whether the feature at `index` is a fitness-landscape feature.
pub fn is_landscape_feature(index: usize) -> bool {
    index >= LANDSCAPE_START
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_forty_distinct_names() {
        assert_eq!(FEATURE_NAMES.len(), FEATURE_COUNT);
        for (i, a) in FEATURE_NAMES.iter().enumerate() {
            for b in FEATURE_NAMES.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn every_canonical_name_resolves_to_its_own_index() {
        for (i, name) in FEATURE_NAMES.iter().enumerate() {
            assert_eq!(feature_index(name), Some(i));
        }
    }

    #[test]
    fn escape_probability_alias_resolves_to_the_accumulated_feature() {
        let index = feature_index(ESCAPE_PROBABILITY_ALIAS).unwrap();
        assert_eq!(FEATURE_NAMES[index], "Accumulated Escape Probability");
        assert!(is_landscape_feature(index));
    }

    #[test]
    fn unknown_name_is_rejected_with_the_full_vocabulary() {
        let err = resolve_feature_name("Distance Sparsityy").unwrap_err();
        let message = err.to_string();
        assert!(message.contains("Distance Sparsityy"));
        assert!(message.contains("Distance Sparsity,"));
        assert!(message.contains("Entropy Difference"));
    }

    #[test]
    fn landscape_block_is_the_last_eight_features() {
        assert_eq!(FEATURE_COUNT - LANDSCAPE_START, 8);
        assert!(!is_landscape_feature(LANDSCAPE_START - 1));
        assert!(is_landscape_feature(LANDSCAPE_START));
        assert_eq!(FEATURE_NAMES[LANDSCAPE_START], "Average Distance to Optima");
    }
}
