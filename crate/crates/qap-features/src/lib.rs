//! Deterministic instance features for quadratic assignment problems.
//!
//! Everything here operates on the canonical (standard-form) matrices `D`
//! and `F` produced by `qap-core`: twelve measurements per matrix
//! ([`matrix_features`]), eight measurements of the pair
//! ([`combined_features`]), arctan squashing of unbounded raw values
//! ([`scale_feature`]), and assembly of the full 40-entry named vector
//! ([`full_feature_vector`]) with the eight sampled landscape features
//! delegated to `qap-landscape`.

mod betafit;
mod combined;
mod error;
mod lap;
mod matrix_feats;
mod scaling;
mod special;
mod vector;

pub use betafit::{fit_beta, BetaFit};
pub use combined::{
    combined_features, distribution_similarity, gilmore_lawler_bound, improvement_one_assignment,
    maximum_symmetry, ruggedness, symmetry_measure, GLBoundResult, COMBINED_FEATURE_COUNT,
    DEFAULT_IMPROVEMENT_EPSILON,
};
pub use error::FeatureError;
pub use lap::solve_lap;
pub use matrix_feats::{
    diversity, dominance, dominance_of_reduced, matrix_features, near_similarity,
    MATRIX_FEATURE_COUNT,
};
pub use scaling::{scale_feature, scale_into, scaling_gamma, SCALING_GAMMAS};
pub use vector::{
    deterministic_feature_vector, deterministic_features, full_feature_vector, FeatureVector,
    DETERMINISTIC_FEATURE_COUNT,
};
