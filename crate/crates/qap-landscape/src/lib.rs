//! Random-sampling fitness-landscape analysis for assignment problems.
//!
//! The pipeline draws a seeded sample of random solutions, runs a
//! steepest-descent local search from each to a 2-swap local optimum,
//! marks the best optima found ("pseudo-global" optima), and condenses
//! the lot into eight reproducible features: distance structure around
//! the best optima, fitness-distance correlation, the chance a random
//! solution improves with one swap, dispersion contrasts, descent
//! length, optima cost spread, and the entropy drop from sample to
//! optima.
//!
//! Everything is deterministic in `(instance, sample_size, seed)`:
//! descents run concurrently but aggregate in sample order. The
//! escape-probability feature only looks at the initial sample, so
//! [`escape_probability`] offers a descent-free fast path for callers
//! that need nothing else (for example an evolutionary loop scoring
//! thousands of candidate instances).

pub mod error;
pub mod features;
pub mod sample;

pub use error::LandscapeError;
pub use features::{
    escape_probability, features_from_sample, landscape_features, LANDSCAPE_FEATURE_BOUNDS,
    LANDSCAPE_FEATURE_COUNT,
};
pub use sample::{
    dump_sample, sample_landscape, steepest_descent, DistanceMetric, LandscapeConfig,
    LandscapeSample, LocalOptimum, MIN_SAMPLE_SIZE,
};
