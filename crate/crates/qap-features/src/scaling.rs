//! Arctan squashing of unbounded raw feature values.

use std::f64::consts::FRAC_PI_2;

/// Squashes a raw feature value into (−1, 1): `atan(raw/γ) / (π/2)`.
///
/// γ sets the value that maps to 0.5, so it is chosen per feature to keep
/// the map near-linear over that feature's typical range; a negative γ
/// flips the orientation (used where smaller raw values mean more).
///
/// # Panics
/// γ = 0 leaves the map undefined.
pub fn scale_feature(raw: f64, gamma: f64) -> f64 {
    assert!(gamma != 0.0, "feature scaling gamma must be nonzero");
    (raw / gamma).atan() / FRAC_PI_2
}

/// [`scale_feature`] followed by clamping into the feature's documented
/// interval (values of the "wrong" sign for the chosen γ clamp to the
/// boundary).
pub fn scale_into(raw: f64, gamma: f64, lo: f64, hi: f64) -> f64 {
    scale_feature(raw, gamma).clamp(lo, hi)
}

/// The features whose reported value passes through [`scale_feature`],
/// with their γ. Everything else in the catalog is reported raw (subject
/// only to its documented bounds).
pub const SCALING_GAMMAS: [(&str, f64); 10] = [
    ("Distance Skewness", 2.0),
    ("Distance Kurtosis", 10.0),
    ("Distance Betafit Alpha", 1.0),
    ("Distance Betafit Beta", 1.0),
    ("Flow Skewness", 2.0),
    ("Flow Kurtosis", 10.0),
    ("Flow Betafit Alpha", 1.0),
    ("Flow Betafit Beta", 1.0),
    ("Instance Size", 200.0),
    ("Gilmore Lawler Bound", -50.0),
];

/// γ used by [`scale_feature`] for the named feature, if it has one.
pub fn scaling_gamma(name: &str) -> Option<f64> {
    SCALING_GAMMAS.iter().find(|(n, _)| *n == name).map(|&(_, g)| g)
}
