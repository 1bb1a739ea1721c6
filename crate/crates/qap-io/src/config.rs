//! Projection and selector configuration files.
//!
//! Both formats are line-oriented text: blank lines and `#` comments are
//! ignored, `[section]` headers open a section, and every other line belongs
//! to the section above it.
//!
//! A projection config has three sections:
//!
//! ```text
//! [features]
//! Distance Sparsity            # one catalog feature name per line
//!
//! [coefficients]
//! 0.443 -0.6851                # one "c1 c2" row per feature, same order
//!
//! [normalization]
//! Distance Sparsity: offset 0.5 scale 0.25
//! ```
//!
//! A selector config has one `[algorithm <name>]` section per algorithm
//! (exactly two), each declaring a separating hyperplane, the classifier's
//! precision, and a line mapping signed hyperplane distance to predicted
//! performance:
//!
//! ```text
//! [algorithm bma]
//! hyperplane: 1 0 3            # w1 w2 b, with sign(w.z + b) > 0 meaning "good"
//! precision: 0.9
//! confidence: slope 0 intercept 0.3
//! ```
//!
//! Declaration order matters for selectors: ties are broken toward the
//! first-listed algorithm.

use std::path::Path;

use crate::catalog::FEATURE_NAMES;
use crate::{atomic_write, resolve_feature_name, IoError};

/// A fixed linear map from named, normalized features to 2D coordinates.
///
/// Each feature is first normalized as `(value - offset) / scale`, then the
/// coordinate pair is `coefficients^T . normalized`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionModel {
    /// Canonical catalog names, one per projected feature.
    pub feature_names: Vec<String>,
    /// One `[c1, c2]` row per feature.
    pub coefficients: Vec<[f64; 2]>,
    /// One `(offset, scale)` pair per feature; scale is positive.
    pub normalization: Vec<(f64, f64)>,
}

impl ProjectionModel {
    /// Builds a model, canonicalizing aliased feature names and enforcing
    /// the shape invariants.
    pub fn new(
        feature_names: Vec<String>,
        coefficients: Vec<[f64; 2]>,
        normalization: Vec<(f64, f64)>,
    ) -> Result<Self, IoError> {
        if feature_names.is_empty() {
            return Err(IoError::Config { line: 0, reason: "no features declared".to_string() });
        }
        let mut canonical = Vec::with_capacity(feature_names.len());
        for name in &feature_names {
            let index = resolve_feature_name(name)?;
            let name = FEATURE_NAMES[index].to_string();
            if canonical.contains(&name) {
                return Err(IoError::Config {
                    line: 0,
                    reason: format!("feature {name:?} declared twice"),
                });
            }
            canonical.push(name);
        }
        if coefficients.len() != canonical.len() {
            return Err(IoError::Config {
                line: 0,
                reason: format!(
                    "{} coefficient rows for {} features",
                    coefficients.len(),
                    canonical.len()
                ),
            });
        }
        if normalization.len() != canonical.len() {
            return Err(IoError::Config {
                line: 0,
                reason: format!(
                    "{} normalization pairs for {} features",
                    normalization.len(),
                    canonical.len()
                ),
            });
        }
        for row in &coefficients {
            if !row.iter().all(|c| c.is_finite()) {
                return Err(IoError::Config {
                    line: 0,
                    reason: "coefficients must be finite".to_string(),
                });
            }
        }
        for &(offset, scale) in &normalization {
            if !offset.is_finite() || !scale.is_finite() || scale <= 0.0 {
                return Err(IoError::Config {
                    line: 0,
                    reason: "normalization needs a finite offset and a positive scale".to_string(),
                });
            }
        }
        Ok(ProjectionModel { feature_names: canonical, coefficients, normalization })
    }

    /// Number of projected features.
    pub fn k(&self) -> usize {
        self.feature_names.len()
    }
}

/// One algorithm's half of a selector: its separating hyperplane, the
/// classifier's precision, and its confidence line.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmModel {
    pub name: String,
    /// Hyperplane normal; `sign(weights . z + offset) > 0` predicts "good".
    pub weights: [f64; 2],
    pub offset: f64,
    /// Classifier precision in `[0, 1]`, used as the vote tie-breaker.
    pub precision: f64,
    /// Predicted performance at signed distance `t` is
    /// `confidence_slope * t + confidence_intercept`.
    pub confidence_slope: f64,
    pub confidence_intercept: f64,
}

impl AlgorithmModel {
    fn validate(&self) -> Result<(), IoError> {
        let norm_sq = self.weights[0] * self.weights[0] + self.weights[1] * self.weights[1];
        if !norm_sq.is_finite() || norm_sq == 0.0 {
            return Err(IoError::Config {
                line: 0,
                reason: format!("algorithm {:?} has a zero hyperplane normal", self.name),
            });
        }
        if !self.offset.is_finite() {
            return Err(IoError::Config {
                line: 0,
                reason: format!("algorithm {:?} has a non-finite hyperplane offset", self.name),
            });
        }
        if !(0.0..=1.0).contains(&self.precision) {
            return Err(IoError::Config {
                line: 0,
                reason: format!("algorithm {:?} precision must lie in [0, 1]", self.name),
            });
        }
        if !self.confidence_slope.is_finite() || !self.confidence_intercept.is_finite() {
            return Err(IoError::Config {
                line: 0,
                reason: format!("algorithm {:?} has a non-finite confidence line", self.name),
            });
        }
        Ok(())
    }
}

/// A two-algorithm selector; declaration order breaks ties.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectorModel {
    pub algorithms: Vec<AlgorithmModel>,
}

impl SelectorModel {
    /// Builds a selector from exactly two distinct algorithms.
    pub fn new(algorithms: Vec<AlgorithmModel>) -> Result<Self, IoError> {
        if algorithms.len() != 2 {
            return Err(IoError::Config {
                line: 0,
                reason: format!(
                    "selector needs exactly two algorithms, got {}",
                    algorithms.len()
                ),
            });
        }
        if algorithms[0].name == algorithms[1].name {
            return Err(IoError::Config {
                line: 0,
                reason: format!("algorithm {:?} declared twice", algorithms[0].name),
            });
        }
        for algorithm in &algorithms {
            algorithm.validate()?;
        }
        Ok(SelectorModel { algorithms })
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
    .trim()
}

fn section_name(line: &str) -> Option<&str> {
    line.strip_prefix('[').and_then(|rest| rest.strip_suffix(']')).map(str::trim)
}

fn parse_number(token: &str, line: usize, what: &str) -> Result<f64, IoError> {
    let value: f64 = token.parse().map_err(|_| IoError::Config {
        line,
        reason: format!("cannot parse {token:?} as {what}"),
    })?;
    if !value.is_finite() {
        return Err(IoError::Config { line, reason: format!("{what} must be finite") });
    }
    Ok(value)
}

/// Parses a projection config.
pub fn load_projection_model(text: &str) -> Result<ProjectionModel, IoError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Features,
        Coefficients,
        Normalization,
    }

    let mut section = Section::None;
    let mut names: Vec<String> = Vec::new();
    let mut coefficients: Vec<[f64; 2]> = Vec::new();
    // Normalization lines may appear in any order; pair them up by name.
    let mut norms: Vec<(String, f64, f64)> = Vec::new();

    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        if let Some(name) = section_name(content) {
            section = match name {
                "features" => Section::Features,
                "coefficients" => Section::Coefficients,
                "normalization" => Section::Normalization,
                other => {
                    return Err(IoError::Config {
                        line,
                        reason: format!("unknown section {other:?}"),
                    })
                }
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(IoError::Config {
                    line,
                    reason: "expected a section header".to_string(),
                })
            }
            Section::Features => {
                let index = resolve_feature_name(content)?;
                names.push(FEATURE_NAMES[index].to_string());
            }
            Section::Coefficients => {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(IoError::Config {
                        line,
                        reason: format!("expected two coefficients, got {}", tokens.len()),
                    });
                }
                coefficients.push([
                    parse_number(tokens[0], line, "a coefficient")?,
                    parse_number(tokens[1], line, "a coefficient")?,
                ]);
            }
            Section::Normalization => {
                let (name, rest) = content.split_once(':').ok_or_else(|| IoError::Config {
                    line,
                    reason: "expected \"<feature>: offset <o> scale <s>\"".to_string(),
                })?;
                let index = resolve_feature_name(name.trim())?;
                let canonical = FEATURE_NAMES[index];
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                if tokens.len() != 4 || tokens[0] != "offset" || tokens[2] != "scale" {
                    return Err(IoError::Config {
                        line,
                        reason: "expected \"<feature>: offset <o> scale <s>\"".to_string(),
                    });
                }
                let offset = parse_number(tokens[1], line, "an offset")?;
                let scale = parse_number(tokens[3], line, "a scale")?;
                if norms.iter().any(|(n, _, _)| n == canonical) {
                    return Err(IoError::Config {
                        line,
                        reason: format!("normalization for {canonical:?} declared twice"),
                    });
                }
                norms.push((canonical.to_string(), offset, scale));
            }
        }
    }

    // Line up normalization pairs with the declared feature order.
    let mut normalization = Vec::with_capacity(names.len());
    for name in &names {
        match norms.iter().find(|(n, _, _)| n == name) {
            Some(&(_, offset, scale)) => normalization.push((offset, scale)),
            None => {
                return Err(IoError::Config {
                    line: 0,
                    reason: format!("missing normalization for feature {name:?}"),
                })
            }
        }
    }
    for (name, _, _) in &norms {
        if !names.contains(name) {
            return Err(IoError::Config {
                line: 0,
                reason: format!("normalization for undeclared feature {name:?}"),
            });
        }
    }

    ProjectionModel::new(names, coefficients, normalization)
}

/// Serializes a projection config in the format [`load_projection_model`]
/// reads.
pub fn format_projection_model(model: &ProjectionModel) -> String {
    let mut out = String::new();
    out.push_str("[features]\n");
    for name in &model.feature_names {
        out.push_str(name);
        out.push('\n');
    }
    out.push_str("\n[coefficients]\n");
    for row in &model.coefficients {
        out.push_str(&format!("{} {}\n", row[0], row[1]));
    }
    out.push_str("\n[normalization]\n");
    for (name, &(offset, scale)) in model.feature_names.iter().zip(&model.normalization) {
        out.push_str(&format!("{name}: offset {offset} scale {scale}\n"));
    }
    out
}

/// Parses a selector config.
pub fn load_selector_model(text: &str) -> Result<SelectorModel, IoError> {
    struct Partial {
        name: String,
        line: usize,
        hyperplane: Option<([f64; 2], f64)>,
        precision: Option<f64>,
        confidence: Option<(f64, f64)>,
    }

    let mut partials: Vec<Partial> = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        if let Some(name) = section_name(content) {
            let algorithm = name.strip_prefix("algorithm ").map(str::trim).ok_or_else(|| {
                IoError::Config { line, reason: format!("unknown section {name:?}") }
            })?;
            if algorithm.is_empty() {
                return Err(IoError::Config {
                    line,
                    reason: "algorithm section needs a name".to_string(),
                });
            }
            partials.push(Partial {
                name: algorithm.to_string(),
                line,
                hyperplane: None,
                precision: None,
                confidence: None,
            });
            continue;
        }
        let partial = partials.last_mut().ok_or_else(|| IoError::Config {
            line,
            reason: "expected an [algorithm <name>] header".to_string(),
        })?;
        let (key, rest) = content.split_once(':').ok_or_else(|| IoError::Config {
            line,
            reason: "expected \"<key>: <values>\"".to_string(),
        })?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "hyperplane" => {
                if tokens.len() != 3 {
                    return Err(IoError::Config {
                        line,
                        reason: "hyperplane needs three numbers: w1 w2 b".to_string(),
                    });
                }
                let w1 = parse_number(tokens[0], line, "a hyperplane weight")?;
                let w2 = parse_number(tokens[1], line, "a hyperplane weight")?;
                let b = parse_number(tokens[2], line, "a hyperplane offset")?;
                partial.hyperplane = Some(([w1, w2], b));
            }
            "precision" => {
                if tokens.len() != 1 {
                    return Err(IoError::Config {
                        line,
                        reason: "precision needs one number".to_string(),
                    });
                }
                partial.precision = Some(parse_number(tokens[0], line, "a precision")?);
            }
            "confidence" => {
                if tokens.len() != 4 || tokens[0] != "slope" || tokens[2] != "intercept" {
                    return Err(IoError::Config {
                        line,
                        reason: "expected \"confidence: slope <m> intercept <c>\"".to_string(),
                    });
                }
                let slope = parse_number(tokens[1], line, "a slope")?;
                let intercept = parse_number(tokens[3], line, "an intercept")?;
                partial.confidence = Some((slope, intercept));
            }
            other => {
                return Err(IoError::Config { line, reason: format!("unknown key {other:?}") })
            }
        }
    }

    let mut algorithms = Vec::with_capacity(partials.len());
    for partial in partials {
        let (weights, offset) = partial.hyperplane.ok_or_else(|| IoError::Config {
            line: partial.line,
            reason: format!("algorithm {:?} is missing its hyperplane", partial.name),
        })?;
        let precision = partial.precision.ok_or_else(|| IoError::Config {
            line: partial.line,
            reason: format!("algorithm {:?} is missing its precision", partial.name),
        })?;
        let (confidence_slope, confidence_intercept) =
            partial.confidence.ok_or_else(|| IoError::Config {
                line: partial.line,
                reason: format!("algorithm {:?} is missing its confidence line", partial.name),
            })?;
        algorithms.push(AlgorithmModel {
            name: partial.name,
            weights,
            offset,
            precision,
            confidence_slope,
            confidence_intercept,
        });
    }
    SelectorModel::new(algorithms)
}

/// Serializes a selector config in the format [`load_selector_model`] reads.
pub fn format_selector_model(model: &SelectorModel) -> String {
    let mut out = String::new();
    for algorithm in &model.algorithms {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("[algorithm {}]\n", algorithm.name));
        out.push_str(&format!(
            "hyperplane: {} {} {}\n",
            algorithm.weights[0], algorithm.weights[1], algorithm.offset
        ));
        out.push_str(&format!("precision: {}\n", algorithm.precision));
        out.push_str(&format!(
            "confidence: slope {} intercept {}\n",
            algorithm.confidence_slope, algorithm.confidence_intercept
        ));
    }
    out
}

/// Reads and parses a projection config file.
pub fn read_projection_model_file(path: &Path) -> Result<ProjectionModel, IoError> {
    load_projection_model(&std::fs::read_to_string(path)?)
}

/// Writes a projection config file, atomically.
pub fn write_projection_model_file(path: &Path, model: &ProjectionModel) -> Result<(), IoError> {
    atomic_write(path, format_projection_model(model).as_bytes())?;
    Ok(())
}

/// Reads and parses a selector config file.
pub fn read_selector_model_file(path: &Path) -> Result<SelectorModel, IoError> {
    load_selector_model(&std::fs::read_to_string(path)?)
}

/// Writes a selector config file, atomically.
pub fn write_selector_model_file(path: &Path, model: &SelectorModel) -> Result<(), IoError> {
    atomic_write(path, format_selector_model(model).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_feature_config() -> String {
        let names = [
            "Distance Sparsity",
            "Distance TRIPOD Score",
            "Distance Betafit Alpha",
            "Distance Near Similarity",
            "Distribution Similarity",
            "Average Distance to Optima",
        ];
        let rows = [
            (0.4430, -0.6851),
            (-0.4695, 0.2124),
            (0.0509, 0.3762),
            (-0.7521, 0.1012),
            (-0.3867, -0.3110),
            (0.1125, 0.3864),
        ];
        let mut text = String::from("# six-feature projection\n[features]\n");
        for name in names {
            text.push_str(name);
            text.push('\n');
        }
        text.push_str("\n[coefficients]\n");
        for (c1, c2) in rows {
            text.push_str(&format!("{c1} {c2}\n"));
        }
        text.push_str("\n[normalization]\n");
        for name in names {
            text.push_str(&format!("{name}: offset 0 scale 1\n"));
        }
        text
    }

    #[test]
    fn projection_config_round_trips() {
        let model = load_projection_model(&six_feature_config()).unwrap();
        assert_eq!(model.k(), 6);
        assert_eq!(model.coefficients[0], [0.4430, -0.6851]);
        assert_eq!(model.normalization[5], (0.0, 1.0));
        let again = load_projection_model(&format_projection_model(&model)).unwrap();
        assert_eq!(again, model);
    }

    #[test]
    fn misspelled_feature_is_rejected_with_the_valid_names() {
        let text = six_feature_config().replace("Distance Sparsity\n", "Distance Sparsityy\n");
        let err = load_projection_model(&text).unwrap_err();
        match err {
            IoError::UnknownFeature { ref name } => assert_eq!(name, "Distance Sparsityy"),
            ref other => panic!("unexpected error: {other:?}"),
        }
        assert!(err.to_string().contains("Distance Sparsity,"));
    }

    #[test]
    fn alias_is_stored_under_its_canonical_name() {
        let text = "[features]\nEscape Probability\n\n[coefficients]\n1 0\n\n\
                    [normalization]\nEscape Probability: offset 0 scale 1\n";
        let model = load_projection_model(text).unwrap();
        assert_eq!(model.feature_names, vec!["Accumulated Escape Probability".to_string()]);
    }

    #[test]
    fn row_count_mismatch_is_a_config_error() {
        let text = six_feature_config().replace("0.1125 0.3864\n", "");
        let err = load_projection_model(&text).unwrap_err();
        match err {
            IoError::Config { reason, .. } => {
                assert_eq!(reason, "5 coefficient rows for 6 features")
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn missing_normalization_is_a_config_error() {
        let text = six_feature_config()
            .replace("Distance Sparsity: offset 0 scale 1\n", "");
        let err = load_projection_model(&text).unwrap_err();
        assert!(err.to_string().contains("missing normalization"));
    }

    fn sample_selector() -> String {
        "[algorithm bma]\n\
         hyperplane: 1 0 3\n\
         precision: 0.9\n\
         confidence: slope 0 intercept 0.3\n\
         \n\
         [algorithm mmas]\n\
         hyperplane: -1 0 0\n\
         precision: 0.8\n\
         confidence: slope -0.35 intercept 0.3\n"
            .to_string()
    }

    #[test]
    fn selector_config_round_trips() {
        let model = load_selector_model(&sample_selector()).unwrap();
        assert_eq!(model.algorithms.len(), 2);
        assert_eq!(model.algorithms[0].name, "bma");
        assert_eq!(model.algorithms[1].weights, [-1.0, 0.0]);
        assert_eq!(model.algorithms[1].confidence_slope, -0.35);
        let again = load_selector_model(&format_selector_model(&model)).unwrap();
        assert_eq!(again, model);
    }

    #[test]
    fn zero_normal_and_out_of_range_precision_are_rejected() {
        let zero = sample_selector().replace("hyperplane: 1 0 3", "hyperplane: 0 0 3");
        assert!(load_selector_model(&zero)
            .unwrap_err()
            .to_string()
            .contains("zero hyperplane normal"));
        let precision = sample_selector().replace("precision: 0.9", "precision: 1.5");
        assert!(load_selector_model(&precision)
            .unwrap_err()
            .to_string()
            .contains("must lie in [0, 1]"));
    }

    #[test]
    fn selector_needs_exactly_two_algorithms() {
        let one = "[algorithm solo]\nhyperplane: 1 0 0\nprecision: 0.5\n\
                   confidence: slope 0 intercept 0\n";
        assert!(load_selector_model(one)
            .unwrap_err()
            .to_string()
            .contains("exactly two algorithms"));
    }
}
