//! The standardized relative performance measure.

use crate::error::SolveError;

/// perf values at or below this count as "good" performance.
pub const PERF_GOOD_THRESHOLD: f64 = 1.0;

/// Fewer runs than this for any algorithm marks the record unusable (the
/// measure is meant for complete run blocks).
pub const MIN_RUNS_PER_ALGORITHM: usize = 10;

/// Cost lists for one algorithm on one instance.
#[derive(Debug, Clone)]
pub struct AlgorithmRuns {
    pub algorithm: String,
    pub costs: Vec<f64>,
}

impl AlgorithmRuns {
    pub fn new(algorithm: impl Into<String>, costs: Vec<f64>) -> Self {
        AlgorithmRuns { algorithm: algorithm.into(), costs }
    }
}

/// Standardized comparison of algorithms on one instance:
/// `perf(A) = (μ_A − min_B μ_B) / σ` with σ the population stddev of the
/// pooled runs, or 0 for every algorithm when σ = 0.
#[derive(Debug, Clone)]
pub struct PerformanceRecord {
    pub instance: String,
    /// Mean best cost per algorithm, in input order.
    pub means: Vec<(String, f64)>,
    /// Population stddev over the combined run set.
    pub pooled_stddev: f64,
    /// perf value per algorithm, in input order; the best algorithm(s)
    /// score exactly 0.
    pub perf: Vec<(String, f64)>,
    /// perf(second algorithm) − perf(first algorithm); only defined for
    /// two-algorithm records. Positive means the first algorithm wins.
    pub algperf: Option<f64>,
    /// False when some algorithm has fewer than
    /// [`MIN_RUNS_PER_ALGORITHM`] runs.
    pub usable: bool,
}

/// Whether a perf value counts as good (within one pooled stddev of the
/// best algorithm's mean).
pub fn is_good_perf(perf: f64) -> bool {
    perf <= PERF_GOOD_THRESHOLD
}

/// Computes the performance record for one instance from per-algorithm run
/// costs.
///
/// # Errors
/// No algorithms, or an algorithm with no runs at all.
pub fn perf_measure(
    instance: impl Into<String>,
    runs: &[AlgorithmRuns],
) -> Result<PerformanceRecord, SolveError> {
    if runs.is_empty() {
        return Err(SolveError::Data { reason: "no algorithms to compare".to_string() });
    }
    for r in runs {
        if r.costs.is_empty() {
            return Err(SolveError::Data {
                reason: format!("algorithm {:?} has no runs", r.algorithm),
            });
        }
    }

    let means: Vec<(String, f64)> = runs
        .iter()
        .map(|r| {
            (r.algorithm.clone(), r.costs.iter().sum::<f64>() / r.costs.len() as f64)
        })
        .collect();

    let pooled: Vec<f64> = runs.iter().flat_map(|r| r.costs.iter().copied()).collect();
    let count = pooled.len() as f64;
    let pooled_mean = pooled.iter().sum::<f64>() / count;
    let variance =
        pooled.iter().map(|&c| (c - pooled_mean) * (c - pooled_mean)).sum::<f64>() / count;
    let pooled_stddev = variance.sqrt();

    let best_mean = means.iter().map(|&(_, m)| m).fold(f64::INFINITY, f64::min);
    let perf: Vec<(String, f64)> = means
        .iter()
        .map(|(name, m)| {
            let p = if pooled_stddev > 0.0 { (m - best_mean) / pooled_stddev } else { 0.0 };
            (name.clone(), p)
        })
        .collect();

    let algperf = match perf.as_slice() {
        [(_, first), (_, second)] => Some(second - first),
        _ => None,
    };
    let usable = runs.iter().all(|r| r.costs.len() >= MIN_RUNS_PER_ALGORITHM);

    Ok(PerformanceRecord {
        instance: instance.into(),
        means,
        pooled_stddev,
        perf,
        algperf,
        usable,
    })
}
