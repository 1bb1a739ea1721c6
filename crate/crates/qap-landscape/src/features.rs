//! The eight sampled landscape features.

use qap_core::{delta_cost_swap, Instance, Permutation};
use rayon::prelude::*;

use crate::error::LandscapeError;
use crate::sample::{draw_initial, sample_landscape, DistanceMetric, LandscapeConfig, LandscapeSample, MIN_SAMPLE_SIZE};

/// Number of landscape features.
pub const LANDSCAPE_FEATURE_COUNT: usize = 8;

/// Documented interval of each feature, in output order:
/// average distance to optima, fitness distance correlation, escape
/// probability, base dispersion, optima dispersion, average descent,
/// optima fitness coefficient, entropy difference.
pub const LANDSCAPE_FEATURE_BOUNDS: [(f64, f64); LANDSCAPE_FEATURE_COUNT] = [
    (0.0, 1.0),
    (-1.0, 1.0),
    (0.0, 1.0),
    (-1.0, 1.0),
    (-1.0, 1.0),
    (0.0, 2.0),
    (-1.0, 0.0),
    (-1.0, 1.0),
];

/// Samples the landscape of `inst` and computes the eight features.
pub fn landscape_features(
    inst: &Instance,
    cfg: &LandscapeConfig,
) -> Result<[f64; LANDSCAPE_FEATURE_COUNT], LandscapeError> {
    let sample = sample_landscape(inst, cfg)?;
    Ok(features_from_sample(inst, &sample, cfg.metric))
}

/// Computes the eight features from an existing sample. Each value is
/// clamped to its documented interval.
///
/// 1. Average Distance to Optima — mean over optima of the distance to
///    the nearest pseudo-global optimum, divided by n.
/// 2. Fitness Distance Correlation — Pearson correlation between
///    optimum cost and that nearest distance; 0 when either side has
///    no variance.
/// 3. Accumulated Escape Probability — mean over the initial solutions
///    of the fraction of strictly improving 2-swap neighbors.
/// 4. Base Dispersion Metric — mean pairwise distance of the best 5%
///    of initial solutions by cost, minus that of the first 5% in draw
///    order, divided by n.
/// 5. Optima Dispersion Metric — the same contrast over the optima.
/// 6. Average Descent — mean descent step count divided by n.
/// 7. Optima Fitness Coefficient — standard deviation of the optima
///    costs over their mean; 0 when the mean vanishes (1e-12 relative).
/// 8. Entropy Difference — assignment-frequency entropy of the initial
///    sample minus that of the optima.
pub fn features_from_sample(
    inst: &Instance,
    sample: &LandscapeSample,
    metric: DistanceMetric,
) -> [f64; LANDSCAPE_FEATURE_COUNT] {
    let n = inst.n();
    let nf = n as f64;

    // Distance from each optimum to the nearest pseudo-global optimum.
    let nearest: Vec<f64> = sample
        .optima
        .iter()
        .map(|o| {
            sample
                .pseudo_global
                .iter()
                .map(|&g| distance(metric, &o.perm, &sample.optima[g].perm))
                .min()
                .expect("pseudo-global set is nonempty") as f64
        })
        .collect();
    let optima_costs: Vec<f64> = sample.optima.iter().map(|o| o.cost).collect();

    let average_distance = mean(&nearest) / nf;
    let fdc = pearson(&optima_costs, &nearest);
    let escape = escape_from_initial(inst, &sample.initial);

    let subset = sample.initial.len() / 20;
    debug_assert!(subset >= 2, "sample too small for the 5% dispersion subsets");
    let initial_perms: Vec<&Permutation> = sample.initial.iter().map(|(p, _)| p).collect();
    let initial_costs: Vec<f64> = sample.initial.iter().map(|(_, c)| *c).collect();
    let optima_perms: Vec<&Permutation> = sample.optima.iter().map(|o| &o.perm).collect();
    let base_dispersion =
        dispersion_contrast(&initial_perms, &initial_costs, subset, metric) / nf;
    let optima_dispersion =
        dispersion_contrast(&optima_perms, &optima_costs, subset, metric) / nf;

    let average_descent =
        sample.optima.iter().map(|o| o.steps as f64).sum::<f64>() / sample.optima.len() as f64 / nf;

    let cost_mean = mean(&optima_costs);
    let cost_scale = optima_costs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let fitness_coefficient = if cost_mean.abs() <= 1e-12 * cost_scale.max(1.0) {
        0.0
    } else {
        population_stddev(&optima_costs, cost_mean) / cost_mean
    };

    let entropy_difference =
        assignment_entropy(initial_perms.iter().copied(), n)
            - assignment_entropy(optima_perms.iter().copied(), n);

    let raw = [
        average_distance,
        fdc,
        escape,
        base_dispersion,
        optima_dispersion,
        average_descent,
        fitness_coefficient,
        entropy_difference,
    ];
    let mut out = [0.0; LANDSCAPE_FEATURE_COUNT];
    for (slot, (value, (lo, hi))) in out.iter_mut().zip(raw.into_iter().zip(LANDSCAPE_FEATURE_BOUNDS)) {
        *slot = value.clamp(lo, hi);
    }
    out
}

/// Escape-probability-only fast path: draws the same initial sample as
/// the full analysis for this seed but skips every descent. The result
/// equals feature 3 of [`landscape_features`] exactly.
pub fn escape_probability(
    inst: &Instance,
    sample_size: usize,
    seed: u64,
) -> Result<f64, LandscapeError> {
    if inst.n() < 3 {
        return Err(LandscapeError::Config {
            reason: format!("landscape analysis needs n >= 3, got {}", inst.n()),
        });
    }
    if sample_size < MIN_SAMPLE_SIZE {
        return Err(LandscapeError::Config {
            reason: format!(
                "sample size must be at least {MIN_SAMPLE_SIZE}, got {sample_size}"
            ),
        });
    }
    let initial = draw_initial(inst, sample_size, seed);
    Ok(escape_from_initial(inst, &initial).clamp(0.0, 1.0))
}

fn escape_from_initial(inst: &Instance, initial: &[(Permutation, f64)]) -> f64 {
    let fractions: Vec<f64> = initial
        .par_iter()
        .map(|(perm, _)| improving_fraction(inst, perm))
        .collect();
    mean(&fractions)
}

/// Fraction of the n(n-1)/2 2-swap neighbors that strictly improve.
fn improving_fraction(inst: &Instance, perm: &Permutation) -> f64 {
    let n = inst.n();
    let mut improving = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if delta_cost_swap(inst, perm, i, j) < 0.0 {
                improving += 1;
            }
        }
    }
    improving as f64 / (n * (n - 1) / 2) as f64
}

fn distance(metric: DistanceMetric, a: &Permutation, b: &Permutation) -> usize {
    match metric {
        DistanceMetric::Positional => a.positional_distance(b),
        DistanceMetric::Cayley => a.cayley_distance(b),
    }
}

/// Mean pairwise distance of the `subset` cheapest solutions minus that
/// of the first `subset` solutions in sample order.
fn dispersion_contrast(
    perms: &[&Permutation],
    costs: &[f64],
    subset: usize,
    metric: DistanceMetric,
) -> f64 {
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_unstable_by(|&x, &y| {
        costs[x].partial_cmp(&costs[y]).expect("costs are finite").then(x.cmp(&y))
    });
    let best: Vec<&Permutation> = order[..subset].iter().map(|&k| perms[k]).collect();
    mean_pairwise_distance(&best, metric) - mean_pairwise_distance(&perms[..subset], metric)
}

fn mean_pairwise_distance(perms: &[&Permutation], metric: DistanceMetric) -> f64 {
    let m = perms.len();
    let mut total = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            total += distance(metric, perms[i], perms[j]) as f64;
        }
    }
    total / (m * (m - 1) / 2) as f64
}

/// Assignment-frequency entropy
/// `e = -(1/(n ln n)) Σ_{i,j} q_ij ln q_ij` with `q_ij` the fraction of
/// solutions assigning facility i to location j (and `0 ln 0 = 0`).
/// Lies in [0, 1]: 0 when all permutations agree, 1 when every
/// assignment is equally frequent.
pub(crate) fn assignment_entropy<'a>(
    perms: impl Iterator<Item = &'a Permutation>,
    n: usize,
) -> f64 {
    let mut counts = vec![0usize; n * n];
    let mut total = 0usize;
    for perm in perms {
        total += 1;
        for i in 0..n {
            counts[i * n + perm.image(i)] += 1;
        }
    }
    let t = total as f64;
    let mut entropy = 0.0;
    for &c in &counts {
        if c > 0 {
            let q = c as f64 / t;
            entropy -= q * q.ln();
        }
    }
    entropy / (n as f64 * (n as f64).ln())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn population_stddev(values: &[f64], mean: f64) -> f64 {
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Pearson correlation; 0 when either side's variance vanishes (1e-9
/// relative on the standard deviation).
fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let count = x.len() as f64;
    let mx = mean(x);
    let my = mean(y);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let scale_x = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale_y = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sxx <= 1e-18 * count * scale_x * scale_x || syy <= 1e-18 * count * scale_y * scale_y {
        return 0.0;
    }
    (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use ndarray::Array2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Array2::from_shape_fn((n, n), |_| rng.gen_range(0..100) as f64);
        let b = Array2::from_shape_fn((n, n), |_| rng.gen_range(0..100) as f64);
        Instance::new("rand", a, b).unwrap()
    }

    #[test]
    fn entropy_is_zero_for_identical_permutations_and_one_for_cyclic_shifts() {
        let n = 5;
        let same: Vec<Permutation> = (0..40).map(|_| Permutation::identity(n)).collect();
        assert_eq!(assignment_entropy(same.iter(), n), 0.0);

        // The n cyclic shifts hit every (facility, location) cell
        // exactly once: q_ij = 1/n everywhere, the uniform maximum.
        let shifts: Vec<Permutation> = (0..n)
            .map(|s| Permutation::from_images((0..n).map(|i| (i + s) % n).collect()).unwrap())
            .collect();
        assert_relative_eq!(assignment_entropy(shifts.iter(), n), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn constant_landscape_zeroes_every_feature() {
        // A = B = J - I: all permutations cost the same, so descents
        // stop immediately, optima equal their starts, and every
        // contrast degenerates.
        let n = 5;
        let m = Array2::from_shape_fn((n, n), |(i, j)| if i == j { 0.0 } else { 1.0 });
        let inst = Instance::new("flat", m.clone(), m).unwrap();
        let features =
            landscape_features(&inst, &LandscapeConfig::new(11).with_sample_size(40)).unwrap();
        for (k, v) in features.iter().enumerate() {
            assert_eq!(*v, 0.0, "feature {k} nonzero on a constant landscape");
        }
    }

    #[test]
    fn fdc_matches_a_direct_recomputation_from_the_stored_sample() {
        let inst = random_instance(6, 31);
        let cfg = LandscapeConfig::new(4).with_sample_size(50);
        let sample = sample_landscape(&inst, &cfg).unwrap();
        let features = features_from_sample(&inst, &sample, cfg.metric);

        let nearest: Vec<f64> = sample
            .optima
            .iter()
            .map(|o| {
                sample
                    .pseudo_global
                    .iter()
                    .map(|&g| o.perm.positional_distance(&sample.optima[g].perm))
                    .min()
                    .unwrap() as f64
            })
            .collect();
        let costs: Vec<f64> = sample.optima.iter().map(|o| o.cost).collect();
        assert_relative_eq!(features[1], pearson(&costs, &nearest), epsilon = 1e-12);
    }

    #[test]
    fn escape_fast_path_equals_the_full_run() {
        let inst = random_instance(7, 12);
        let cfg = LandscapeConfig::new(21).with_sample_size(40);
        let features = landscape_features(&inst, &cfg).unwrap();
        let fast = escape_probability(&inst, 40, 21).unwrap();
        assert_eq!(features[2], fast);
    }

    #[test]
    fn features_respect_their_documented_intervals() {
        for seed in 0..5 {
            let inst = random_instance(8, seed);
            let features =
                landscape_features(&inst, &LandscapeConfig::new(seed).with_sample_size(40))
                    .unwrap();
            for (k, (&v, (lo, hi))) in features.iter().zip(LANDSCAPE_FEATURE_BOUNDS).enumerate() {
                assert!(v.is_finite(), "feature {k} not finite");
                assert!((lo..=hi).contains(&v), "feature {k} = {v} outside [{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn cayley_metric_changes_the_distance_features_only() {
        let inst = random_instance(7, 77);
        let cfg = LandscapeConfig::new(5).with_sample_size(40);
        let positional = landscape_features(&inst, &cfg).unwrap();
        let cayley =
            landscape_features(&inst, &cfg.with_metric(DistanceMetric::Cayley)).unwrap();
        // Escape (2), descent (5), coefficient (6), entropy (7) ignore
        // the metric.
        for k in [2, 5, 6, 7] {
            assert_eq!(positional[k], cayley[k], "feature {k} should not depend on the metric");
        }
        assert_ne!(positional[0], cayley[0]);
    }
}
