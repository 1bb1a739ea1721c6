//! Random sampling of the cost landscape and steepest-descent search.

use std::io::{self, Write};

use qap_core::{cost, DeltaTable, Instance, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::LandscapeError;

/// Smallest admissible sample: the 5% dispersion subsets must contain
/// at least two solutions each.
pub const MIN_SAMPLE_SIZE: usize = 40;

/// Distance between permutations used by the distance-based features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    /// Number of positions whose images disagree. The default, standard
    /// in fitness-distance studies of assignment problems.
    #[default]
    Positional,
    /// Minimum number of transpositions turning one permutation into
    /// the other.
    Cayley,
}

/// Parameters of a landscape analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeConfig {
    /// Number of random starting solutions; default 1000.
    pub sample_size: usize,
    pub seed: u64,
    pub metric: DistanceMetric,
}

impl LandscapeConfig {
    /// Default configuration: 1000 samples, positional distance.
    pub fn new(seed: u64) -> Self {
        LandscapeConfig { sample_size: 1000, seed, metric: DistanceMetric::Positional }
    }

    pub fn with_sample_size(mut self, sample_size: usize) -> Self {
        self.sample_size = sample_size;
        self
    }

    pub fn with_metric(mut self, metric: DistanceMetric) -> Self {
        self.metric = metric;
        self
    }
}

/// A local optimum found by steepest descent.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptimum {
    pub perm: Permutation,
    pub cost: f64,
    /// Number of improving swaps applied before reaching the optimum.
    pub steps: usize,
}

/// One landscape sample: random starting solutions, the local optima
/// their descents reach, and which of those optima attain the best cost
/// found ("pseudo-global" optima).
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeSample {
    pub initial: Vec<(Permutation, f64)>,
    /// `optima[k]` is the descent result from `initial[k]`.
    pub optima: Vec<LocalOptimum>,
    /// Ascending indices into `optima` whose cost matches the minimum
    /// within a 1e-9 relative tolerance.
    pub pseudo_global: Vec<usize>,
    pub seed: u64,
    pub sample_size: usize,
}

/// Applies the single best strictly improving 2-swap (ties broken by
/// lowest `(i, j)`) until no swap improves, counting the steps.
///
/// The cost decreases strictly at every step. A generous step cap (64
/// n²; observed descents stay below 2n) guards against cycling over
/// rounding-level deltas on adversarial near-tie instances.
pub fn steepest_descent(inst: &Instance, start: Permutation) -> LocalOptimum {
    let step_cap = 64 * inst.n() * inst.n();
    let mut table = DeltaTable::new(inst, start);
    let mut steps = 0;
    while let Some((i, j, _)) = table.best_improving_move() {
        if steps >= step_cap {
            break;
        }
        table.apply(i, j);
        steps += 1;
    }
    LocalOptimum { perm: table.perm().clone(), cost: table.cost(), steps }
}

/// Draws `sample_size` uniform random permutations from the seed, runs
/// steepest descent from each (concurrently; the result order follows
/// the sample order, so equal seeds give equal samples), and marks the
/// pseudo-global optima.
pub fn sample_landscape(
    inst: &Instance,
    cfg: &LandscapeConfig,
) -> Result<LandscapeSample, LandscapeError> {
    let n = inst.n();
    if n < 3 {
        return Err(LandscapeError::Config {
            reason: format!("landscape analysis needs n >= 3, got {n}"),
        });
    }
    if cfg.sample_size < MIN_SAMPLE_SIZE {
        return Err(LandscapeError::Config {
            reason: format!(
                "sample size must be at least {MIN_SAMPLE_SIZE} so the 5% subsets hold at \
                 least two solutions, got {}",
                cfg.sample_size
            ),
        });
    }

    let initial = draw_initial(inst, cfg.sample_size, cfg.seed);
    let optima: Vec<LocalOptimum> = initial
        .par_iter()
        .map(|(perm, _)| steepest_descent(inst, perm.clone()))
        .collect();

    let best = optima.iter().map(|o| o.cost).fold(f64::INFINITY, f64::min);
    let tolerance = 1e-9 * best.abs().max(1.0);
    let pseudo_global = optima
        .iter()
        .enumerate()
        .filter(|(_, o)| o.cost <= best + tolerance)
        .map(|(k, _)| k)
        .collect();

    Ok(LandscapeSample {
        initial,
        optima,
        pseudo_global,
        seed: cfg.seed,
        sample_size: cfg.sample_size,
    })
}

/// The random starting solutions of `seed`, in draw order with their
/// costs. Shared by the full analysis and the escape-only fast path so
/// both see the same sample.
pub(crate) fn draw_initial(
    inst: &Instance,
    sample_size: usize,
    seed: u64,
) -> Vec<(Permutation, f64)> {
    let n = inst.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample_size)
        .map(|_| {
            let perm = Permutation::random_with(n, |bound| rng.gen_range(0..bound));
            let c = cost(inst, &perm);
            (perm, c)
        })
        .collect()
}

/// Writes the sample for audit: one permutation (space-separated
/// images) and its cost per line, initial solutions first, then the
/// local optima.
pub fn dump_sample<W: Write>(sample: &LandscapeSample, mut out: W) -> io::Result<()> {
    let line = |out: &mut W, perm: &Permutation, cost: f64| -> io::Result<()> {
        for image in perm.as_slice() {
            write!(out, "{image} ")?;
        }
        writeln!(out, "{cost}")
    };
    writeln!(out, "# initial ({} solutions, seed {})", sample.sample_size, sample.seed)?;
    for (perm, cost) in &sample.initial {
        line(&mut out, perm, *cost)?;
    }
    writeln!(out, "# optima ({} pseudo-global)", sample.pseudo_global.len())?;
    for optimum in &sample.optima {
        line(&mut out, &optimum.perm, optimum.cost)?;
    }
    Ok(())
}
