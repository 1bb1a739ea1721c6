//! Real-like distance and flow matrix generators in the style of the
//! classic clustered-Euclidean / grid benchmark families.
//!
//! Distances come in two flavours: points grouped in square clusters on
//! a 1000x1000 plane with rounded-up Euclidean distances, or the exact
//! Manhattan metric on a rectangular grid. Flows are log-uniform
//! magnitudes that are either sparsified at random, restricted to pairs
//! of nearby locations ("structured"), or structured plus a small
//! probability of extra long-range flows. Distance and flow generation
//! are independent, so any flow kind can be paired with any distance
//! matrix.

use ndarray::Array2;
use rand::Rng;

use crate::error::{GenError, MAX_GENERATED_SIZE};
use crate::grid::GridStructure;
use crate::rng::{derive_rng, Stream};

/// Side length of the square plane the Euclidean clusters live on.
const PLANE_SIDE: f64 = 1000.0;

/// Distance-matrix flavours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SfDistanceKind {
    /// Points in square clusters: cluster centres uniform on the plane,
    /// up to `max_cluster_size` points per cluster, each uniform in an
    /// axis-aligned square of side `cluster_width` around the centre.
    EuclideanClusters { max_cluster_size: usize, cluster_width: f64 },
    /// Manhattan distance on a `width`-column rectangular grid.
    ManhattanGrid { width: usize },
}

impl SfDistanceKind {
    /// Draws a clustered-Euclidean configuration the way instance
    /// batches are set up: `K = ceil(n / u)` with `u` uniform on
    /// [2, 15] and cluster width uniform on [20, 50].
    pub fn sample_euclidean(n: usize, rng: &mut impl Rng) -> Self {
        let divisor: f64 = rng.gen_range(2.0..=15.0);
        SfDistanceKind::EuclideanClusters {
            max_cluster_size: ((n as f64 / divisor).ceil() as usize).max(1),
            cluster_width: rng.gen_range(20.0..=50.0),
        }
    }

    /// Draws a grid configuration: width 4 or 10 with equal probability.
    pub fn sample_manhattan(rng: &mut impl Rng) -> Self {
        SfDistanceKind::ManhattanGrid { width: if rng.gen_bool(0.5) { 4 } else { 10 } }
    }
}

/// Flow-matrix flavours. All magnitudes are `floor(a^(x*b))` with
/// `a = 100^(1/b)` and `x` uniform on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SfFlowKind {
    /// Every ordered pair is zero with probability `sparsity`, else a
    /// random magnitude.
    Random { exponent: f64, sparsity: f64 },
    /// Only pairs whose distance is at most `threshold` get a magnitude.
    Structured { exponent: f64, threshold: f64 },
    /// Structured, plus each remaining pair gets a magnitude with
    /// probability `extra_probability`.
    StructuredPlus { exponent: f64, threshold: f64, extra_probability: f64 },
}

impl SfFlowKind {
    /// Draws the random-flow configuration: `b` uniform on [1, 7] and
    /// sparsity uniform on [0.6, 0.8].
    pub fn sample_random(rng: &mut impl Rng) -> Self {
        SfFlowKind::Random {
            exponent: rng.gen_range(1.0..=7.0),
            sparsity: rng.gen_range(0.6..=0.8),
        }
    }

    /// Draws the structured configuration: threshold uniform on
    /// [10, 50], exponent as in [`SfFlowKind::sample_random`].
    pub fn sample_structured(rng: &mut impl Rng) -> Self {
        SfFlowKind::Structured {
            exponent: rng.gen_range(1.0..=7.0),
            threshold: rng.gen_range(10.0..=50.0),
        }
    }

    /// Structured configuration plus the fixed 5% extra-flow rate.
    pub fn sample_structured_plus(rng: &mut impl Rng) -> Self {
        SfFlowKind::StructuredPlus {
            exponent: rng.gen_range(1.0..=7.0),
            threshold: rng.gen_range(10.0..=50.0),
            extra_probability: 0.05,
        }
    }
}

/// Generates a distance matrix of the requested kind.
///
/// Clustered-Euclidean placement consumes the structure stream of
/// `seed` (cluster by cluster: centre, size, member points); the grid
/// variant is deterministic.
pub fn gen_sf_distance(
    kind: &SfDistanceKind,
    n: usize,
    seed: u64,
) -> Result<Array2<f64>, GenError> {
    if n < 2 {
        return Err(GenError::Config {
            reason: format!("distance generator needs n >= 2, got {n}"),
        });
    }
    if n > MAX_GENERATED_SIZE {
        return Err(GenError::TooLarge { n, max: MAX_GENERATED_SIZE });
    }
    match *kind {
        SfDistanceKind::EuclideanClusters { max_cluster_size, cluster_width } => {
            if max_cluster_size < 1 || !cluster_width.is_finite() || cluster_width <= 0.0 {
                return Err(GenError::Config {
                    reason: "cluster size must be >= 1 and cluster width positive".to_string(),
                });
            }
            let mut rng = derive_rng(seed, Stream::Structure);
            let mut points = Vec::with_capacity(n);
            while points.len() < n {
                let center =
                    (rng.gen_range(0.0..=PLANE_SIDE), rng.gen_range(0.0..=PLANE_SIDE));
                let size = rng.gen_range(1..=max_cluster_size).min(n - points.len());
                let half = cluster_width / 2.0;
                for _ in 0..size {
                    points.push((
                        center.0 + rng.gen_range(-half..=half),
                        center.1 + rng.gen_range(-half..=half),
                    ));
                }
            }
            let mut d = Array2::zeros((n, n));
            for i in 0..n {
                for j in (i + 1)..n {
                    let dx = points[i].0 - points[j].0;
                    let dy = points[i].1 - points[j].1;
                    let dist = (dx * dx + dy * dy).sqrt().ceil();
                    d[[i, j]] = dist;
                    d[[j, i]] = dist;
                }
            }
            Ok(d)
        }
        SfDistanceKind::ManhattanGrid { width } => {
            if width < 2 || n % width != 0 {
                return Err(GenError::Config {
                    reason: format!("grid width {width} must be >= 2 and divide n = {n}"),
                });
            }
            let grid = GridStructure::rectangle(n / width, width)?;
            let mut d = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    d[[i, j]] = grid.manhattan(i, j) as f64;
                }
            }
            Ok(d)
        }
    }
}

fn magnitude(exponent: f64, rng: &mut impl Rng) -> f64 {
    let a = 100f64.powf(1.0 / exponent);
    let x: f64 = rng.gen_range(0.0..=1.0);
    a.powf(x * exponent).floor()
}

/// Generates a flow matrix of the requested kind to pair with
/// `distance`.
///
/// Sparsity/extra-flow coin flips and magnitudes both come from the
/// flow stream of `seed`, pair by pair in row-major order (coin first,
/// magnitude only when the pair keeps a flow). If a structured kind
/// produces an all-zero matrix, the threshold is redrawn once uniformly
/// from [10, 50] using the parameter stream; a second all-zero outcome
/// is reported as an error.
pub fn gen_sf_flow(
    kind: &SfFlowKind,
    distance: &Array2<f64>,
    seed: u64,
) -> Result<Array2<f64>, GenError> {
    let n = distance.nrows();
    if distance.ncols() != n || n < 2 {
        return Err(GenError::Config {
            reason: "flow generator needs a square distance matrix with n >= 2".to_string(),
        });
    }
    let exponent = match *kind {
        SfFlowKind::Random { exponent, .. }
        | SfFlowKind::Structured { exponent, .. }
        | SfFlowKind::StructuredPlus { exponent, .. } => exponent,
    };
    if !(1.0..=7.0).contains(&exponent) {
        return Err(GenError::Config {
            reason: format!("flow exponent must lie in [1, 7], got {exponent}"),
        });
    }

    match *kind {
        SfFlowKind::Random { sparsity, .. } => {
            if !(0.0..=1.0).contains(&sparsity) {
                return Err(GenError::Config {
                    reason: format!("sparsity must lie in [0, 1], got {sparsity}"),
                });
            }
            let mut rng = derive_rng(seed, Stream::Flow);
            let mut f = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    if i != j && !rng.gen_bool(sparsity) {
                        f[[i, j]] = magnitude(exponent, &mut rng);
                    }
                }
            }
            Ok(f)
        }
        SfFlowKind::Structured { threshold, .. } => {
            structured_flows(distance, exponent, threshold, 0.0, seed)
        }
        SfFlowKind::StructuredPlus { threshold, extra_probability, .. } => {
            if !(0.0..=1.0).contains(&extra_probability) {
                return Err(GenError::Config {
                    reason: format!(
                        "extra flow probability must lie in [0, 1], got {extra_probability}"
                    ),
                });
            }
            structured_flows(distance, exponent, threshold, extra_probability, seed)
        }
    }
}

fn structured_flows(
    distance: &Array2<f64>,
    exponent: f64,
    threshold: f64,
    extra_probability: f64,
    seed: u64,
) -> Result<Array2<f64>, GenError> {
    let n = distance.nrows();
    let fill = |threshold: f64, rng: &mut rand_chacha::ChaCha8Rng| {
        let mut f = Array2::zeros((n, n));
        let mut nonzero = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let keep = distance[[i, j]] <= threshold
                    || (extra_probability > 0.0 && rng.gen_bool(extra_probability));
                if keep {
                    f[[i, j]] = magnitude(exponent, rng);
                    nonzero = nonzero || f[[i, j]] != 0.0;
                }
            }
        }
        (f, nonzero)
    };

    if !threshold.is_finite() || threshold < 0.0 {
        return Err(GenError::Config {
            reason: format!("flow distance threshold must be non-negative, got {threshold}"),
        });
    }
    let (f, nonzero) = fill(threshold, &mut derive_rng(seed, Stream::Flow));
    if nonzero {
        return Ok(f);
    }
    // The drawn threshold may fall below every off-diagonal distance;
    // redraw it once before giving up.
    let retry_threshold = derive_rng(seed, Stream::Params).gen_range(10.0..=50.0);
    let (f, nonzero) = fill(retry_threshold, &mut derive_rng(seed, Stream::Flow));
    if nonzero {
        Ok(f)
    } else {
        Err(GenError::EmptyFlows { threshold: retry_threshold })
    }
}
