//! Real-like clustered instances with an optional distance tilt.
//!
//! Locations are points placed in random clusters inside a disk:
//! cluster centres are uniform over a disk of radius `overall_radius`,
//! each cluster holds a uniform random number of points up to
//! `max_cluster_size`, and the points are uniform over a disk of radius
//! `cluster_radius` around their centre. Distances are rounded-up
//! Euclidean distances, optionally tilted so that travelling in the
//! positive x direction ("uphill") costs more than the return trip.
//! Flows are log-uniform magnitudes, producing the few-large-many-small
//! pattern typical of real-world flow data.

use ndarray::Array2;
use rand::Rng;

use qap_core::Instance;

use crate::error::{GenError, MAX_GENERATED_SIZE};
use crate::rng::{derive_rng, Stream};

/// Parameters of the clustered real-like generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaiBParams {
    /// Radius of the disk holding the cluster centres (`M`).
    pub overall_radius: f64,
    /// Radius of each cluster around its centre (`m`).
    pub cluster_radius: f64,
    /// Largest number of points a single cluster may hold (`K`).
    pub max_cluster_size: usize,
    /// Smallest base-10 exponent of the flow magnitudes (`A`).
    pub flow_exponent_min: f64,
    /// Largest base-10 exponent of the flow magnitudes (`B`).
    pub flow_exponent_max: f64,
}

impl TaiBParams {
    /// Draws a parameter set the way batches of these instances are
    /// configured: `m` uniform on [10, 100], `K = ceil(n / u)` with `u`
    /// uniform on [2, 15], `A` uniform on [-15, 0], `B = 5`, `M = 1000`.
    pub fn sample(n: usize, rng: &mut impl Rng) -> Self {
        let cluster_radius = rng.gen_range(10.0..=100.0);
        let divisor: f64 = rng.gen_range(2.0..=15.0);
        let max_cluster_size = (n as f64 / divisor).ceil() as usize;
        let flow_exponent_min = rng.gen_range(-15.0..=0.0);
        TaiBParams {
            overall_radius: 1000.0,
            cluster_radius,
            max_cluster_size: max_cluster_size.max(1),
            flow_exponent_min,
            flow_exponent_max: 5.0,
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        let finite = self.overall_radius.is_finite()
            && self.cluster_radius.is_finite()
            && self.flow_exponent_min.is_finite()
            && self.flow_exponent_max.is_finite();
        if !finite
            || self.overall_radius <= 0.0
            || self.cluster_radius <= 0.0
            || self.max_cluster_size < 1
            || self.flow_exponent_max < self.flow_exponent_min
        {
            return Err(GenError::Config {
                reason: "cluster parameters must be finite, radii positive, max cluster size \
                         >= 1, and the exponent range non-empty"
                    .to_string(),
            });
        }
        Ok(())
    }
}

/// Uniform point in the disk of radius `radius` around `center`.
fn disk_point(center: (f64, f64), radius: f64, rng: &mut impl Rng) -> (f64, f64) {
    let r = radius * rng.gen_range(0.0..1.0f64).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    (center.0 + r * theta.cos(), center.1 + r * theta.sin())
}

/// Places the `n` clustered points, consuming the structure stream.
pub(crate) fn place_points(n: usize, params: &TaiBParams, rng: &mut impl Rng) -> Vec<(f64, f64)> {
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let center = disk_point((0.0, 0.0), params.overall_radius, rng);
        let size = rng.gen_range(1..=params.max_cluster_size).min(n - points.len());
        for _ in 0..size {
            points.push(disk_point(center, params.cluster_radius, rng));
        }
    }
    points
}

/// Generates a clustered real-like instance.
///
/// Point placement consumes the structure stream of `seed` (cluster by
/// cluster: centre, size, then the member points). Distances follow
///
/// * `d_ij = ceil(sqrt((1+t) * dx^2 + dy^2))` when `x_i > x_j`,
/// * `d_ij = ceil(sqrt((1-t) * dx^2 + dy^2))` otherwise,
///
/// so `t = 0` gives symmetric rounded-up Euclidean distances. Flows are
/// `floor(10^(A + (B-A)u))` with `u` uniform on [0, 1), drawn per
/// ordered pair in row-major order from the flow stream.
pub fn gen_tai_b(
    n: usize,
    params: &TaiBParams,
    tilt: f64,
    seed: u64,
) -> Result<Instance, GenError> {
    if n < 2 {
        return Err(GenError::Config {
            reason: format!("clustered generator needs n >= 2, got {n}"),
        });
    }
    if n > MAX_GENERATED_SIZE {
        return Err(GenError::TooLarge { n, max: MAX_GENERATED_SIZE });
    }
    if !tilt.is_finite() || !(0.0..1.0).contains(&tilt) {
        return Err(GenError::Config {
            reason: format!("tilt must lie in [0, 1), got {tilt}"),
        });
    }
    params.validate()?;

    let points = place_points(n, params, &mut derive_rng(seed, Stream::Structure));

    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            let stretch = if points[i].0 > points[j].0 { 1.0 + tilt } else { 1.0 - tilt };
            a[[i, j]] = (stretch * dx * dx + dy * dy).sqrt().ceil();
        }
    }

    let mut flow_rng = derive_rng(seed, Stream::Flow);
    let (lo, hi) = (params.flow_exponent_min, params.flow_exponent_max);
    let mut b = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let u: f64 = flow_rng.gen_range(0.0..1.0);
                b[[i, j]] = 10f64.powf(lo + (hi - lo) * u).floor();
            }
        }
    }

    Ok(Instance::new("", a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_params(n: usize) -> TaiBParams {
        TaiBParams {
            overall_radius: 1000.0,
            cluster_radius: 50.0,
            max_cluster_size: n / 4 + 1,
            flow_exponent_min: -8.0,
            flow_exponent_max: 5.0,
        }
    }

    #[test]
    fn zero_tilt_gives_a_symmetric_distance_matrix() {
        let inst = gen_tai_b(30, &default_params(30), 0.0, 21).unwrap();
        for i in 0..30 {
            assert_eq!(inst.a()[[i, i]], 0.0);
            for j in 0..30 {
                assert_eq!(inst.a()[[i, j]], inst.a()[[j, i]]);
            }
        }
    }

    #[test]
    fn tilt_raises_the_uphill_direction() {
        let params = default_params(25);
        let seed = 4;
        let inst = gen_tai_b(25, &params, 0.2, seed).unwrap();
        let points = place_points(25, &params, &mut derive_rng(seed, Stream::Structure));
        for i in 0..25 {
            for j in 0..25 {
                if points[i].0 > points[j].0 {
                    assert!(inst.a()[[i, j]] >= inst.a()[[j, i]]);
                }
            }
        }
    }

    #[test]
    fn flows_are_nonnegative_integers_below_the_exponent_cap() {
        let inst = gen_tai_b(30, &default_params(30), 0.0, 8).unwrap();
        let mut zeros = 0;
        for i in 0..30 {
            assert_eq!(inst.b()[[i, i]], 0.0);
            for j in 0..30 {
                let f = inst.b()[[i, j]];
                assert!((0.0..1e5).contains(&f) && f.fract() == 0.0);
                if f == 0.0 {
                    zeros += 1;
                }
            }
        }
        // With exponents spanning [-8, 5], a large share of magnitudes
        // round down to zero — the hallmark of this flow distribution.
        assert!(zeros > 30 * 30 / 4, "expected many zero flows, got {zeros}");
    }

    #[test]
    fn sampled_parameters_stay_in_their_documented_ranges() {
        let mut rng = derive_rng(99, Stream::Structure);
        for _ in 0..50 {
            let p = TaiBParams::sample(80, &mut rng);
            assert_eq!(p.overall_radius, 1000.0);
            assert!((10.0..=100.0).contains(&p.cluster_radius));
            assert!((1..=40).contains(&p.max_cluster_size));
            assert!((-15.0..=0.0).contains(&p.flow_exponent_min));
            assert_eq!(p.flow_exponent_max, 5.0);
        }
    }

    #[test]
    fn bad_tilts_are_rejected() {
        let params = default_params(10);
        assert!(matches!(gen_tai_b(10, &params, 1.0, 0), Err(GenError::Config { .. })));
        assert!(matches!(gen_tai_b(10, &params, -0.1, 0), Err(GenError::Config { .. })));
    }

    #[test]
    fn same_seed_reproduces_the_instance() {
        let params = default_params(20);
        let one = gen_tai_b(20, &params, 0.15, 123).unwrap();
        let two = gen_tai_b(20, &params, 0.15, 123).unwrap();
        assert_eq!(one.a(), two.a());
        assert_eq!(one.b(), two.b());
    }
}
