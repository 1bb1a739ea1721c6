//! Cubic-lattice instances with known high-quality solutions.
//!
//! Facilities and locations are both identified with the vertices of the
//! grid `{0, ..., side-1}^dim`, enumerated lexicographically. Distances
//! grow in three bands with the Manhattan distance between vertices,
//! while flows connect exactly the grid neighbours. Any grid automorphism
//! therefore maps every flow onto a short distance, so the identity
//! assignment (and each of its symmetric images) is a high-quality
//! solution by construction.

use ndarray::Array2;
use rand::Rng;

use qap_core::Instance;

use crate::error::GenError;
use crate::grid::GridStructure;
use crate::rng::{derive_rng, Stream};

/// Parameters of the cubic-lattice generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypercubeConfig {
    /// Number of grid axes (`k`).
    pub dim: u32,
    /// Vertices per axis (`l`); 2 gives the classic hypercube.
    pub side: usize,
    /// Base distance magnitude; must be even and at least 2.
    pub d0: u32,
    /// Base flow magnitude; must be even and at least 2.
    pub f0: u32,
    /// Seed for the distance and flow streams.
    pub seed: u64,
}

impl HypercubeConfig {
    pub(crate) fn validate(&self) -> Result<GridStructure, GenError> {
        if self.d0 < 2 || self.d0 % 2 != 0 {
            return Err(GenError::Config {
                reason: format!("base distance magnitude must be even and >= 2, got {}", self.d0),
            });
        }
        if self.f0 < 2 || self.f0 % 2 != 0 {
            return Err(GenError::Config {
                reason: format!("base flow magnitude must be even and >= 2, got {}", self.f0),
            });
        }
        GridStructure::cube(self.side, self.dim)
    }
}

/// Generates a cubic-lattice instance.
///
/// With Manhattan distance `h` between vertices `i != j`:
///
/// * `h == 1`: distance uniform in `{1, ..., d0}` and flow uniform in
///   `{f0+1, ..., f0 + f0/2}`;
/// * `h == 2`: distance uniform in `{2*d0 + 1, ..., 2*d0 + d0/2}`, flow 0;
/// * `h > 2`: distance uniform in `{4*d0 + 1, ..., 4*d0 + d0/2}`, flow 0.
///
/// Entries are drawn independently per ordered pair, row by row;
/// distances consume the distance stream of the seed and flows the flow
/// stream.
pub fn gen_hypercube(config: &HypercubeConfig) -> Result<Instance, GenError> {
    let grid = config.validate()?;
    let n = grid.n();
    let f0 = config.f0;

    let a = banded_grid_distances(
        &grid,
        config.d0,
        &mut derive_rng(config.seed, Stream::Distance),
    );

    let mut flow_rng = derive_rng(config.seed, Stream::Flow);
    let mut b = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i != j && grid.manhattan(i, j) == 1 {
                b[[i, j]] = flow_rng.gen_range(f0 + 1..=f0 + f0 / 2) as f64;
            }
        }
    }

    Ok(Instance::new("", a, b)?)
}

/// The three-band distance matrix over an arbitrary grid, drawn
/// row-major from `rng`. Shared with generators that pair other flow
/// structures with these distances.
pub(crate) fn banded_grid_distances(
    grid: &GridStructure,
    d0: u32,
    rng: &mut impl Rng,
) -> Array2<f64> {
    let n = grid.n();
    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            a[[i, j]] = match grid.manhattan(i, j) {
                1 => rng.gen_range(1..=d0),
                2 => rng.gen_range(2 * d0 + 1..=2 * d0 + d0 / 2),
                _ => rng.gen_range(4 * d0 + 1..=4 * d0 + d0 / 2),
            } as f64;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_bands_follow_manhattan_distance() {
        let config = HypercubeConfig { dim: 4, side: 3, d0: 20, f0: 20, seed: 11 };
        let inst = gen_hypercube(&config).unwrap();
        let grid = GridStructure::cube(3, 4).unwrap();
        for i in 0..inst.n() {
            for j in 0..inst.n() {
                let d = inst.a()[[i, j]];
                match (i == j, grid.manhattan(i, j)) {
                    (true, _) => assert_eq!(d, 0.0),
                    (false, 1) => assert!((1.0..=20.0).contains(&d)),
                    (false, 2) => assert!((41.0..=50.0).contains(&d)),
                    (false, _) => assert!((81.0..=90.0).contains(&d)),
                }
            }
        }
    }

    #[test]
    fn flows_connect_exactly_the_grid_neighbours() {
        let config = HypercubeConfig { dim: 5, side: 2, d0: 20, f0: 20, seed: 5 };
        let inst = gen_hypercube(&config).unwrap();
        let grid = GridStructure::cube(2, 5).unwrap();
        for i in 0..inst.n() {
            let nonzero: Vec<usize> =
                (0..inst.n()).filter(|&j| inst.b()[[i, j]] != 0.0).collect();
            let mut neighbours = grid.neighbors(i);
            neighbours.sort_unstable();
            let mut got = nonzero.clone();
            got.sort_unstable();
            assert_eq!(got, neighbours);
            for j in nonzero {
                assert!((21.0..=30.0).contains(&inst.b()[[i, j]]));
            }
        }
    }

    #[test]
    fn odd_magnitudes_are_rejected() {
        let config = HypercubeConfig { dim: 3, side: 2, d0: 19, f0: 20, seed: 0 };
        assert!(matches!(gen_hypercube(&config), Err(GenError::Config { .. })));
    }
}
