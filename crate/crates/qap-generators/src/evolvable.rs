//! Parameterized flow generator designed for evolutionary search.
//!
//! The generator builds a flow matrix from five scalar knobs so that
//! *every* knob setting yields a usable, non-degenerate matrix: the
//! facilities are partitioned into clusters, each cluster receives a
//! guaranteed-connected graph of strong flows, and optional one-way
//! noise flows sprinkle weak links across cluster boundaries. Because
//! the knobs map continuously onto matrix structure, an outer search
//! loop can evolve them toward instances with desired properties.

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{GenError, MAX_GENERATED_SIZE};
use crate::rng::{derive_rng, Stream};

/// Validated configuration of the evolvable flow generator.
///
/// Constructed through [`EvolvableFlowConfig::new`] or
/// [`map_raw_params`], which enforce every parameter range, so
/// generation itself cannot fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvableFlowConfig {
    n: usize,
    clusters: usize,
    density: f64,
    max_flow: u32,
    noise_rate: f64,
    noise_max: u32,
    seed: u64,
}

impl EvolvableFlowConfig {
    /// Validates and builds a configuration.
    ///
    /// Ranges: `n >= 2`; `clusters` in `1..=ceil(n/2)`; `density` in
    /// [0, 1]; `max_flow` in 110..=1100; `noise_rate` in [0, 0.1];
    /// `noise_max` in 1..=100.
    pub fn new(
        n: usize,
        clusters: usize,
        density: f64,
        max_flow: u32,
        noise_rate: f64,
        noise_max: u32,
        seed: u64,
    ) -> Result<Self, GenError> {
        if n < 2 {
            return Err(GenError::Config {
                reason: format!("flow generator needs n >= 2, got {n}"),
            });
        }
        if n > MAX_GENERATED_SIZE {
            return Err(GenError::TooLarge { n, max: MAX_GENERATED_SIZE });
        }
        let cluster_cap = n.div_ceil(2);
        if clusters < 1 || clusters > cluster_cap {
            return Err(GenError::Config {
                reason: format!("cluster count must lie in 1..={cluster_cap}, got {clusters}"),
            });
        }
        if !density.is_finite() || !(0.0..=1.0).contains(&density) {
            return Err(GenError::Config {
                reason: format!("cluster density must lie in [0, 1], got {density}"),
            });
        }
        if !(110..=1100).contains(&max_flow) {
            return Err(GenError::Config {
                reason: format!("maximum cluster flow must lie in 110..=1100, got {max_flow}"),
            });
        }
        if !noise_rate.is_finite() || !(0.0..=0.1).contains(&noise_rate) {
            return Err(GenError::Config {
                reason: format!("noise rate must lie in [0, 0.1], got {noise_rate}"),
            });
        }
        if !(1..=100).contains(&noise_max) {
            return Err(GenError::Config {
                reason: format!("maximum noise flow must lie in 1..=100, got {noise_max}"),
            });
        }
        Ok(EvolvableFlowConfig { n, clusters, density, max_flow, noise_rate, noise_max, seed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clusters(&self) -> usize {
        self.clusters
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn max_flow(&self) -> u32 {
        self.max_flow
    }

    pub fn noise_rate(&self) -> f64 {
        self.noise_rate
    }

    pub fn noise_max(&self) -> u32 {
        self.noise_max
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same parameters bound to a different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        EvolvableFlowConfig { seed, ..*self }
    }
}

/// Maps five raw knobs in [0, 1] onto a validated configuration:
///
/// * clusters `C = round((n/2)^p1)`,
/// * density `C_dens = p2`,
/// * flow cap `C_max = floor(100 + 10^(1 + 2*p3))`,
/// * noise rate `N_freq = p4 / 10`,
/// * noise cap `N_max = floor(1 + 99*p5)`.
pub fn map_raw_params(p: [f64; 5], n: usize, seed: u64) -> Result<EvolvableFlowConfig, GenError> {
    if let Some(bad) = p.iter().find(|v| !v.is_finite() || !(0.0..=1.0).contains(*v)) {
        return Err(GenError::Config {
            reason: format!("raw parameters must lie in [0, 1], got {bad}"),
        });
    }
    let clusters = (n as f64 / 2.0).powf(p[0]).round() as usize;
    let max_flow = (100.0 + 10f64.powf(1.0 + 2.0 * p[2])).floor() as u32;
    let noise_max = (1.0 + 99.0 * p[4]).floor() as u32;
    EvolvableFlowConfig::new(n, clusters, p[1], max_flow, p[3] / 10.0, noise_max, seed)
}

/// Generates the flow matrix for a validated configuration.
///
/// The construction, consuming the flow stream of the seed in order:
///
/// 1. clusters `0..C-1` take the facility pairs `{2c, 2c+1}`; the last
///    cluster takes the leftover facility (odd `n = 2C-1`) or the final
///    pair, and every facility beyond `2C` joins a uniformly random
///    cluster;
/// 2. each cluster of size `s` receives `ceil(density * s*(s-1)/2)`
///    links on distinct facility pairs, each direction drawn from
///    `{100, ..., max_flow}`; while the cluster's positive-flow graph is
///    disconnected, a uniformly random pair of facilities from two
///    different components is linked the same way;
/// 3. `floor(noise_rate * n^2)` noise steps each add `{1, ..,
///    noise_max}` to one random off-diagonal entry (noise consumes the
///    dedicated noise stream, so it never perturbs the cluster draws).
pub fn gen_evolvable_flow(cfg: &EvolvableFlowConfig) -> Array2<f64> {
    let n = cfg.n;
    let c = cfg.clusters;
    let mut rng = derive_rng(cfg.seed, Stream::Flow);

    // Step 1: cluster membership.
    let mut cluster_of: Vec<usize> =
        (0..(2 * c).min(n)).map(|facility| (facility / 2).min(c - 1)).collect();
    cluster_of.extend(((2 * c).min(n)..n).map(|_| rng.gen_range(0..c)));
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); c];
    for (facility, &cluster) in cluster_of.iter().enumerate() {
        members[cluster].push(facility);
    }

    // Step 2: within-cluster links plus connectivity repair.
    let mut f = Array2::zeros((n, n));
    for group in &members {
        let s = group.len();
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(s * (s - 1) / 2);
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[(a + 1)..] {
                pairs.push((i, j));
            }
        }
        let links = (cfg.density * pairs.len() as f64).ceil() as usize;
        let (selected, _) = pairs.partial_shuffle(&mut rng, links);
        for &(i, j) in selected.iter() {
            f[[i, j]] = rng.gen_range(100..=cfg.max_flow) as f64;
            f[[j, i]] = rng.gen_range(100..=cfg.max_flow) as f64;
        }
        loop {
            let split = disconnected_pairs(group, &f);
            if split.is_empty() {
                break;
            }
            let (i, j) = split[rng.gen_range(0..split.len())];
            f[[i, j]] = rng.gen_range(100..=cfg.max_flow) as f64;
            f[[j, i]] = rng.gen_range(100..=cfg.max_flow) as f64;
        }
    }

    // Step 3: one-way additive noise on off-diagonal entries.
    let mut noise_rng = derive_rng(cfg.seed, Stream::Noise);
    let steps = (cfg.noise_rate * (n * n) as f64).floor() as usize;
    for _ in 0..steps {
        let i = noise_rng.gen_range(0..n);
        let mut j = noise_rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        f[[i, j]] += noise_rng.gen_range(1..=cfg.noise_max) as f64;
    }
    f
}

/// All unordered facility pairs of `group` whose members lie in
/// different components of the positive-flow graph restricted to the
/// group; empty when the group is connected.
fn disconnected_pairs(group: &[usize], f: &Array2<f64>) -> Vec<(usize, usize)> {
    let s = group.len();
    let mut component = vec![usize::MAX; s];
    let mut next = 0;
    for start in 0..s {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = next;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..s {
                if component[b] == usize::MAX
                    && (f[[group[a], group[b]]] > 0.0 || f[[group[b], group[a]]] > 0.0)
                {
                    component[b] = next;
                    stack.push(b);
                }
            }
        }
        next += 1;
    }
    if next <= 1 {
        return Vec::new();
    }
    let mut pairs = Vec::new();
    for a in 0..s {
        for b in (a + 1)..s {
            if component[a] != component[b] {
                pairs.push((group[a], group[b]));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_parameter_mapping_matches_worked_examples() {
        let cfg = map_raw_params([1.0, 0.5, 0.0, 0.1, 1.0], 80, 7).unwrap();
        assert_eq!(cfg.clusters(), 40);
        assert_eq!(cfg.density(), 0.5);
        assert_eq!(cfg.max_flow(), 110);
        assert_eq!(cfg.noise_rate(), 0.01);
        assert_eq!(cfg.noise_max(), 100);

        assert_eq!(map_raw_params([0.0, 0.0, 0.0, 0.0, 0.0], 80, 0).unwrap().clusters(), 1);
        assert_eq!(map_raw_params([0.5, 0.0, 1.0, 0.0, 0.0], 80, 0).unwrap().max_flow(), 1100);
        assert!(map_raw_params([1.2, 0.0, 0.0, 0.0, 0.0], 80, 0).is_err());
    }

    #[test]
    fn full_density_single_cluster_is_complete() {
        let cfg = EvolvableFlowConfig::new(12, 1, 1.0, 500, 0.0, 10, 3).unwrap();
        let f = gen_evolvable_flow(&cfg);
        for i in 0..12 {
            for j in 0..12 {
                if i == j {
                    assert_eq!(f[[i, j]], 0.0);
                } else {
                    assert!((100.0..=500.0).contains(&f[[i, j]]));
                }
            }
        }
    }

    #[test]
    fn without_noise_flows_stay_within_clusters() {
        // n = 2C: clusters are exactly the fixed pairs, so any flow
        // between different pairs would have to come from noise.
        let cfg = EvolvableFlowConfig::new(10, 5, 0.0, 110, 0.0, 1, 8).unwrap();
        let f = gen_evolvable_flow(&cfg);
        for i in 0..10 {
            for j in 0..10 {
                if i / 2 == j / 2 && i != j {
                    // Connectivity repair links each pair despite density 0.
                    assert!((100.0..=110.0).contains(&f[[i, j]]));
                } else {
                    assert_eq!(f[[i, j]], 0.0);
                }
            }
        }
    }

    #[test]
    fn every_cluster_is_connected_and_dense_enough() {
        for seed in 0..100 {
            let mut rng = derive_rng(seed, Stream::Structure);
            let p = [(); 5].map(|_| rng.gen_range(0.0..=1.0));
            let mut cfg = map_raw_params(p, 20, seed).unwrap();
            // Zero noise keeps clusters identifiable as the connected
            // components of the result.
            cfg = EvolvableFlowConfig::new(
                cfg.n(),
                cfg.clusters(),
                cfg.density(),
                cfg.max_flow(),
                0.0,
                cfg.noise_max(),
                seed,
            )
            .unwrap();
            let f = gen_evolvable_flow(&cfg);
            let everyone: Vec<usize> = (0..20).collect();
            assert!(disconnected_pairs(&everyone, &f).len() < 20 * 19 / 2);

            let mut seen = [false; 20];
            for start in 0..20 {
                if seen[start] {
                    continue;
                }
                // Flood the component of `start`.
                let mut component = vec![start];
                seen[start] = true;
                let mut head = 0;
                while head < component.len() {
                    let u = component[head];
                    head += 1;
                    for v in 0..20 {
                        if !seen[v] && (f[[u, v]] > 0.0 || f[[v, u]] > 0.0) {
                            seen[v] = true;
                            component.push(v);
                        }
                    }
                }
                // The component is one cluster: its link count must meet
                // the configured density.
                let s = component.len();
                let mut links = 0;
                for a in 0..s {
                    for b in (a + 1)..s {
                        if f[[component[a], component[b]]] > 0.0 {
                            links += 1;
                        }
                    }
                }
                let required = (cfg.density() * (s * (s - 1)) as f64 / 2.0).ceil() as usize;
                assert!(
                    links >= required,
                    "cluster of size {s} has {links} links, needs {required}"
                );
                assert!(disconnected_pairs(&component, &f).is_empty());
            }
        }
    }

    #[test]
    fn noise_adds_one_way_flows_only_off_diagonal() {
        let base = EvolvableFlowConfig::new(16, 2, 0.3, 200, 0.0, 50, 5).unwrap();
        let noisy = EvolvableFlowConfig::new(16, 2, 0.3, 200, 0.1, 50, 5).unwrap();
        let f0 = gen_evolvable_flow(&base);
        let f1 = gen_evolvable_flow(&noisy);
        let mut bumped = 0;
        for i in 0..16 {
            assert_eq!(f1[[i, i]], 0.0);
            for j in 0..16 {
                assert!(f1[[i, j]] >= f0[[i, j]]);
                if f1[[i, j]] > f0[[i, j]] {
                    bumped += 1;
                }
            }
        }
        // floor(0.1 * 256) = 25 noise steps hit at least a few distinct entries.
        assert!(bumped > 0 && bumped <= 25);
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = EvolvableFlowConfig::new(30, 7, 0.4, 800, 0.05, 60, 99).unwrap();
        assert_eq!(gen_evolvable_flow(&cfg), gen_evolvable_flow(&cfg));
        assert_ne!(gen_evolvable_flow(&cfg), gen_evolvable_flow(&cfg.with_seed(100)));
    }
}
