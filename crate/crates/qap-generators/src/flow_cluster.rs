//! Flow matrices that cluster large flows in small facility groups.
//!
//! These generators produce only a flow matrix, intended to be paired
//! with a grid-based distance matrix (a rectangle or a cubic grid) whose
//! structure they reference through the neighbour relation. Instead of
//! one monolithic structure that a good solution must match exactly,
//! they spread many small clusters of large flows around, so assigning
//! one cluster well constrains — but does not decide — the rest of the
//! solution.
//!
//! All random draws (structural choices first, entry values second)
//! consume the flow stream of the seed in algorithm order.

use ndarray::Array2;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::GenError;
use crate::grid::GridStructure;
use crate::rng::{derive_rng, Stream};

/// Ring magnitude of the square-flow blocks.
const SQUARE_RING: f64 = 10_000.0;

/// The three flow-cluster constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowClusterVariant {
    /// `count` directed triangles over grid neighbours.
    Triangle,
    /// `count` facility groups grown as trees over the grid.
    Tree,
    /// `count` independent 4x4 blocks placed block-diagonally.
    Square,
}

/// Configuration shared by the three flow-cluster generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowClusterConfig {
    pub variant: FlowClusterVariant,
    /// Base flow magnitude; used by the triangle and tree variants.
    pub f0: u32,
    /// Number of triangles, groups, or blocks.
    pub count: usize,
    /// Grid whose neighbour relation the flows are built on.
    pub grid: GridStructure,
    pub seed: u64,
}

/// Dispatches to the generator selected by `cfg.variant`.
pub fn gen_flow_cluster(cfg: &FlowClusterConfig) -> Result<Array2<f64>, GenError> {
    match cfg.variant {
        FlowClusterVariant::Triangle => gen_triangle_flows(cfg),
        FlowClusterVariant::Tree => gen_tree_flows(cfg),
        FlowClusterVariant::Square => gen_square_flows(cfg),
    }
}

fn check_variant(cfg: &FlowClusterConfig, expected: FlowClusterVariant) -> Result<(), GenError> {
    if cfg.variant != expected {
        return Err(GenError::Config {
            reason: format!("config names variant {:?}, not {:?}", cfg.variant, expected),
        });
    }
    Ok(())
}

fn check_f0(f0: u32) -> Result<(), GenError> {
    if f0 < 2 || f0 % 2 != 0 {
        return Err(GenError::Config {
            reason: format!("base flow magnitude must be even and >= 2, got {f0}"),
        });
    }
    Ok(())
}

/// Triangle flows: `count` times, pick a facility `i`, two distinct
/// grid neighbours `j` and `k` of `i`, and set the directed cycle
/// `f_ij`, `f_jk`, `f_ki` to fresh values from `{f0+1, ..., f0+f0/2}`.
/// Re-selected flows are overwritten, never accumulated.
pub fn gen_triangle_flows(cfg: &FlowClusterConfig) -> Result<Array2<f64>, GenError> {
    check_variant(cfg, FlowClusterVariant::Triangle)?;
    check_f0(cfg.f0)?;
    let n = cfg.grid.n();
    if (0..n).any(|i| cfg.grid.neighbors(i).len() < 2) {
        return Err(GenError::Config {
            reason: "triangle flows need every facility to have at least 2 grid neighbours"
                .to_string(),
        });
    }
    let mut rng = derive_rng(cfg.seed, Stream::Flow);
    let mut f = Array2::zeros((n, n));
    for _ in 0..cfg.count {
        let i = rng.gen_range(0..n);
        let neighbours = cfg.grid.neighbors(i);
        let j_pos = rng.gen_range(0..neighbours.len());
        let mut k_pos = rng.gen_range(0..neighbours.len() - 1);
        if k_pos >= j_pos {
            k_pos += 1;
        }
        let (j, k) = (neighbours[j_pos], neighbours[k_pos]);
        for (from, to) in [(i, j), (j, k), (k, i)] {
            f[[from, to]] = rng.gen_range(cfg.f0 + 1..=cfg.f0 + cfg.f0 / 2) as f64;
        }
    }
    Ok(f)
}

/// Tree flows: `count` groups start from distinct random roots with
/// weights from `{1, ..., 5}`; repeatedly a group is chosen with
/// probability proportional to its weight and one of its members links a
/// random unassigned grid neighbour into the group, until every facility
/// is assigned. Directly linked pairs get flows from
/// `{f0+1, ..., f0+f0/2}` in both directions, unlinked same-group pairs
/// from `{1, ..., f0/2}` in both directions, cross-group pairs zero.
pub fn gen_tree_flows(cfg: &FlowClusterConfig) -> Result<Array2<f64>, GenError> {
    check_variant(cfg, FlowClusterVariant::Tree)?;
    check_f0(cfg.f0)?;
    let n = cfg.grid.n();
    let groups = cfg.count;
    if groups < 1 || groups > n {
        return Err(GenError::Config {
            reason: format!("group count must lie in 1..={n}, got {groups}"),
        });
    }

    let mut rng = derive_rng(cfg.seed, Stream::Flow);
    let mut order: Vec<usize> = (0..n).collect();
    let (chosen, _) = order.partial_shuffle(&mut rng, groups);
    let roots: Vec<usize> = chosen.to_vec();
    let weights: Vec<u32> = (0..groups).map(|_| rng.gen_range(1..=5)).collect();

    let mut group: Vec<Option<usize>> = vec![None; n];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); groups];
    for (g, &root) in roots.iter().enumerate() {
        group[root] = Some(g);
        members[g].push(root);
    }
    let mut linked = vec![false; n * n];
    let picker = WeightedIndex::new(&weights).expect("weights are all positive");

    let mut assigned = groups;
    while assigned < n {
        let mut grew = false;
        // A sampled (group, member) pair may have no room to grow; such
        // attempts are simply retried, which leaves the distribution of
        // successful growth steps as described above.
        for _ in 0..64 * n {
            let g = picker.sample(&mut rng);
            let member = members[g][rng.gen_range(0..members[g].len())];
            let open: Vec<usize> = cfg
                .grid
                .neighbors(member)
                .into_iter()
                .filter(|&v| group[v].is_none())
                .collect();
            if open.is_empty() {
                continue;
            }
            let next = open[rng.gen_range(0..open.len())];
            group[next] = Some(g);
            members[g].push(next);
            linked[member * n + next] = true;
            linked[next * n + member] = true;
            assigned += 1;
            grew = true;
            break;
        }
        if !grew {
            // The grid is connected, so some member of some group always
            // borders an unassigned facility; scan for it directly if the
            // sampler keeps missing. This keeps the loop finite without
            // affecting any realistic seed.
            let (g, member, next) = (0..n)
                .filter_map(|m| {
                    let g = group[m]?;
                    cfg.grid
                        .neighbors(m)
                        .into_iter()
                        .find(|&v| group[v].is_none())
                        .map(|v| (g, m, v))
                })
                .next()
                .expect("an unassigned facility always borders an assigned one");
            group[next] = Some(g);
            members[g].push(next);
            linked[member * n + next] = true;
            linked[next * n + member] = true;
            assigned += 1;
        }
    }

    let mut f = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i == j || group[i] != group[j] {
                continue;
            }
            f[[i, j]] = if linked[i * n + j] {
                rng.gen_range(cfg.f0 + 1..=cfg.f0 + cfg.f0 / 2) as f64
            } else {
                rng.gen_range(1..=cfg.f0 / 2) as f64
            };
        }
    }
    Ok(f)
}

/// Square flows: `count` independent 4x4 blocks, each an alternating
/// ring of magnitude 10^4 over positions (0,1),(1,2),(2,3),(3,0) and
/// back, with diagonal-crossing entries from `{1, ..., 100}`, merged
/// block-diagonally and zero-padded to the grid size.
pub fn gen_square_flows(cfg: &FlowClusterConfig) -> Result<Array2<f64>, GenError> {
    check_variant(cfg, FlowClusterVariant::Square)?;
    let n = cfg.grid.n();
    if cfg.count < 1 {
        return Err(GenError::Config { reason: "block count must be at least 1".to_string() });
    }
    if 4 * cfg.count > n {
        return Err(GenError::Config {
            reason: format!("{} blocks of 4 facilities exceed n = {n}", cfg.count),
        });
    }
    let mut rng = derive_rng(cfg.seed, Stream::Flow);
    let mut f = Array2::zeros((n, n));
    const RING: [(usize, usize); 8] =
        [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (0, 3), (3, 0)];
    const CROSS: [(usize, usize); 4] = [(0, 2), (1, 3), (2, 0), (3, 1)];
    for block in 0..cfg.count {
        let base = 4 * block;
        for (r, c) in RING {
            f[[base + r, base + c]] = SQUARE_RING;
        }
        for (r, c) in CROSS {
            f[[base + r, base + c]] = rng.gen_range(1..=100) as f64;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect_config(variant: FlowClusterVariant, count: usize, seed: u64) -> FlowClusterConfig {
        FlowClusterConfig {
            variant,
            f0: 20,
            count,
            grid: GridStructure::rectangle(8, 10).unwrap(),
            seed,
        }
    }

    #[test]
    fn zero_triangles_give_a_zero_matrix() {
        let f = gen_triangle_flows(&rect_config(FlowClusterVariant::Triangle, 0, 1)).unwrap();
        assert!(f.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn triangle_flows_sit_on_neighbour_and_second_neighbour_pairs() {
        let cfg = rect_config(FlowClusterVariant::Triangle, 25, 3);
        let f = gen_triangle_flows(&cfg).unwrap();
        let mut nonzero = 0;
        for i in 0..80 {
            for j in 0..80 {
                if f[[i, j]] != 0.0 {
                    nonzero += 1;
                    assert!((21.0..=30.0).contains(&f[[i, j]]));
                    let h = cfg.grid.manhattan(i, j);
                    assert!(h == 1 || h == 2, "flow on pair at grid distance {h}");
                }
            }
        }
        assert!(nonzero > 0 && nonzero <= 3 * 25);
    }

    #[test]
    fn tree_flows_partition_facilities_with_connected_groups() {
        let cfg = rect_config(FlowClusterVariant::Tree, 6, 11);
        let f = gen_tree_flows(&cfg).unwrap();
        let n = 80;
        // Same-group pairs have positive flows both ways; the relation
        // "positive flow" therefore reconstructs the groups.
        let same = |i: usize, j: usize| f[[i, j] ] > 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert_eq!(same(i, j), same(j, i));
                    let v = f[[i, j]];
                    assert!(
                        v == 0.0 || (1.0..=10.0).contains(&v) || (21.0..=30.0).contains(&v),
                        "unexpected flow value {v}"
                    );
                }
            }
        }
        // Strong flows (the tree links) connect every group: walk them.
        for start in 0..n {
            let group: Vec<usize> =
                (0..n).filter(|&j| j == start || same(start, j)).collect();
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                for &v in &group {
                    if !seen[v] && f[[u, v]] >= 21.0 {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            for &v in &group {
                assert!(seen[v], "facility {v} unreachable from {start} over tree links");
            }
        }
    }

    #[test]
    fn tree_rejects_more_groups_than_facilities() {
        let cfg = rect_config(FlowClusterVariant::Tree, 81, 0);
        assert!(matches!(gen_tree_flows(&cfg), Err(GenError::Config { .. })));
    }

    #[test]
    fn one_square_block_has_exactly_twelve_nonzeros() {
        let f = gen_square_flows(&rect_config(FlowClusterVariant::Square, 1, 5)).unwrap();
        let nonzero: Vec<(usize, usize, f64)> = (0..80)
            .flat_map(|i| (0..80).map(move |j| (i, j)))
            .filter(|&(i, j)| f[[i, j]] != 0.0)
            .map(|(i, j)| (i, j, f[[i, j]]))
            .collect();
        assert_eq!(nonzero.len(), 12);
        let ring = nonzero.iter().filter(|&&(_, _, v)| v == 10_000.0).count();
        assert_eq!(ring, 8);
        for &(i, j, v) in &nonzero {
            assert!(i < 4 && j < 4);
            assert!(v == 10_000.0 || (1.0..=100.0).contains(&v));
        }
    }

    #[test]
    fn square_blocks_are_disjoint_and_counted() {
        let cfg = rect_config(FlowClusterVariant::Square, 5, 9);
        let f = gen_square_flows(&cfg).unwrap();
        let nonzero = f.iter().filter(|&&v| v != 0.0).count();
        assert_eq!(nonzero, 12 * 5);
        for i in 0..80 {
            for j in 0..80 {
                if f[[i, j]] != 0.0 {
                    assert_eq!(i / 4, j / 4, "entry ({i},{j}) crosses blocks");
                    assert!(i / 4 < 5);
                }
            }
        }
        assert!(matches!(
            gen_square_flows(&rect_config(FlowClusterVariant::Square, 21, 0)),
            Err(GenError::Config { .. })
        ));
    }

    #[test]
    fn generators_are_deterministic_per_seed() {
        for variant in
            [FlowClusterVariant::Triangle, FlowClusterVariant::Tree, FlowClusterVariant::Square]
        {
            let cfg = rect_config(variant, 7, 31);
            assert_eq!(gen_flow_cluster(&cfg).unwrap(), gen_flow_cluster(&cfg).unwrap());
        }
    }

    #[test]
    fn variant_mismatch_is_rejected() {
        let cfg = rect_config(FlowClusterVariant::Square, 3, 0);
        assert!(matches!(gen_triangle_flows(&cfg), Err(GenError::Config { .. })));
    }
}
