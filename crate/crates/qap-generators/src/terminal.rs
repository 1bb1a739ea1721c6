//! Branching-tree ("airport terminal") instances.
//!
//! Locations are the leaves of a uniform branching tree: level `d` of
//! the tree splits every node into `levels[d]` children, so the leaf
//! count is the product of the branching factors. Leaf `i` corresponds
//! to the mixed-radix digit string of `i` over the branching factors,
//! most significant digit first, which makes consecutive indices share
//! deep branches.
//!
//! Distances are tree-path lengths with randomized edge costs that halve
//! at every level away from the root, so leaves in one deep branch sit
//! close together while crossing the root is expensive. Flows invert the
//! picture: they are largest inside the smallest leaf groups, halve at
//! every level towards the root, and vanish entirely between different
//! top-level branches. High-quality solutions therefore keep each flow
//! cluster inside one branch of the distance tree, while leaving many
//! ways to arrange the branches themselves.

use ndarray::Array2;
use rand::Rng;

use qap_core::Instance;

use crate::error::{GenError, MAX_GENERATED_SIZE};
use crate::rng::{derive_rng, Stream};

/// Generates a branching-tree instance from the list of per-level
/// branching factors.
///
/// * each tree edge above a node at depth `d` (root = depth 0, leaves =
///   depth `L`) gets the cost `U{d0+1 ..= d0 + d0/2} * 2^(L-d)`, drawn
///   level by level from the distance stream;
/// * the distance between two leaves is the sum of edge costs along the
///   tree path between them;
/// * the flow between two facilities whose lowest common ancestor sits
///   at depth `p >= 1` is `max(1, U{f0+1 ..= f0 + f0/2} >> (L-1-p))`,
///   drawn independently per ordered pair in row-major order from the
///   flow stream; facilities separated only by the root get flow 0.
pub fn gen_terminal(levels: &[usize], d0: u32, f0: u32, seed: u64) -> Result<Instance, GenError> {
    if levels.len() < 2 {
        return Err(GenError::Config {
            reason: format!("tree needs at least 2 levels, got {}", levels.len()),
        });
    }
    if let Some(&bad) = levels.iter().find(|&&b| b < 2) {
        return Err(GenError::Config {
            reason: format!("every branching factor must be >= 2, got {bad}"),
        });
    }
    let n = levels
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(b))
        .filter(|&n| n <= MAX_GENERATED_SIZE)
        .ok_or(GenError::TooLarge { n: MAX_GENERATED_SIZE + 1, max: MAX_GENERATED_SIZE })?;
    for (name, value) in [("distance", d0), ("flow", f0)] {
        if value < 2 || value % 2 != 0 {
            return Err(GenError::Config {
                reason: format!("base {name} magnitude must be even and >= 2, got {value}"),
            });
        }
    }

    let depth = levels.len();

    // Ancestor index of each leaf at every depth 1..=L, where the
    // ancestor at depth d is the mixed-radix value of the first d digits.
    let mut ancestors = vec![vec![0usize; depth]; n];
    for (leaf, chain) in ancestors.iter_mut().enumerate() {
        let mut digits = vec![0usize; depth];
        let mut rest = leaf;
        for d in (0..depth).rev() {
            digits[d] = rest % levels[d];
            rest /= levels[d];
        }
        let mut index = 0usize;
        for d in 0..depth {
            index = index * levels[d] + digits[d];
            chain[d] = index;
        }
    }

    // Edge costs, drawn level by level (nodes of a level in index order).
    let mut dist_rng = derive_rng(seed, Stream::Distance);
    let mut edge_costs: Vec<Vec<f64>> = Vec::with_capacity(depth);
    let mut level_size = 1usize;
    for (d, &branching) in levels.iter().enumerate() {
        level_size *= branching;
        let scale = (1u64 << (depth - d - 1)) as f64;
        edge_costs.push(
            (0..level_size)
                .map(|_| dist_rng.gen_range(d0 + 1..=d0 + d0 / 2) as f64 * scale)
                .collect(),
        );
    }

    let common_prefix = |i: usize, j: usize| -> usize {
        (0..depth)
            .take_while(|&d| ancestors[i][d] == ancestors[j][d])
            .count()
    };

    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let p = common_prefix(i, j);
            let d: f64 = (p..depth)
                .map(|d| edge_costs[d][ancestors[i][d]] + edge_costs[d][ancestors[j][d]])
                .sum();
            a[[i, j]] = d;
            a[[j, i]] = d;
        }
    }

    let mut flow_rng = derive_rng(seed, Stream::Flow);
    let mut b = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = common_prefix(i, j);
            if p == 0 {
                continue;
            }
            let raw = flow_rng.gen_range(f0 + 1..=f0 + f0 / 2);
            b[[i, j]] = (raw >> (depth - 1 - p)).max(1) as f64;
        }
    }

    Ok(Instance::new("", a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branching_product_sets_the_size() {
        let inst = gen_terminal(&[5, 3, 3], 20, 20, 1).unwrap();
        assert_eq!(inst.n(), 45);
        let inst = gen_terminal(&[3, 5, 7], 20, 20, 1).unwrap();
        assert_eq!(inst.n(), 105);
    }

    #[test]
    fn deep_siblings_are_closer_than_any_cross_root_pair() {
        let inst = gen_terminal(&[5, 5, 3], 20, 20, 9).unwrap();
        // Leaves 0..3 share the deepest branch; leaves with different
        // leading digits are separated by the root. Leading digit spans
        // blocks of 15 leaves here.
        let sibling_max = inst.a()[[0, 1]].max(inst.a()[[0, 2]]).max(inst.a()[[1, 2]]);
        let mut cross_root_min = f64::INFINITY;
        for i in 0..15 {
            for j in 15..inst.n() {
                cross_root_min = cross_root_min.min(inst.a()[[i, j]]);
            }
        }
        assert!(
            sibling_max < cross_root_min,
            "siblings at {sibling_max} should beat cross-root at {cross_root_min}"
        );
    }

    #[test]
    fn flows_vanish_across_the_root_and_peak_in_deep_groups() {
        let inst = gen_terminal(&[5, 3, 3], 20, 20, 3).unwrap();
        // Top-level blocks span 9 leaves each.
        for i in 0..9 {
            for j in 9..inst.n() {
                assert_eq!(inst.b()[[i, j]], 0.0);
                assert_eq!(inst.b()[[j, i]], 0.0);
            }
        }
        // Deepest siblings carry undamped flows in {f0+1 ..= f0+f0/2}.
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!((21.0..=30.0).contains(&inst.b()[[i, j]]));
        }
        // Same top-level but different deep branch: one halving applied.
        assert!((10.0..=15.0).contains(&inst.b()[[0, 3]]));
    }

    #[test]
    fn distances_are_symmetric_with_zero_diagonal() {
        let inst = gen_terminal(&[3, 5, 7], 20, 20, 4).unwrap();
        for i in 0..inst.n() {
            assert_eq!(inst.a()[[i, i]], 0.0);
            for j in 0..inst.n() {
                assert_eq!(inst.a()[[i, j]], inst.a()[[j, i]]);
            }
        }
    }

    #[test]
    fn degenerate_configurations_are_rejected() {
        assert!(matches!(gen_terminal(&[45], 20, 20, 0), Err(GenError::Config { .. })));
        assert!(matches!(gen_terminal(&[5, 1, 3], 20, 20, 0), Err(GenError::Config { .. })));
        assert!(matches!(gen_terminal(&[5, 3, 3], 15, 20, 0), Err(GenError::Config { .. })));
    }

    #[test]
    fn same_seed_reproduces_the_instance() {
        let one = gen_terminal(&[5, 3, 3], 20, 20, 77).unwrap();
        let two = gen_terminal(&[5, 3, 3], 20, 20, 77).unwrap();
        assert_eq!(one.a(), two.a());
        assert_eq!(one.b(), two.b());
    }
}
