//! Exact linear assignment on a dense real cost matrix.

use ndarray::Array2;

/// Solves the minimum-cost perfect assignment problem on an n×n matrix in
/// O(n³) via shortest augmenting paths with dual potentials. Arbitrary
/// finite real costs are supported (negative entries included).
///
/// Returns the optimal total cost and, for each row, its assigned column.
pub fn solve_lap(cost: &Array2<f64>) -> (f64, Vec<usize>) {
    let n = cost.nrows();
    assert_eq!(n, cost.ncols(), "assignment needs a square cost matrix");
    assert!(n > 0, "assignment needs at least one row");

    // 1-based arrays with column 0 as the virtual unassigned marker.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1]; // row currently assigned to column j
    let mut way = vec![0usize; n + 1]; // predecessor column on the alternating path

    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        // Walk the alternating path back, flipping assignments.
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().map(|(r, &c)| cost[(r, c)]).sum();
    (total, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(cost: &Array2<f64>) -> f64 {
        let n = cost.nrows();
        let mut cols: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        permute(&mut cols, 0, &mut |perm| {
            let total: f64 = perm.iter().enumerate().map(|(r, &c)| cost[(r, c)]).sum();
            if total < best {
                best = total;
            }
        });
        best
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn solves_a_hand_worked_example() {
        // Row 0 must take column 2, row 1 column 1, row 2 column 0.
        let cost = array![[4.0, 2.0, 1.0], [3.0, 1.0, 5.0], [1.0, 6.0, 4.0]];
        let (total, assignment) = solve_lap(&cost);
        assert_eq!(assignment, vec![2, 1, 0]);
        assert_abs_diff_eq!(total, 3.0);
    }

    #[test]
    fn single_entry_matrix() {
        let (total, assignment) = solve_lap(&array![[-7.5]]);
        assert_eq!(assignment, vec![0]);
        assert_abs_diff_eq!(total, -7.5);
    }

    #[test]
    fn matches_enumeration_on_random_matrices_with_negative_costs() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for trial in 0..200 {
            let n = 2 + trial % 6;
            let cost =
                Array2::from_shape_fn((n, n), |_| rng.gen_range(-10.0f64..10.0));
            let (total, assignment) = solve_lap(&cost);
            let mut seen = vec![false; n];
            for &c in &assignment {
                assert!(!seen[c], "assignment must be a permutation");
                seen[c] = true;
            }
            assert_abs_diff_eq!(total, brute_force(&cost), epsilon = 1e-9);
        }
    }
}
