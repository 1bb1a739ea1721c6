//! Triangle-inequality conformance score (TRIPOD) of a single data matrix.
//!
//! Measures how closely a matrix behaves like a distance matrix: for each
//! ordered triple (i, j, k) the direct entry is compared against the
//! "detour" via k. Values land in [0, 1]; a matrix whose direct entries
//! never overshoot their detours — the signature of the triangle
//! inequality — scores 1, while matrices with concentrated spikes that
//! dwarf their detours (typical of flow data) score lower. It is the
//! discriminator used to identify the distance matrix of a canonical-form
//! instance.

use ndarray::Array2;

/// Tuning constants for [`tripod_score`].
#[derive(Debug, Clone, Copy)]
pub struct TripodParams {
    /// Offset added to standardized entries before thresholding at zero.
    pub alpha: f64,
    /// Per-triple cap on the penalty accumulator.
    pub beta: f64,
}

impl Default for TripodParams {
    fn default() -> Self {
        TripodParams { alpha: 3.0, beta: 10.0 }
    }
}

/// Computes the triangle-inequality conformance score of `m` in O(n³).
///
/// Off-diagonal entries are standardized by their population mean and
/// stddev, shifted by `alpha`, and clipped at zero, giving weights `d`.
/// A triple (i, j, k) with distinct indices *counts* when the direct weight
/// `d_ij` strictly exceeds both legs `d_ik`, `d_kj`; it *penalizes* by
/// `clamp(d_ij − d_ik − d_kj, 0, beta)` — how far the direct weight
/// overshoots the detour. The score is `(t − p) / t` clamped to [0, 1],
/// where `t` is the count and `p` the total penalty.
///
/// Degenerate cases score 1.0: a (near-)constant off-diagonal, or no
/// counting triples at all.
pub fn tripod_score(m: &Array2<f64>, params: TripodParams) -> f64 {
    let n = m.nrows();
    if n < 3 {
        return 1.0;
    }
    let count = (n * (n - 1)) as f64;
    let mut mean = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mean += m[(i, j)];
            }
        }
    }
    mean /= count;
    let mut var = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = m[(i, j)] - mean;
                var += d * d;
            }
        }
    }
    let sigma = (var / count).sqrt();
    let scale = m.iter().fold(0.0f64, |acc, &v| acc.max(v.abs())).max(1.0);
    if sigma <= 1e-12 * scale {
        return 1.0;
    }

    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[(i, j)] = ((m[(i, j)] - mean) / sigma + params.alpha).max(0.0);
            }
        }
    }

    let mut triples = 0u64;
    let mut penalty = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            let direct = d[(i, j)];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let leg_a = d[(i, k)];
                let leg_b = d[(k, j)];
                if direct > leg_a && direct > leg_b {
                    triples += 1;
                    penalty += (direct - leg_a - leg_b).clamp(0.0, params.beta);
                }
            }
        }
    }
    if triples == 0 {
        return 1.0;
    }
    ((triples as f64 - penalty) / triples as f64).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};

    #[test]
    fn constant_offdiagonal_scores_one() {
        let mut m = Array2::from_elem((4, 4), 5.0);
        for i in 0..4 {
            m[(i, i)] = 0.0;
        }
        assert_eq!(tripod_score(&m, TripodParams::default()), 1.0);
    }

    #[test]
    fn single_spike_hand_computed() {
        // One off-diagonal entry of 10, five zeros: μ = 10/6, σ = 5√5/3.
        // The spike gets d₀₁ = √5 + 3, the rest 3 − 1/√5. Only (0,1,2)
        // counts; its penalty is 7/√5 − 3, so the score is 4 − 7/√5.
        let m = array![
            [0.0, 10.0, 0.0],
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0]
        ];
        let score = tripod_score(&m, TripodParams::default());
        assert_abs_diff_eq!(score, 4.0 - 7.0 / 5.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn metric_scores_perfect_spiky_scores_lower() {
        // Path metric on 4 collinear points: direct entries never exceed
        // detours, every penalty clamps to zero, score 1.
        let metric = array![
            [0.0, 1.0, 2.0, 3.0],
            [1.0, 0.0, 1.0, 2.0],
            [2.0, 1.0, 0.0, 1.0],
            [3.0, 2.0, 1.0, 0.0]
        ];
        let p = TripodParams::default();
        assert_eq!(tripod_score(&metric, p), 1.0);
        // Two huge isolated entries in a sea of zeros overshoot their
        // detours and get penalized.
        let mut spiky = Array2::zeros((4, 4));
        spiky[(0, 3)] = 100.0;
        spiky[(2, 1)] = 90.0;
        assert!(tripod_score(&spiky, p) < 1.0);
    }

    #[test]
    fn too_small_matrix_scores_one() {
        let m = array![[0.0, 1.0], [2.0, 0.0]];
        assert_eq!(tripod_score(&m, TripodParams::default()), 1.0);
    }
}
