//! Canonical (standard-form) normalization of an instance.
//!
//! The pipeline maps every member of an equivalence class of instances —
//! related by symmetrization, positive rescaling, class-wise constant
//! shifts, negation of both matrices, or exchanging the two matrices — to
//! one canonical pair `(D, F)`:
//!
//! 1. If exactly one matrix is symmetric, symmetrize the other (this
//!    preserves all costs when its partner is symmetric).
//! 2. Put both matrices in zero-mean form, making the mean cost 0.
//! 3. Rescale so the cost stddev over all permutations is 1, splitting the
//!    scale between the matrices so their entry stddevs come out equal.
//! 4. Identify the distance matrix: evaluate the triangle-inequality
//!    conformance score on both rescaled matrices *and their negations*,
//!    and let the highest scorer be `D`, its partner (with matching sign)
//!    `F`.
//!
//! Step 4 scores negated copies too so that the canonical form is invariant
//! under negating both inputs — without it, negation would flip every
//! entry's sign while leaving means, stddevs, and costs untouched, and
//! equivalent instances would normalize to different matrices.
//!
//! Score ties are real, not a corner case: the score clamps to 1.0, so two
//! candidates can tie exactly on that plateau (e.g. a metric matrix and the
//! negation of its partner). Ties are therefore broken by comparing the
//! candidates' entries lexicographically — a key that depends only on the
//! candidate's value, never on its position in the list — so the winning
//! matrix is the same no matter how a sign flip or matrix exchange reorders
//! the candidates.

use ndarray::Array2;

use crate::error::CoreError;
use crate::forms::{entry_stddev, zero_mean_form};
use crate::instance::{is_symmetric, Instance};
use crate::stats::variance_cost;
use crate::tripod::{tripod_score, TripodParams};

/// An instance in canonical form, plus the normalization metadata.
#[derive(Debug, Clone)]
pub struct StandardFormInstance {
    /// Identified distance matrix (higher triangle-dominance score).
    pub d: Array2<f64>,
    /// Identified flow matrix.
    pub f: Array2<f64>,
    /// True when the original `B` became `D`.
    pub swapped: bool,
    /// True when the canonical sign is the negation of the inputs.
    pub negated: bool,
    /// Cost stddev of the zero-mean pair before rescaling.
    pub sigma_q: f64,
    /// Entry stddev of the zero-mean matrix behind `D`, divided by √sigma_q.
    pub sigma_d: f64,
    /// Entry stddev of the zero-mean matrix behind `F`, divided by √sigma_q.
    pub sigma_f: f64,
    /// Triangle-dominance score of `D` (the winning candidate).
    pub tripod_d: f64,
    /// Triangle-dominance score of `F` (the partner, not the runner-up).
    pub tripod_f: f64,
}

impl StandardFormInstance {
    pub fn n(&self) -> usize {
        self.d.nrows()
    }

    /// Reconstitutes a plain instance with `D` as the first matrix and `F`
    /// as the second, carrying over the label.
    pub fn to_instance(&self, label: impl Into<String>) -> Instance {
        Instance::new(label, self.d.clone(), self.f.clone())
            .expect("canonical matrices are square, finite, and matched")
    }
}

/// Normalizes `inst` to canonical form. See the module docs for the steps.
///
/// # Errors
/// - [`CoreError::TooSmall`] for n < 3 (the identification score needs
///   triples).
/// - [`CoreError::DegenerateInstance`] when every permutation costs the
///   same (cost stddev 0) — no rescale can set the stddev to 1.
/// - [`CoreError::DegenerateMatrix`] when a zero-mean matrix is entirely
///   zero (entry stddev 0), leaving the per-matrix scale undefined.
pub fn standardize(
    inst: &Instance,
    params: TripodParams,
) -> Result<StandardFormInstance, CoreError> {
    let n = inst.n();
    if n < 3 {
        return Err(CoreError::TooSmall { n, min: 3, context: "standardize" });
    }

    let a_sym = is_symmetric(inst.a());
    let b_sym = is_symmetric(inst.b());
    let mut a = inst.a().clone();
    let mut b = inst.b().clone();
    if a_sym && !b_sym {
        b = symmetric_part(&b);
    } else if b_sym && !a_sym {
        a = symmetric_part(&a);
    }

    let a = zero_mean_form(&a);
    let b = zero_mean_form(&b);

    // A matrix that zero-means to all-zeros forces a constant cost, so the
    // per-matrix check must run first or it could never fire.
    let std_a = entry_stddev(&a);
    let std_b = entry_stddev(&b);
    let scale_a = a.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let scale_b = b.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if std_a <= 1e-12 * scale_a.max(1e-300) {
        return Err(CoreError::DegenerateMatrix { matrix: "A" });
    }
    if std_b <= 1e-12 * scale_b.max(1e-300) {
        return Err(CoreError::DegenerateMatrix { matrix: "B" });
    }

    let zero_mean_inst = Instance::new(inst.label(), a.clone(), b.clone())?;
    let variance = variance_cost(&zero_mean_inst);
    if variance <= 0.0 {
        return Err(CoreError::DegenerateInstance {
            reason: "constant cost landscape (cost stddev 0)".to_string(),
        });
    }
    let sigma_q = variance.sqrt();

    // Entry stddevs of the zero-mean matrices measured against √sigma_q, as
    // the balancing factors below expect.
    let sigma_a = std_a / sigma_q.sqrt();
    let sigma_b = std_b / sigma_q.sqrt();
    let factor_a = (sigma_b / (sigma_q * sigma_a)).sqrt();
    let factor_b = (sigma_a / (sigma_q * sigma_b)).sqrt();
    let x = a.mapv(|v| v * factor_a);
    let y = b.mapv(|v| v * factor_b);

    // Candidates in a fixed order; (swapped, negated) identify each one's
    // provenance. Equal scores fall back to an entrywise lexicographic
    // comparison (see the module docs for why that keeps the outcome
    // order-independent).
    let neg_x = x.mapv(|v| -v);
    let neg_y = y.mapv(|v| -v);
    let candidates = [&x, &y, &neg_x, &neg_y];
    let scores = candidates.map(|c| tripod_score(c, params));
    let mut best = 0;
    for i in 1..candidates.len() {
        if scores[i] > scores[best]
            || (scores[i] == scores[best] && lex_greater(candidates[i], candidates[best]))
        {
            best = i;
        }
    }
    let ((d, f), swapped, negated) = match best {
        0 => ((x, y), false, false),
        1 => ((y, x), true, false),
        2 => ((neg_x, neg_y), false, true),
        _ => ((neg_y, neg_x), true, true),
    };
    let tripod_d = scores[best];
    let tripod_f = tripod_score(&f, params);
    let (sigma_d, sigma_f) = if swapped { (sigma_b, sigma_a) } else { (sigma_a, sigma_b) };

    Ok(StandardFormInstance {
        d,
        f,
        swapped,
        negated,
        sigma_q,
        sigma_d,
        sigma_f,
        tripod_d,
        tripod_f,
    })
}

fn symmetric_part(m: &Array2<f64>) -> Array2<f64> {
    (m + &m.t()) / 2.0
}

/// Entrywise lexicographic order in row-major traversal. Entries are
/// finite by construction, so the comparison is total.
fn lex_greater(p: &Array2<f64>, q: &Array2<f64>) -> bool {
    for (u, v) in p.iter().zip(q.iter()) {
        if u > v {
            return true;
        }
        if u < v {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::entry_stddev;
    use crate::stats::{mean_cost, variance_cost};
    use ndarray::array;

    fn sample() -> Instance {
        Instance::new(
            "s",
            array![
                [0.0, 3.0, 7.0, 1.0],
                [2.0, 0.0, 5.0, 9.0],
                [4.0, 8.0, 0.0, 6.0],
                [1.0, 2.0, 3.0, 0.0]
            ],
            array![
                [0.0, 1.0, 2.0, 3.0],
                [1.0, 0.0, 1.0, 2.0],
                [2.0, 1.0, 0.0, 1.0],
                [3.0, 2.0, 1.0, 0.0]
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_satisfies_type_invariants() {
        let std = standardize(&sample(), TripodParams::default()).unwrap();
        let inst = std.to_instance("check");
        assert!(mean_cost(&inst).abs() < 1e-9);
        assert!((variance_cost(&inst).sqrt() - 1.0).abs() < 1e-6);
        let sd = entry_stddev(&std.d);
        let sf = entry_stddev(&std.f);
        assert!((sd - sf).abs() <= 1e-9 * sd.max(sf));
        assert!(std.tripod_d >= std.tripod_f);
    }

    #[test]
    fn metric_side_identified_as_distance_matrix() {
        // A has a strong isolated spike next to a medium chain whose
        // shortcut is zero, so both A and −A strictly violate the triangle
        // inequality; the path metric B scores a clean 1.0 and must win D.
        let a = array![
            [0.0, 200.0, 0.0, 0.0, 0.0],
            [200.0, 0.0, 40.0, 0.0, 0.0],
            [0.0, 40.0, 0.0, 40.0, 0.0],
            [0.0, 0.0, 40.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0]
        ];
        let b = array![
            [0.0, 1.0, 2.0, 3.0, 4.0],
            [1.0, 0.0, 1.0, 2.0, 3.0],
            [2.0, 1.0, 0.0, 1.0, 2.0],
            [3.0, 2.0, 1.0, 0.0, 1.0],
            [4.0, 3.0, 2.0, 1.0, 0.0]
        ];
        let inst = Instance::new("fm", a, b).unwrap();
        let std = standardize(&inst, TripodParams::default()).unwrap();
        assert_eq!(std.tripod_d, 1.0);
        assert!(std.tripod_f < 1.0);
        assert!(std.swapped, "the metric matrix should become D");
        assert!(!std.negated);
    }

    #[test]
    fn symmetrizes_when_exactly_one_side_symmetric() {
        let std = standardize(&sample(), TripodParams::default()).unwrap();
        assert!(is_symmetric(&std.d));
        assert!(is_symmetric(&std.f));
    }

    #[test]
    fn constant_cost_landscape_is_degenerate() {
        // Neither matrix is class-constant, yet only diagonal-with-diagonal
        // products survive and B's diagonal is zero — every permutation
        // costs the same.
        let a = array![[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 4.0]];
        let b = array![[0.0, 3.0, 5.0], [2.0, 0.0, 7.0], [6.0, 1.0, 0.0]];
        let inst = Instance::new("flat-cost", a, b).unwrap();
        assert!(matches!(
            standardize(&inst, TripodParams::default()),
            Err(CoreError::DegenerateInstance { .. })
        ));
    }

    #[test]
    fn negating_both_matrices_yields_identical_canonical_pair() {
        let inst = sample();
        let neg = Instance::new(
            "neg",
            inst.a().mapv(|v: f64| -v),
            inst.b().mapv(|v: f64| -v),
        )
        .unwrap();
        let p = TripodParams::default();
        let s1 = standardize(&inst, p).unwrap();
        let s2 = standardize(&neg, p).unwrap();
        for (u, v) in s1.d.iter().zip(s2.d.iter()) {
            assert!((u - v).abs() < 1e-9);
        }
        for (u, v) in s1.f.iter().zip(s2.f.iter()) {
            assert!((u - v).abs() < 1e-9);
        }
        assert_eq!(s1.swapped, s2.swapped);
    }

    #[test]
    fn idempotent_within_tolerance() {
        let p = TripodParams::default();
        let s1 = standardize(&sample(), p).unwrap();
        let s2 = standardize(&s1.to_instance("again"), p).unwrap();
        for (u, v) in s1.d.iter().zip(s2.d.iter()) {
            assert!((u - v).abs() < 1e-9);
        }
        for (u, v) in s1.f.iter().zip(s2.f.iter()) {
            assert!((u - v).abs() < 1e-9);
        }
    }
}
