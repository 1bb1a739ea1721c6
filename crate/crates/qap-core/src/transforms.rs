//! Cost-preserving and cost-affine transforms between equivalent instances.
//!
//! Each variant of [`EquivalenceTransform`] maps an instance to another one
//! whose cost landscape is the same up to a known affine relation (and, for
//! relabeling and matrix exchange, a known bijection of the permutation
//! set). The exact relations, with `Q` the original cost and `Q'` the
//! transformed cost:
//!
//! | transform              | relation                                             |
//! |------------------------|------------------------------------------------------|
//! | `Relabel(τ, θ)`        | `Q'(φ) = Q(θ∘φ∘τ⁻¹)`                                 |
//! | `SwapMatrices`         | `Q'(φ) = Q(φ⁻¹)`                                     |
//! | `Symmetrize`           | `Q'(φ) = Q(φ)` (needs one matrix already symmetric)  |
//! | `Scale(c₁, c₂)`        | `Q'(φ) = c₁c₂·Q(φ)`                                  |
//! | `ShiftDiag(c₁, c₂)`    | `Q'(φ) = Q(φ) + c₂·tr(A) + c₁·tr(B) + n·c₁c₂`        |
//! | `ShiftOffdiag(c₁, c₂)` | `Q'(φ) = Q(φ) + c₂·off(A) + c₁·off(B) + n(n−1)c₁c₂`  |
//! | `Negate`               | `Q'(φ) = Q(φ)`                                       |
//!
//! where `off(M)` is the sum of M's off-diagonal entries.

use ndarray::Array2;

use crate::error::CoreError;
use crate::instance::{is_symmetric, Instance};
use crate::perm::Permutation;

/// A transform connecting equivalent instances.
#[derive(Debug, Clone)]
pub enum EquivalenceTransform {
    /// Reindex the first matrix by `tau` and the second by `theta`:
    /// entry (i, j) of the new first matrix is `a[τ(i), τ(j)]`.
    Relabel { tau: Permutation, theta: Permutation },
    /// Exchange the two matrices.
    SwapMatrices,
    /// Replace the asymmetric matrix by `(M + Mᵀ)/2`. Only valid when the
    /// other matrix is symmetric (the cross terms then cancel exactly).
    Symmetrize,
    /// Multiply the first matrix by `c1 > 0` and the second by `c2 > 0`.
    Scale { c1: f64, c2: f64 },
    /// Add `c1` to every diagonal entry of the first matrix and `c2` to
    /// every diagonal entry of the second.
    ShiftDiag { c1: f64, c2: f64 },
    /// Add `c1` to every off-diagonal entry of the first matrix and `c2`
    /// to every off-diagonal entry of the second.
    ShiftOffdiag { c1: f64, c2: f64 },
    /// Negate both matrices.
    Negate,
}

/// Applies `transform` to `inst`, preserving label and metadata.
///
/// # Errors
/// - [`CoreError::InvalidPermutation`] when a relabeling permutation has
///   the wrong length.
/// - [`CoreError::InvalidTransform`] for nonpositive scale constants, or
///   for `Symmetrize` when neither matrix is symmetric.
pub fn apply_equivalence_transform(
    inst: &Instance,
    transform: &EquivalenceTransform,
) -> Result<Instance, CoreError> {
    let n = inst.n();
    let (a, b) = match transform {
        EquivalenceTransform::Relabel { tau, theta } => {
            if tau.n() != n || theta.n() != n {
                return Err(CoreError::InvalidPermutation {
                    reason: format!(
                        "relabel permutations have lengths {} and {}, instance has n = {}",
                        tau.n(),
                        theta.n(),
                        n
                    ),
                });
            }
            (reindex(inst.a(), tau), reindex(inst.b(), theta))
        }
        EquivalenceTransform::SwapMatrices => (inst.b().clone(), inst.a().clone()),
        EquivalenceTransform::Symmetrize => {
            let a_sym = is_symmetric(inst.a());
            let b_sym = is_symmetric(inst.b());
            if !a_sym && !b_sym {
                return Err(CoreError::InvalidTransform {
                    reason: "symmetrize requires at least one symmetric matrix".to_string(),
                });
            }
            let a = if a_sym { inst.a().clone() } else { symmetric_part(inst.a()) };
            let b = if b_sym { inst.b().clone() } else { symmetric_part(inst.b()) };
            (a, b)
        }
        EquivalenceTransform::Scale { c1, c2 } => {
            let valid = |c: f64| c.is_finite() && c > 0.0;
            if !valid(*c1) || !valid(*c2) {
                return Err(CoreError::InvalidTransform {
                    reason: format!("scale constants must be positive, got ({c1}, {c2})"),
                });
            }
            (inst.a().mapv(|v| v * c1), inst.b().mapv(|v| v * c2))
        }
        EquivalenceTransform::ShiftDiag { c1, c2 } => {
            let mut a = inst.a().clone();
            let mut b = inst.b().clone();
            for i in 0..n {
                a[(i, i)] += c1;
                b[(i, i)] += c2;
            }
            (a, b)
        }
        EquivalenceTransform::ShiftOffdiag { c1, c2 } => {
            let mut a = inst.a().clone();
            let mut b = inst.b().clone();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        a[(i, j)] += c1;
                        b[(i, j)] += c2;
                    }
                }
            }
            (a, b)
        }
        EquivalenceTransform::Negate => (inst.a().mapv(|v| -v), inst.b().mapv(|v| -v)),
    };
    let mut out = Instance::new(inst.label(), a, b)?;
    for (k, v) in inst.metadata() {
        out.set_metadata(k.clone(), v.clone());
    }
    Ok(out)
}

fn reindex(m: &Array2<f64>, p: &Permutation) -> Array2<f64> {
    let n = m.nrows();
    Array2::from_shape_fn((n, n), |(i, j)| m[(p.image(i), p.image(j))])
}

fn symmetric_part(m: &Array2<f64>) -> Array2<f64> {
    (m + &m.t()) / 2.0
}
