//! Core types and exact mathematics for Quadratic Assignment Problem
//! (QAP) instances.
//!
//! An instance is a pair of square matrices `(A, B)`; a solution is a
//! permutation `φ` with cost `Q(φ) = Σ_{i,j} a_ij · b_{φ(i)φ(j)}`. This
//! crate provides:
//!
//! - [`Instance`] / [`Permutation`] representation with validation;
//! - cost evaluation, O(n) swap deltas, and an incrementally-maintained
//!   [`DeltaTable`] for local search ([`cost`]);
//! - exact O(n²) cost statistics over uniformly random permutations —
//!   mean, variance, all-pairs conditional means, and the one-swap cost
//!   autocorrelation ([`stats`]);
//! - the transforms connecting equivalent instances ([`transforms`]);
//! - canonical standard-form normalization, which collapses each
//!   equivalence class to a single `(D, F)` pair ([`standard`]), driven by
//!   the triangle-dominance score ([`tripod`]).
//!
//! Randomness is deliberately kept out of this crate: the only entry point
//! that needs it, [`Permutation::random_with`], takes a caller-supplied
//! index sampler.

pub mod cost;
pub mod error;
pub mod forms;
pub mod instance;
pub mod perm;
pub mod standard;
pub mod stats;
pub mod transforms;
pub mod tripod;

pub use cost::{cost, delta_cost_swap, DeltaTable};
pub use error::CoreError;
pub use forms::{
    diagonal_mean, entry_stddev, offdiagonal_mean, zero_mean_form, zero_minimum_form,
};
pub use instance::{is_symmetric, Instance};
pub use perm::Permutation;
pub use standard::{standardize, StandardFormInstance};
pub use stats::{
    conditional_mean_all, conditional_mean_all_naive, cost_statistics, mean_cost,
    swap_autocorrelation, variance_cost, CostStatistics, MatrixAggregates,
};
pub use transforms::{apply_equivalence_transform, EquivalenceTransform};
pub use tripod::{tripod_score, TripodParams};
