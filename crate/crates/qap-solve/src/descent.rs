//! Shared pairwise-exchange local search.

use qap_core::{DeltaTable, Instance, Permutation};

/// Runs steepest pairwise-exchange descent to a local optimum, returning
/// the optimum and its cost.
pub(crate) fn descend(inst: &Instance, start: Permutation) -> (Permutation, f64) {
    let mut table = DeltaTable::new(inst, start);
    while let Some((i, j, _)) = table.best_improving_move() {
        table.apply(i, j);
    }
    (table.perm().clone(), table.cost())
}
