//! Run traces shared by the solvers.

use std::time::Instant;

use qap_core::Permutation;

use crate::budget::Budget;

/// Everything a solver run produces.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub best_cost: f64,
    pub best_perm: Permutation,
    /// Wall-clock seconds from start until the incumbent last improved.
    pub time_to_best: f64,
    /// Iteration at which the incumbent last improved.
    pub iteration_of_best: u64,
    /// (iteration, incumbent cost) at every improvement; costs are
    /// strictly decreasing down the list.
    pub incumbents: Vec<(u64, f64)>,
    /// Iterations actually executed.
    pub iterations: u64,
}

impl RunTrace {
    pub(crate) fn new(start_perm: Permutation, start_cost: f64) -> Self {
        RunTrace {
            best_cost: start_cost,
            best_perm: start_perm,
            time_to_best: 0.0,
            iteration_of_best: 0,
            incumbents: vec![(0, start_cost)],
            iterations: 0,
        }
    }

    /// Adopts a new incumbent if it strictly improves the best cost.
    pub(crate) fn offer(
        &mut self,
        iteration: u64,
        perm: &Permutation,
        cost: f64,
        started: &Instant,
    ) {
        if cost < self.best_cost {
            self.best_cost = cost;
            self.best_perm = perm.clone();
            self.time_to_best = started.elapsed().as_secs_f64();
            self.iteration_of_best = iteration;
            self.incumbents.push((iteration, cost));
        }
    }
}

/// True once the budget allows no further iteration. `next_iteration` is
/// the 1-based index of the iteration about to run.
pub(crate) fn exhausted(budget: Budget, next_iteration: u64, started: &Instant) -> bool {
    match budget {
        Budget::Iterations(max) => next_iteration > max,
        Budget::Seconds(s) => started.elapsed().as_secs_f64() >= s,
    }
}
