//! Iterated local search: steepest pairwise-exchange descent, perturbed by
//! random 3-exchanges of the best solution found so far.

use std::time::Instant;

use qap_core::{Instance, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::descent::descend;
use crate::trace::{exhausted, RunTrace};

/// Runs iterated local search on `inst` until the budget runs out.
///
/// Iteration 0 descends from a seeded random permutation; every later
/// iteration perturbs the *best* permutation (restart-from-best) with a
/// uniformly random 3-exchange and descends again, keeping the result only
/// when it strictly improves. At least the initial descent always runs.
/// Under an iteration budget the run is fully deterministic per seed.
pub fn solve_ils(inst: &Instance, budget: Budget, seed: u64) -> RunTrace {
    let n = inst.n();
    assert!(n >= 2, "need at least two positions to search");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();

    let start = Permutation::random_with(n, |bound| rng.gen_range(0..bound));
    let (perm, cost) = descend(inst, start);
    let mut trace = RunTrace::new(perm, cost);

    let mut iteration = 1u64;
    while !exhausted(budget, iteration, &started) {
        let mut candidate = trace.best_perm.clone();
        perturb(&mut candidate, &mut rng);
        let (perm, cost) = descend(inst, candidate);
        trace.offer(iteration, &perm, cost, &started);
        trace.iterations = iteration;
        iteration += 1;
    }
    trace
}

/// Rotates the images of three distinct random positions (two positions
/// when n = 2, where no 3-exchange exists).
fn perturb(perm: &mut Permutation, rng: &mut ChaCha8Rng) {
    let n = perm.n();
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    if n == 2 {
        perm.swap_positions(i, j);
        return;
    }
    let mut k = rng.gen_range(0..n - 2);
    let (lo, hi) = (i.min(j), i.max(j));
    if k >= lo {
        k += 1;
    }
    if k >= hi {
        k += 1;
    }
    // Two transpositions make the 3-cycle i→j→k→i on images.
    perm.swap_positions(i, j);
    perm.swap_positions(j, k);
}
