//! A compact max-min ant system: per-assignment pheromone with upper and
//! lower bounds, a small colony per iteration, and pairwise-exchange descent
//! applied to every constructed solution.

use std::time::Instant;

use qap_core::{Instance, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::descent::descend;
use crate::trace::{exhausted, RunTrace};

/// Ants constructed per iteration.
pub const MMAS_ANTS: usize = 5;
/// Pheromone evaporation rate per iteration.
pub const MMAS_EVAPORATION: f64 = 0.02;
/// Pheromone deposited by the iteration-best solution.
pub const MMAS_DEPOSIT: f64 = 1.0;

/// Pheromone trail over (position, location) assignments, kept inside
/// max-min bounds so no assignment is ever starved or saturated.
struct Pheromone {
    n: usize,
    tau: Vec<f64>,
    tau_max: f64,
    tau_min: f64,
}

impl Pheromone {
    fn new(n: usize) -> Self {
        let tau_max = MMAS_DEPOSIT / MMAS_EVAPORATION;
        let tau_min = tau_max / (2.0 * n as f64);
        Pheromone { n, tau: vec![tau_max; n * n], tau_max, tau_min }
    }

    /// Samples one assignment: walks positions in order and draws each
    /// location among the still-unused ones with probability proportional
    /// to its pheromone.
    fn construct(&self, rng: &mut ChaCha8Rng) -> Permutation {
        let n = self.n;
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for position in 0..n {
            let row = &self.tau[position * n..(position + 1) * n];
            let total: f64 = remaining.iter().map(|&loc| row[loc]).sum();
            let mut ticket = rng.gen::<f64>() * total;
            let mut chosen = remaining.len() - 1;
            for (slot, &loc) in remaining.iter().enumerate() {
                ticket -= row[loc];
                if ticket <= 0.0 {
                    chosen = slot;
                    break;
                }
            }
            images.push(remaining.swap_remove(chosen));
        }
        Permutation::from_images(images).expect("construction uses each location once")
    }

    /// Evaporates every trail, lets the iteration-best solution deposit,
    /// then clamps all entries back into the max-min band.
    fn update(&mut self, iteration_best: &Permutation) {
        for value in &mut self.tau {
            *value *= 1.0 - MMAS_EVAPORATION;
        }
        let n = self.n;
        for (position, &location) in iteration_best.as_slice().iter().enumerate() {
            self.tau[position * n + location] += MMAS_DEPOSIT;
        }
        for value in &mut self.tau {
            *value = value.clamp(self.tau_min, self.tau_max);
        }
    }
}

/// Runs the max-min ant system on `inst` until the budget runs out.
///
/// Iteration 0 builds the first wave of ants (pheromone starts uniform, so
/// the wave is effectively random) and seeds the incumbent with its best
/// descended member; every later iteration constructs a fresh wave biased
/// by the pheromone, descends each ant, and lets the iteration best deposit.
/// At least the initial wave always runs. Under an iteration budget the run
/// is fully deterministic per seed.
pub fn solve_mmas_lite(inst: &Instance, budget: Budget, seed: u64) -> RunTrace {
    let n = inst.n();
    assert!(n >= 2, "need at least two positions to search");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let mut pheromone = Pheromone::new(n);

    let (wave_best, wave_cost) = wave(inst, &pheromone, &mut rng);
    pheromone.update(&wave_best);
    let mut trace = RunTrace::new(wave_best, wave_cost);

    let mut iteration = 1u64;
    while !exhausted(budget, iteration, &started) {
        let (wave_best, wave_cost) = wave(inst, &pheromone, &mut rng);
        trace.offer(iteration, &wave_best, wave_cost, &started);
        pheromone.update(&wave_best);
        trace.iterations = iteration;
        iteration += 1;
    }
    trace
}

/// Constructs and descends one colony wave, returning its best member.
fn wave(inst: &Instance, pheromone: &Pheromone, rng: &mut ChaCha8Rng) -> (Permutation, f64) {
    let mut best: Option<(Permutation, f64)> = None;
    for _ in 0..MMAS_ANTS {
        let ant = pheromone.construct(rng);
        let (perm, cost) = descend(inst, ant);
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((perm, cost));
        }
    }
    best.expect("colony always has at least one ant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::SeedableRng;

    fn fixture(n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Array2::from_shape_fn((n, n), |_| rng.gen_range(0..40) as f64);
        let b = Array2::from_shape_fn((n, n), |_| rng.gen_range(0..40) as f64);
        Instance::new("mmas fixture", a, b).unwrap()
    }

    #[test]
    fn pheromone_stays_inside_the_max_min_band() {
        let mut pheromone = Pheromone::new(6);
        let best = Permutation::identity(6);
        for _ in 0..2000 {
            pheromone.update(&best);
        }
        for &value in &pheromone.tau {
            assert!(value >= pheromone.tau_min - 1e-12);
            assert!(value <= pheromone.tau_max + 1e-12);
        }
        // Entries off the reinforced diagonal must have evaporated to the floor.
        assert!((pheromone.tau[1] - pheromone.tau_min).abs() < 1e-12);
        // Reinforced entries must sit at the ceiling.
        assert!((pheromone.tau[0] - pheromone.tau_max).abs() < 1e-9);
    }

    #[test]
    fn construction_yields_valid_permutations() {
        let pheromone = Pheromone::new(9);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let p = pheromone.construct(&mut rng);
            let mut seen = vec![false; 9];
            for &loc in p.as_slice() {
                assert!(!seen[loc], "each location used exactly once");
                seen[loc] = true;
            }
        }
    }

    #[test]
    fn construction_follows_the_pheromone_bias() {
        // Saturate the diagonal: construction should almost always pick it.
        let mut pheromone = Pheromone::new(5);
        let best = Permutation::identity(5);
        for _ in 0..2000 {
            pheromone.update(&best);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let hits = (0..200)
            .filter(|_| pheromone.construct(&mut rng).as_slice() == best.as_slice())
            .count();
        assert!(hits > 120, "saturated trail drew the best assignment only {hits}/200 times");
    }

    #[test]
    fn identical_seeds_reproduce_identical_cost_traces() {
        let inst = fixture(8, 21);
        let a = solve_mmas_lite(&inst, Budget::Iterations(60), 5);
        let b = solve_mmas_lite(&inst, Budget::Iterations(60), 5);
        assert_eq!(a.incumbents, b.incumbents);
        assert_eq!(a.best_perm.as_slice(), b.best_perm.as_slice());
    }

    #[test]
    fn incumbent_trace_is_strictly_decreasing() {
        let inst = fixture(10, 22);
        let trace = solve_mmas_lite(&inst, Budget::Iterations(120), 9);
        for pair in trace.incumbents.windows(2) {
            assert!(pair[1].1 < pair[0].1);
            assert!(pair[1].0 > pair[0].0);
        }
        assert_eq!(qap_core::cost(&inst, &trace.best_perm), trace.best_cost);
        assert_eq!(trace.iterations, 120);
    }
}
