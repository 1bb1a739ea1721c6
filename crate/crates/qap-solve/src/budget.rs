//! Per-instance runtime budgets.

/// The exponential-in-n wall-clock budget `t(n) = max{a·e^{b·n}, floor}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeBudget {
    pub a: f64,
    pub b: f64,
    /// Smallest budget ever granted, in seconds.
    pub floor: f64,
}

impl Default for TimeBudget {
    fn default() -> Self {
        TimeBudget { a: 56.45, b: 0.0193, floor: 5.0 }
    }
}

impl TimeBudget {
    /// Budget in seconds for an instance of size `n`.
    pub fn seconds_for(&self, n: usize) -> f64 {
        debug_assert!(self.a > 0.0 && self.b > 0.0 && self.floor > 0.0);
        (self.a * (self.b * n as f64).exp()).max(self.floor)
    }
}

/// How long a solver run is allowed to go on. Iteration budgets make runs
/// fully deterministic per seed; wall-clock budgets follow [`TimeBudget`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Seconds(f64),
    Iterations(u64),
}
