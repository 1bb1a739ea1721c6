//! Maximum-likelihood fit of a beta distribution to matrix entries.

use crate::special::{digamma, trigamma};

/// Values this close to the interval ends are pulled inside before taking
/// logs — min–max rescaling always puts observations exactly at 0 and 1,
/// where the beta log-likelihood diverges.
const EDGE: f64 = 1e-6;

/// Iteration cap before falling back to the method-of-moments estimate.
const MAX_ITERS: usize = 200;

/// Fitted shape parameters of a beta distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaFit {
    pub alpha: f64,
    pub beta: f64,
}

/// Fits Beta(α, β) to `values` after linearly rescaling them onto [0, 1].
///
/// The fit maximizes likelihood by Newton iteration on the digamma score
/// equations, seeded from the method-of-moments estimate; if the iteration
/// has not converged after 200 steps the moments estimate itself is
/// returned. A constant input carries no shape information and reports
/// α = β = 1 (the uniform density).
pub fn fit_beta(values: &[f64]) -> BetaFit {
    assert!(!values.is_empty(), "cannot fit a distribution to no data");
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return BetaFit { alpha: 1.0, beta: 1.0 };
    }

    let count = values.len() as f64;
    let mut mean = 0.0;
    let mut log_u = 0.0;
    let mut log_1mu = 0.0;
    let mut sq = 0.0;
    for &v in values {
        let u = ((v - lo) / (hi - lo)).clamp(EDGE, 1.0 - EDGE);
        mean += u;
        sq += u * u;
        log_u += u.ln();
        log_1mu += (1.0 - u).ln();
    }
    mean /= count;
    log_u /= count;
    log_1mu /= count;
    let var = (sq / count - mean * mean).max(0.0);

    // Method-of-moments seed (and fallback).
    let mom = if var <= 1e-12 {
        BetaFit { alpha: 1.0, beta: 1.0 }
    } else {
        let common = (mean * (1.0 - mean) / var - 1.0).max(1e-3);
        BetaFit { alpha: (mean * common).max(1e-3), beta: ((1.0 - mean) * common).max(1e-3) }
    };

    let (mut alpha, mut beta) = (mom.alpha, mom.beta);
    for _ in 0..MAX_ITERS {
        let psi_sum = digamma(alpha + beta);
        let f1 = digamma(alpha) - psi_sum - log_u;
        let f2 = digamma(beta) - psi_sum - log_1mu;
        if f1.abs() + f2.abs() < 1e-10 {
            return BetaFit { alpha, beta };
        }
        let tri_sum = trigamma(alpha + beta);
        let jaa = trigamma(alpha) - tri_sum;
        let jbb = trigamma(beta) - tri_sum;
        let det = jaa * jbb - tri_sum * tri_sum;
        if !det.is_finite() || det.abs() < 1e-300 {
            break;
        }
        // Newton step for [f1, f2] = 0, damped to keep both shapes positive.
        let da = (f1 * jbb + f2 * tri_sum) / det;
        let db = (f2 * jaa + f1 * tri_sum) / det;
        let mut lambda = 1.0;
        while alpha - lambda * da <= 0.0 || beta - lambda * db <= 0.0 {
            lambda *= 0.5;
            if lambda < 1e-12 {
                return mom;
            }
        }
        alpha -= lambda * da;
        beta -= lambda * db;
    }
    mom
}
