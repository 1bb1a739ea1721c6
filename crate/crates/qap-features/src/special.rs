//! Digamma and trigamma, needed by the maximum-likelihood beta fit.
//!
//! Standard evaluation scheme: the recurrence ψ(x) = ψ(x+1) − 1/x pushes
//! the argument above 10, where the asymptotic (Bernoulli-number) series
//! converges to well below 1e-12 — more than enough headroom for Newton
//! iterations that stop at 1e-10.

/// Digamma ψ(x) for x > 0.
pub(crate) fn digamma(mut x: f64) -> f64 {
    debug_assert!(x > 0.0, "digamma needs a positive argument");
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // ψ(x) ≈ ln x − 1/(2x) − 1/(12x²) + 1/(120x⁴) − 1/(252x⁶) + 1/(240x⁸)
    acc + x.ln()
        - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0))))
}

/// Trigamma ψ′(x) for x > 0.
pub(crate) fn trigamma(mut x: f64) -> f64 {
    debug_assert!(x > 0.0, "trigamma needs a positive argument");
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // ψ′(x) ≈ 1/x + 1/(2x²) + 1/(6x³) − 1/(30x⁵) + 1/(42x⁷) − 1/(30x⁹)
    acc + inv
        + 0.5 * inv2
        + inv * inv2
            * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn digamma_matches_textbook_values() {
        assert_abs_diff_eq!(digamma(1.0), -EULER_GAMMA, epsilon = 1e-12);
        assert_abs_diff_eq!(digamma(0.5), -EULER_GAMMA - 2.0 * 2.0f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(digamma(2.0), 1.0 - EULER_GAMMA, epsilon = 1e-12);
        // ψ(6) = 1 + 1/2 + 1/3 + 1/4 + 1/5 − γ
        let harmonic5 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
        assert_abs_diff_eq!(digamma(6.0), harmonic5 - EULER_GAMMA, epsilon = 1e-12);
    }

    #[test]
    fn trigamma_matches_textbook_values() {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert_abs_diff_eq!(trigamma(1.0), pi2 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trigamma(0.5), pi2 / 2.0, epsilon = 1e-12);
        // ψ′(3) = π²/6 − 1 − 1/4
        assert_abs_diff_eq!(trigamma(3.0), pi2 / 6.0 - 1.25, epsilon = 1e-12);
    }

    #[test]
    fn recurrences_hold_across_the_argument_range() {
        for k in 1..200 {
            let x = 0.07 * k as f64;
            assert_abs_diff_eq!(digamma(x + 1.0), digamma(x) + 1.0 / x, epsilon = 1e-11);
            assert_abs_diff_eq!(trigamma(x + 1.0), trigamma(x) - 1.0 / (x * x), epsilon = 1e-11);
        }
    }
}
