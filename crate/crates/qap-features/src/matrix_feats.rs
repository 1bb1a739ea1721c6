//! The twelve measurements applied to a single standard-form matrix.
//!
//! Order (matching the feature catalog): Normalised Mean, Trace
//! Proportion, Sparsity, Dominance, TRIPOD Score, Diversity, Outliers,
//! Skewness, Kurtosis, Betafit Alpha, Betafit Beta, Near Similarity.
//! The first four are computed on the zero-minimum form of the matrix; the
//! rest read the matrix as given.

use ndarray::Array2;
use qap_core::{tripod_score, zero_minimum_form, TripodParams};

use crate::betafit::fit_beta;
use crate::scaling::scale_into;

/// Number of per-matrix features.
pub const MATRIX_FEATURE_COUNT: usize = 12;

/// Computes all twelve per-matrix features of a standard-form matrix.
pub fn matrix_features(m: &Array2<f64>) -> [f64; MATRIX_FEATURE_COUNT] {
    let z = zero_minimum_form(m);
    let values: Vec<f64> = m.iter().copied().collect();
    let fitted = fit_beta(&values);
    [
        normalised_mean(&z),
        trace_proportion(&z),
        sparsity(&z),
        dominance(m),
        tripod_score(m, TripodParams::default()),
        diversity(m),
        outliers(m),
        scale_into(skewness(m), 2.0, 0.0, 1.0),
        scale_into(excess_kurtosis(m), 10.0, 0.0, 1.0),
        scale_into(fitted.alpha, 1.0, 0.0, 1.0),
        scale_into(fitted.beta, 1.0, 0.0, 1.0),
        near_similarity(m),
    ]
}

/// Mean of the zero-minimum entries divided by their maximum; 0 for an
/// all-zero zero-minimum form (a constant matrix has no scale to report).
fn normalised_mean(z: &Array2<f64>) -> f64 {
    let max = z.iter().copied().fold(0.0f64, f64::max);
    if max <= 0.0 {
        return 0.0;
    }
    z.sum() / z.len() as f64 / max
}

/// Diagonal share of the total zero-minimum mass; 0 when that mass is zero.
fn trace_proportion(z: &Array2<f64>) -> f64 {
    let total = z.sum();
    if total <= 0.0 {
        return 0.0;
    }
    (0..z.nrows()).map(|i| z[(i, i)]).sum::<f64>() / total
}

/// Fraction of zero entries in the zero-minimum form.
fn sparsity(z: &Array2<f64>) -> f64 {
    z.iter().filter(|&&v| v == 0.0).count() as f64 / z.len() as f64
}

/// Coefficient-of-variation position of the zero-minimum form between the
/// two reference matrices: the single-spike matrix H (one 1 among zeros,
/// the most concentrated possible, scoring 0) and the flat matrix J − I
/// (scoring 1). A constant matrix has zero variation and clamps to 1.
pub fn dominance(m: &Array2<f64>) -> f64 {
    dominance_of_reduced(&zero_minimum_form(m))
}

/// The dominance formula applied to an already zero-minimum matrix.
pub fn dominance_of_reduced(z: &Array2<f64>) -> f64 {
    let n = z.nrows();
    let count = z.len() as f64;
    let mean = z.sum() / count;
    let cv = if mean <= 0.0 {
        0.0
    } else {
        let var = z.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / count;
        var.sqrt() / mean
    };
    // CV(H) = √(n²−1); CV(J−I) = 1/√(n−1).
    let cv_high = (count - 1.0).sqrt();
    let cv_low = 1.0 / ((n - 1) as f64).sqrt();
    ((cv_high - cv) / (cv_high - cv_low)).clamp(0.0, 1.0)
}

/// Duplicate-count diversity: 0 when every entry is identical, 1 when all
/// n² entries are distinct, and in between ½(2 − ln μ̄ / ln n) where μ̄ is
/// the mean over entries of "how many entries share my value".
pub fn diversity(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let count = m.len() as f64;
    let mut vals: Vec<f64> = m.iter().copied().collect();
    vals.sort_unstable_by(f64::total_cmp);
    // Each run of `len` equal values contributes len·len to the total of
    // per-entry duplicate counts.
    let mut total_counts = 0.0f64;
    let mut run_start = 0usize;
    for k in 1..=vals.len() {
        if k == vals.len() || vals[k] != vals[run_start] {
            let len = (k - run_start) as f64;
            total_counts += len * len;
            run_start = k;
        }
    }
    if total_counts >= count * count {
        return 0.0; // single run: all values identical
    }
    let mu = total_counts / count;
    (0.5 * (2.0 - mu.ln() / (n as f64).ln())).clamp(0.0, 1.0)
}

/// Fraction of entries farther than three standard deviations from the
/// mean (population moments over all n² entries).
fn outliers(m: &Array2<f64>) -> f64 {
    let count = m.len() as f64;
    let mean = m.sum() / count;
    let var = m.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / count;
    let limit = 3.0 * var.sqrt();
    m.iter().filter(|&&v| (v - mean).abs() > limit).count() as f64 / count
}

/// Population skewness of all entries; 0 for a spread-free matrix.
fn skewness(m: &Array2<f64>) -> f64 {
    let (m2, m3, _) = central_moments(m);
    if m2 <= 0.0 {
        return 0.0;
    }
    m3 / m2.powf(1.5)
}

/// Population excess kurtosis (normal = 0); 0 for a spread-free matrix.
fn excess_kurtosis(m: &Array2<f64>) -> f64 {
    let (m2, _, m4) = central_moments(m);
    if m2 <= 0.0 {
        return 0.0;
    }
    m4 / (m2 * m2) - 3.0
}

fn central_moments(m: &Array2<f64>) -> (f64, f64, f64) {
    let count = m.len() as f64;
    let mean = m.sum() / count;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in m {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / count, m3 / count, m4 / count)
}

/// Do nearby locations look alike? Reads the matrix as distances: rescales
/// the zero-minimum form onto [0, 1], scores every ordered pair (i, j) by
/// how similar the two locations' distance profiles are (a weighted mean
/// absolute difference, weighting pairs of small distances up), and
/// averages those similarity scores with more weight on pairs that are
/// close in at least one direction. 0 for matrices too small or too flat
/// to compare profiles.
pub fn near_similarity(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    if n < 3 {
        return 0.0;
    }
    let mut d = zero_minimum_form(m);
    let max = d.iter().copied().fold(0.0f64, f64::max);
    if max <= 0.0 {
        return 0.0;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                d[(i, j)] = 0.0;
            } else {
                d[(i, j)] /= max;
            }
        }
    }

    let floor = 1.0 / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let mut weighted_similarity = 0.0;
        let mut closeness_total = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            // Similarity of the distance profiles of i and j over every
            // other location k, pairing the outgoing and incoming entries.
            let mut diff_sum = 0.0;
            let mut weight_sum = 0.0;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                for (vi, vj) in [(d[(i, k)], d[(j, k)]), (d[(k, i)], d[(k, j)])] {
                    let w = (1.0 - vi * vj).max(floor);
                    diff_sum += (vi - vj).abs() * w;
                    weight_sum += w;
                }
            }
            let similarity = 1.0 - diff_sum / weight_sum;
            // Closeness weight: symmetrized distance pulled toward the
            // smaller direction, peaking for pairs at distance 0.
            let sym = (d[(i, j)] + d[(j, i)] + d[(i, j)].min(d[(j, i)])) / 3.0;
            let closeness = (sym - 1.0) * (sym - 1.0);
            weighted_similarity += similarity * closeness;
            closeness_total += closeness;
        }
        if closeness_total > 0.0 {
            total += weighted_similarity / (n as f64 * closeness_total);
        }
    }
    total.clamp(0.0, 1.0)
}
