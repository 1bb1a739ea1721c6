//! Exact cost statistics over the uniform distribution on permutations.
//!
//! Everything here reduces moments of the cost function to O(n²)
//! matrix aggregates. The identity used throughout: for index tuples
//! `(i,j,k,l)`, the expectation `E[b_{φ(i)φ(j)} · b_{φ(k)φ(l)}]` over a
//! uniform permutation depends only on the *coincidence pattern* of the
//! tuple (which positions hold equal indices). There are 15 such patterns
//! (the set partitions of four elements), so the second moment — and, with a
//! pattern-transition step, the cost correlation along one random 2-swap —
//! is a short sum of per-pattern aggregate products.

use ndarray::Array2;

use crate::error::CoreError;
use crate::instance::Instance;

/// O(n²) sums of one data matrix, sufficient for every statistic here.
#[derive(Debug, Clone)]
pub struct MatrixAggregates {
    n: usize,
    /// Σ mᵢᵢ
    trace: f64,
    /// Σ_{i≠j} mᵢⱼ
    off_total: f64,
    /// Σ mᵢᵢ²
    diag_sq: f64,
    /// Σ_{i≠j} mᵢⱼ²
    off_sq: f64,
    /// Σ_{i≠j} mᵢⱼ·mⱼᵢ
    off_transpose: f64,
    /// Off-diagonal row sums rᵢ = Σ_{j≠i} mᵢⱼ
    row: Vec<f64>,
    /// Off-diagonal column sums cᵢ = Σ_{j≠i} mⱼᵢ
    col: Vec<f64>,
    sum_row_sq: f64,
    sum_col_sq: f64,
    sum_row_col: f64,
    sum_diag_row: f64,
    sum_diag_col: f64,
}

impl MatrixAggregates {
    pub fn compute(m: &Array2<f64>) -> Self {
        let n = m.nrows();
        let mut agg = MatrixAggregates {
            n,
            trace: 0.0,
            off_total: 0.0,
            diag_sq: 0.0,
            off_sq: 0.0,
            off_transpose: 0.0,
            row: vec![0.0; n],
            col: vec![0.0; n],
            sum_row_sq: 0.0,
            sum_col_sq: 0.0,
            sum_row_col: 0.0,
            sum_diag_row: 0.0,
            sum_diag_col: 0.0,
        };
        for i in 0..n {
            agg.trace += m[(i, i)];
            agg.diag_sq += m[(i, i)] * m[(i, i)];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = m[(i, j)];
                agg.off_total += v;
                agg.off_sq += v * v;
                agg.off_transpose += v * m[(j, i)];
                agg.row[i] += v;
                agg.col[j] += v;
            }
        }
        for i in 0..n {
            agg.sum_row_sq += agg.row[i] * agg.row[i];
            agg.sum_col_sq += agg.col[i] * agg.col[i];
            agg.sum_row_col += agg.row[i] * agg.col[i];
            agg.sum_diag_row += m[(i, i)] * agg.row[i];
            agg.sum_diag_col += m[(i, i)] * agg.col[i];
        }
        agg
    }

    /// Off-diagonal row sum at `i`.
    pub fn row_sum(&self, i: usize) -> f64 {
        self.row[i]
    }

    /// Off-diagonal column sum at `i`.
    pub fn col_sum(&self, i: usize) -> f64 {
        self.col[i]
    }

    /// Σ of off-diagonal entries.
    pub fn off_total(&self) -> f64 {
        self.off_total
    }

    /// Trace.
    pub fn trace(&self) -> f64 {
        self.trace
    }
}

/// The 15 coincidence patterns of a 4-tuple `(i,j,k,l)`, written as
/// first-occurrence canonical tuples. `(i,j)` indexes the first cost factor,
/// `(k,l)` the second.
const PATTERNS: [[usize; 4]; 15] = [
    [0, 0, 0, 0], // 0
    [0, 0, 1, 1], // 1
    [0, 0, 0, 1], // 2
    [0, 0, 1, 0], // 3
    [0, 0, 1, 2], // 4
    [0, 1, 0, 0], // 5
    [0, 1, 1, 1], // 6
    [0, 1, 2, 2], // 7
    [0, 1, 0, 1], // 8
    [0, 1, 1, 0], // 9
    [0, 1, 0, 2], // 10
    [0, 1, 1, 2], // 11
    [0, 1, 2, 0], // 12
    [0, 1, 2, 1], // 13
    [0, 1, 2, 3], // 14
];

/// Number of distinct indices in each pattern.
const PATTERN_ARITY: [usize; 15] = [1, 2, 2, 2, 3, 2, 2, 3, 2, 2, 3, 3, 3, 3, 4];

/// Canonicalizes a tuple by first-occurrence relabeling and returns its
/// pattern id.
fn classify(tuple: [usize; 4]) -> usize {
    let mut labels: [usize; 4] = [usize::MAX; 4];
    let mut canon = [0usize; 4];
    let mut next = 0;
    for (pos, &v) in tuple.iter().enumerate() {
        let mut found = None;
        for (slot, &lv) in labels.iter().enumerate().take(next) {
            if lv == v {
                found = Some(slot);
                break;
            }
        }
        canon[pos] = match found {
            Some(slot) => slot,
            None => {
                labels[next] = v;
                next += 1;
                next - 1
            }
        };
    }
    PATTERNS
        .iter()
        .position(|p| *p == canon)
        .expect("every 4-tuple matches one of the 15 set partitions")
}

/// Σ over index tuples of pattern `p` of `m_{ij} · m_{kl}`, from aggregates.
fn pattern_sum(a: &MatrixAggregates, p: usize) -> f64 {
    match p {
        0 => a.diag_sq,
        1 => a.trace * a.trace - a.diag_sq,
        2 | 5 => a.sum_diag_row,
        3 | 6 => a.sum_diag_col,
        4 | 7 => a.trace * a.off_total - a.sum_diag_row - a.sum_diag_col,
        8 => a.off_sq,
        9 => a.off_transpose,
        10 => a.sum_row_sq - a.off_sq,
        11 | 12 => a.sum_row_col - a.off_transpose,
        13 => a.sum_col_sq - a.off_sq,
        14 => {
            a.off_total * a.off_total + a.off_sq + a.off_transpose
                - a.sum_row_sq
                - a.sum_col_sq
                - 2.0 * a.sum_row_col
        }
        _ => unreachable!(),
    }
}

/// Falling factorial n·(n−1)···(n−m+1); the number of ways to assign the
/// pattern's distinct indices to distinct values.
fn falling(n: usize, m: usize) -> f64 {
    (0..m).map(|k| (n - k) as f64).product()
}

/// Exact mean cost over uniform permutations in O(n²).
pub fn mean_cost(inst: &Instance) -> f64 {
    let a = MatrixAggregates::compute(inst.a());
    let b = MatrixAggregates::compute(inst.b());
    mean_from_aggregates(&a, &b)
}

fn mean_from_aggregates(a: &MatrixAggregates, b: &MatrixAggregates) -> f64 {
    let n = a.n as f64;
    a.off_total * b.off_total / (n * (n - 1.0)) + a.trace * b.trace / n
}

/// Exact raw second moment E[Q²] from per-pattern aggregate products.
fn second_moment(a: &MatrixAggregates, b: &MatrixAggregates) -> f64 {
    let n = a.n;
    let mut total = 0.0;
    for (p, &m) in PATTERN_ARITY.iter().enumerate() {
        if n < m {
            // No tuples of this pattern exist; the aggregate expressions
            // telescope to zero up to rounding, so skip them outright.
            continue;
        }
        total += pattern_sum(a, p) * pattern_sum(b, p) / falling(n, m);
    }
    total
}

/// Exact variance of the cost over uniform permutations in O(n²).
pub fn variance_cost(inst: &Instance) -> f64 {
    let a = MatrixAggregates::compute(inst.a());
    let b = MatrixAggregates::compute(inst.b());
    variance_from_aggregates(&a, &b)
}

fn variance_from_aggregates(a: &MatrixAggregates, b: &MatrixAggregates) -> f64 {
    let mean = mean_from_aggregates(a, b);
    (second_moment(a, b) - mean * mean).max(0.0)
}

/// Exact conditional means E[Q | φ(x)=y] for all n² pairs in O(n²) total.
///
/// Each entry decomposes into products of "everything except row/column x"
/// sums of A with the matching sums of B at y, all available from the
/// precomputed aggregates.
///
/// # Errors
/// Requires n ≥ 3 (the decomposition divides by (n−1)(n−2)).
pub fn conditional_mean_all(inst: &Instance) -> Result<Array2<f64>, CoreError> {
    let n = inst.n();
    if n < 3 {
        return Err(CoreError::TooSmall { n, min: 3, context: "conditional_mean_all" });
    }
    let a = MatrixAggregates::compute(inst.a());
    let b = MatrixAggregates::compute(inst.b());
    let ma = inst.a();
    let mb = inst.b();
    let nf = n as f64;
    let mut out = Array2::zeros((n, n));
    for x in 0..n {
        let a_rest_off = a.off_total - a.row[x] - a.col[x];
        let a_rest_diag = a.trace - ma[(x, x)];
        for y in 0..n {
            let b_rest_off = b.off_total - b.row[y] - b.col[y];
            let b_rest_diag = b.trace - mb[(y, y)];
            out[(x, y)] = a_rest_off * b_rest_off / ((nf - 1.0) * (nf - 2.0))
                + a_rest_diag * b_rest_diag / (nf - 1.0)
                + (a.col[x] * b.col[y] + a.row[x] * b.row[y]) / (nf - 1.0)
                + ma[(x, x)] * mb[(y, y)];
        }
    }
    Ok(out)
}

/// Naive O(n⁴) reference for [`conditional_mean_all`]: recomputes every
/// partial sum from scratch for each (x, y) pair. Kept as an independently
/// readable cross-check and complexity baseline.
pub fn conditional_mean_all_naive(inst: &Instance) -> Result<Array2<f64>, CoreError> {
    let n = inst.n();
    if n < 3 {
        return Err(CoreError::TooSmall { n, min: 3, context: "conditional_mean_all_naive" });
    }
    let a = inst.a();
    let b = inst.b();
    let nf = n as f64;
    let mut out = Array2::zeros((n, n));
    for x in 0..n {
        for y in 0..n {
            let mut a_off = 0.0;
            let mut b_off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j && i != x && j != x {
                        a_off += a[(i, j)];
                    }
                    if i != j && i != y && j != y {
                        b_off += b[(i, j)];
                    }
                }
            }
            let mut a_diag = 0.0;
            let mut b_diag = 0.0;
            let mut a_col = 0.0;
            let mut b_col = 0.0;
            let mut a_row = 0.0;
            let mut b_row = 0.0;
            for i in 0..n {
                if i != x {
                    a_diag += a[(i, i)];
                    a_col += a[(i, x)];
                    a_row += a[(x, i)];
                }
                if i != y {
                    b_diag += b[(i, i)];
                    b_col += b[(i, y)];
                    b_row += b[(y, i)];
                }
            }
            out[(x, y)] = a_off * b_off / ((nf - 1.0) * (nf - 2.0))
                + a_diag * b_diag / (nf - 1.0)
                + (a_col * b_col + a_row * b_row) / (nf - 1.0)
                + a[(x, x)] * b[(y, y)];
        }
    }
    Ok(out)
}

/// Mean, variance, stddev, and the full conditional-mean matrix.
#[derive(Debug, Clone)]
pub struct CostStatistics {
    pub mean: f64,
    pub variance: f64,
    pub stddev: f64,
    /// Entry (x, y) = E[Q | φ(x) = y].
    pub conditional_means: Array2<f64>,
}

/// Computes all exact cost statistics in O(n²).
///
/// # Errors
/// Requires n ≥ 3 (conditional means).
pub fn cost_statistics(inst: &Instance) -> Result<CostStatistics, CoreError> {
    let conditional_means = conditional_mean_all(inst)?;
    let a = MatrixAggregates::compute(inst.a());
    let b = MatrixAggregates::compute(inst.b());
    let mean = mean_from_aggregates(&a, &b);
    let variance = variance_from_aggregates(&a, &b);
    Ok(CostStatistics { mean, variance, stddev: variance.sqrt(), conditional_means })
}

/// Exact first-step autocorrelation of the cost along the 2-swap
/// neighborhood: `ρ = (E[Q(φ)·Q(φ∘σ)] − E[Q]²) / Var(Q)` with φ uniform and
/// σ a uniform transposition. Returns `None` on a constant landscape.
///
/// The cross moment reuses the pattern decomposition: with ψ = φ∘σ, the
/// product expectation over φ of `b_{φ(i)φ(j)} b_{ψ(k)ψ(l)}` is the plain
/// pattern expectation of the tuple `(i, j, σ(k), σ(l))`. Averaging over σ
/// only needs, per starting pattern, the distribution of the resulting
/// pattern — computed below by enumerating how a transposition can hit the
/// tuple's distinct indices (everything outside the tuple is exchangeable,
/// so a handful of weighted cases covers all C(n,2) transpositions).
pub fn swap_autocorrelation(inst: &Instance) -> Option<f64> {
    let a = MatrixAggregates::compute(inst.a());
    let b = MatrixAggregates::compute(inst.b());
    let n = a.n;
    let mean = mean_from_aggregates(&a, &b);
    let m2 = second_moment(&a, &b);
    let var = m2 - mean * mean;
    if var <= 1e-12 * m2.abs().max(1.0) {
        return None;
    }

    let pair_count = (n * (n - 1) / 2) as f64;
    let mut cross = 0.0;
    for p0 in 0..15 {
        let m = PATTERN_ARITY[p0];
        if n < m {
            continue;
        }
        let sa = pattern_sum(&a, p0);
        if sa == 0.0 {
            continue;
        }
        // Expected B-side pattern value after one random transposition,
        // starting from a canonical tuple of pattern p0.
        let tuple = PATTERNS[p0];
        let mut expect_b = 0.0;
        let mut add = |t: [usize; 4], weight: f64| {
            if weight <= 0.0 {
                return;
            }
            let p1 = classify(t);
            let m1 = PATTERN_ARITY[p1];
            if n >= m1 {
                expect_b += weight * pattern_sum(&b, p1) / falling(n, m1);
            }
        };
        let outside = n.saturating_sub(m);
        // Transposition misses the tuple entirely: pattern unchanged.
        add(tuple, (outside * outside.saturating_sub(1) / 2) as f64);
        // Transposition exchanges two of the tuple's own indices.
        for u in 0..m {
            for v in (u + 1)..m {
                add(apply_transposition(tuple, u, v), 1.0);
            }
        }
        // Transposition exchanges one tuple index with an outside index
        // (label `m` stands for any of the `outside` candidates).
        for u in 0..m {
            add(apply_transposition(tuple, u, m), outside as f64);
        }
        cross += sa * expect_b / pair_count;
    }
    Some((cross - mean * mean) / var)
}

/// Applies the transposition (u v) to the last two positions of the tuple
/// (the pair belonging to the post-swap permutation).
fn apply_transposition(tuple: [usize; 4], u: usize, v: usize) -> [usize; 4] {
    let mut out = tuple;
    for slot in out.iter_mut().skip(2) {
        if *slot == u {
            *slot = v;
        } else if *slot == v {
            *slot = u;
        }
    }
    out
}
