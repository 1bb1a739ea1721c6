use crate::instance::Instance;
use crate::perm::Permutation;

/// Full cost `Q(φ) = Σ_i Σ_j a_ij · b_{φ(i)φ(j)}` in O(n²).
pub fn cost(inst: &Instance, perm: &Permutation) -> f64 {
    assert_eq!(perm.n(), inst.n(), "permutation length must match instance");
    let a = inst.a();
    let b = inst.b();
    let phi = perm.as_slice();
    let n = inst.n();
    let mut total = 0.0;
    for i in 0..n {
        let pi = phi[i];
        for j in 0..n {
            total += a[(i, j)] * b[(pi, phi[j])];
        }
    }
    total
}

/// Cost change from exchanging the images at positions `i` and `j`, in O(n)
/// without recomputing the double sum:
/// `delta = cost(inst, φ with i,j swapped) − cost(inst, φ)`.
///
/// Handles asymmetric matrices and nonzero diagonals. Works on the flat
/// row-major storage: this runs in the innermost loop of every descent
/// and ant construction, where 2D index arithmetic dominates.
pub fn delta_cost_swap(inst: &Instance, perm: &Permutation, i: usize, j: usize) -> f64 {
    assert_ne!(i, j, "swap positions must differ");
    let n = inst.n();
    let a = inst.a().as_slice().expect("instance matrices are standard layout");
    let b = inst.b().as_slice().expect("instance matrices are standard layout");
    let phi = perm.as_slice();
    let (r, s) = (phi[i], phi[j]);
    let ai = &a[i * n..(i + 1) * n];
    let aj = &a[j * n..(j + 1) * n];
    let br = &b[r * n..(r + 1) * n];
    let bs = &b[s * n..(s + 1) * n];

    let mut delta = (ai[i] - aj[j]) * (bs[s] - br[r]) + (ai[j] - aj[i]) * (bs[r] - br[s]);
    for (k, &pk) in phi.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let ka = k * n;
        let kb = pk * n;
        delta += (ai[k] - aj[k]) * (bs[pk] - br[pk])
            + (a[ka + i] - a[ka + j]) * (b[kb + s] - b[kb + r]);
    }
    delta
}

/// Incrementally maintained table of all 2-swap deltas for one permutation.
///
/// Building the table costs O(n³); after applying a move, refreshing every
/// delta costs O(n²) (O(1) per untouched pair, O(n) for the 2n−3 pairs that
/// share a position with the move). Steepest descent over the table is
/// therefore O(n²) per step instead of O(n³).
pub struct DeltaTable<'a> {
    inst: &'a Instance,
    perm: Permutation,
    cost: f64,
    /// Row-major n×n; only entries with i < j are meaningful.
    deltas: Vec<f64>,
    /// Scratch reused by `apply`: the four per-index difference columns that
    /// factor the O(1) pair correction (avoids reallocating every move).
    du: Vec<f64>,
    wu: Vec<f64>,
    eb: Vec<f64>,
    fb: Vec<f64>,
}

impl<'a> DeltaTable<'a> {
    /// Builds the table for `start`.
    pub fn new(inst: &'a Instance, start: Permutation) -> Self {
        let n = inst.n();
        let cost = cost(inst, &start);
        let mut table = DeltaTable {
            inst,
            perm: start,
            cost,
            deltas: vec![0.0; n * n],
            du: vec![0.0; n],
            wu: vec![0.0; n],
            eb: vec![0.0; n],
            fb: vec![0.0; n],
        };
        for i in 0..n {
            for j in (i + 1)..n {
                table.deltas[i * n + j] = delta_cost_swap(inst, &table.perm, i, j);
            }
        }
        table
    }

    /// Current permutation.
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// Current cost.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Delta for swapping positions `i < j`.
    #[inline]
    pub fn delta(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < j);
        self.deltas[i * self.inst.n() + j]
    }

    /// The most-improving move, ties broken by lowest `(i, j)` lexicographic;
    /// `None` when no strictly improving move exists.
    pub fn best_improving_move(&self) -> Option<(usize, usize, f64)> {
        let n = self.inst.n();
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.deltas[i * n + j];
                if d < 0.0 && best.map_or(true, |(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }

    /// Applies the swap of positions `u < v` and refreshes all deltas.
    pub fn apply(&mut self, u: usize, v: usize) {
        debug_assert!(u < v);
        let n = self.inst.n();
        let a = self.inst.a().as_slice().expect("instance matrices are standard layout");
        let b = self.inst.b().as_slice().expect("instance matrices are standard layout");
        let applied = self.deltas[u * n + v];
        // Images before the move; the O(1) pair update below is expressed in
        // terms of the pre-move assignment.
        let r = self.perm.image(u);
        let s = self.perm.image(v);

        // The correction for an untouched pair (i, j) factors into per-index
        // differences; hoisting them turns the O(1) update into four lookups:
        //   du[i] = a_iu − a_iv      wu[i] = a_ui − a_vi
        //   eb[q] = b_qs − b_qr      fb[q] = b_sq − b_rq
        let arow_u = &a[u * n..(u + 1) * n];
        let arow_v = &a[v * n..(v + 1) * n];
        let brow_s = &b[s * n..(s + 1) * n];
        let brow_r = &b[r * n..(r + 1) * n];
        for i in 0..n {
            self.du[i] = a[i * n + u] - a[i * n + v];
            self.wu[i] = arow_u[i] - arow_v[i];
            self.eb[i] = b[i * n + s] - b[i * n + r];
            self.fb[i] = brow_s[i] - brow_r[i];
        }

        let phi = self.perm.as_slice();
        let (du, wu, eb, fb) = (&self.du, &self.wu, &self.eb, &self.fb);
        let deltas = &mut self.deltas;
        for i in 0..n {
            if i == u || i == v {
                continue;
            }
            let qi = phi[i];
            let (dui, wui, ebqi, fbqi) = (du[i], wu[i], eb[qi], fb[qi]);
            let row = i * n;
            for j in (i + 1)..n {
                if j == u || j == v {
                    continue;
                }
                let qj = phi[j];
                deltas[row + j] +=
                    (dui - du[j]) * (eb[qj] - ebqi) + (wui - wu[j]) * (fb[qj] - fbqi);
            }
        }

        self.perm.swap_positions(u, v);
        self.cost += applied;
        // Pairs sharing a position with the move: recompute directly.
        for k in 0..n {
            for &(x, y) in &[(k.min(u), k.max(u)), (k.min(v), k.max(v))] {
                if x != y {
                    self.deltas[x * n + y] = delta_cost_swap(self.inst, &self.perm, x, y);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn tiny() -> Instance {
        Instance::new(
            "tiny",
            array![[0.0, 1.0], [2.0, 0.0]],
            array![[0.0, 3.0], [4.0, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn cost_matches_hand_evaluation() {
        let inst = tiny();
        assert_eq!(cost(&inst, &Permutation::identity(2)), 11.0);
        let swapped = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(cost(&inst, &swapped), 10.0);
    }

    #[test]
    fn cost_zero_when_b_zero() {
        let inst = Instance::new(
            "z",
            array![[1.0, 2.0], [3.0, 4.0]],
            array![[0.0, 0.0], [0.0, 0.0]],
        )
        .unwrap();
        assert_eq!(cost(&inst, &Permutation::identity(2)), 0.0);
    }

    #[test]
    fn delta_matches_spec_example() {
        let inst = tiny();
        let id = Permutation::identity(2);
        assert_eq!(delta_cost_swap(&inst, &id, 0, 1), -1.0);
    }

    #[test]
    fn delta_zero_on_constant_landscape() {
        // A = B = J - I: every permutation has the same cost.
        let m = array![[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
        let inst = Instance::new("ji", m.clone(), m).unwrap();
        let p = Permutation::from_images(vec![2, 0, 1]).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_eq!(delta_cost_swap(&inst, &p, i, j), 0.0);
            }
        }
    }
}
