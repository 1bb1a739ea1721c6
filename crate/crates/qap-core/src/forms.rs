use ndarray::Array2;

/// Mean of the diagonal entries.
pub fn diagonal_mean(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    (0..n).map(|i| m[(i, i)]).sum::<f64>() / n as f64
}

/// Mean of the off-diagonal entries.
pub fn offdiagonal_mean(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)];
            }
        }
    }
    sum / (n * (n - 1)) as f64
}

/// Zero-mean form: subtracts the diagonal mean from the diagonal and the
/// off-diagonal mean from the off-diagonal entries, so both entry classes
/// average to zero.
pub fn zero_mean_form(m: &Array2<f64>) -> Array2<f64> {
    shift_classes(m, diagonal_mean(m), offdiagonal_mean(m))
}

/// Zero-minimum form: subtracts the diagonal minimum from the diagonal and
/// the off-diagonal minimum from the off-diagonal entries, so both entry
/// classes have minimum zero (all entries become nonnegative).
pub fn zero_minimum_form(m: &Array2<f64>) -> Array2<f64> {
    let n = m.nrows();
    let diag_min = (0..n).map(|i| m[(i, i)]).fold(f64::INFINITY, f64::min);
    let mut off_min = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_min = off_min.min(m[(i, j)]);
            }
        }
    }
    shift_classes(m, diag_min, off_min)
}

fn shift_classes(m: &Array2<f64>, diag_shift: f64, off_shift: f64) -> Array2<f64> {
    let n = m.nrows();
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] -= if i == j { diag_shift } else { off_shift };
        }
    }
    out
}

/// Population standard deviation of all n² entries.
pub fn entry_stddev(m: &Array2<f64>) -> f64 {
    let count = (m.nrows() * m.ncols()) as f64;
    let mean = m.sum() / count;
    let var = m.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / count;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn zero_mean_example() {
        let m = array![[5.0, 3.0], [7.0, 5.0]];
        assert_eq!(zero_mean_form(&m), array![[0.0, -2.0], [2.0, 0.0]]);
    }

    #[test]
    fn zero_mean_of_constant_is_zero() {
        let m = Array2::from_elem((3, 3), 1.0);
        assert_eq!(zero_mean_form(&m), Array2::zeros((3, 3)));
    }

    #[test]
    fn zero_mean_idempotent() {
        let m = array![[5.0, 3.0], [7.0, 5.0]];
        let z = zero_mean_form(&m);
        assert_eq!(zero_mean_form(&z), z);
    }

    #[test]
    fn zero_minimum_example() {
        let m = array![[5.0, 3.0], [7.0, 5.0]];
        assert_eq!(zero_minimum_form(&m), array![[0.0, 0.0], [4.0, 0.0]]);
    }

    #[test]
    fn zero_minimum_idempotent_when_already_zero_min() {
        let m = array![[0.0, 0.0, 4.0], [1.0, 0.0, 2.0], [3.0, 5.0, 0.0]];
        assert_eq!(zero_minimum_form(&m), m);
    }

    #[test]
    fn entry_stddev_population() {
        // Entries {0,0,2,2}: mean 1, population variance 1.
        let m = array![[0.0, 2.0], [2.0, 0.0]];
        assert_eq!(entry_stddev(&m), 1.0);
    }
}
