use std::collections::BTreeMap;

use ndarray::Array2;

use crate::error::CoreError;

/// A QAP instance: two square real matrices `A` and `B` of equal dimension
/// `n`, with cost `Q(φ) = Σ_i Σ_j a_ij · b_{φ(i)φ(j)}`.
///
/// No distance/flow meaning is attached to `A` or `B` here; that
/// identification happens during standard-form normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    label: String,
    a: Array2<f64>,
    b: Array2<f64>,
    metadata: BTreeMap<String, String>,
}

impl Instance {
    /// Validates and wraps the two data matrices.
    ///
    /// # Errors
    /// Rejects non-square matrices, mismatched dimensions, `n < 2`, and
    /// non-finite entries.
    pub fn new(
        label: impl Into<String>,
        a: Array2<f64>,
        b: Array2<f64>,
    ) -> Result<Self, CoreError> {
        check_square("A", &a)?;
        check_square("B", &b)?;
        if a.nrows() != b.nrows() {
            return Err(CoreError::DimensionMismatch { a_n: a.nrows(), b_n: b.nrows() });
        }
        if a.nrows() < 2 {
            return Err(CoreError::TooSmall { n: a.nrows(), min: 2, context: "instance" });
        }
        // Hot paths (delta evaluation) rely on contiguous row-major
        // storage; normalize exotic layouts (e.g. transposed views made
        // owned) up front.
        let a = into_standard_layout(a);
        let b = into_standard_layout(b);
        Ok(Instance { label: label.into(), a, b, metadata: BTreeMap::new() })
    }

    /// Instance dimension.
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// First data matrix.
    pub fn a(&self) -> &Array2<f64> {
        &self.a
    }

    /// Second data matrix.
    pub fn b(&self) -> &Array2<f64> {
        &self.b
    }

    /// Text identifier.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Replaces the label, consuming and returning the instance.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Key → text metadata (class, generator, seed, ...).
    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    /// Sets one metadata key.
    pub fn set_metadata(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    /// Builder-style metadata insertion.
    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.set_metadata(key, value);
        self
    }
}

fn into_standard_layout(m: Array2<f64>) -> Array2<f64> {
    if m.is_standard_layout() {
        m
    } else {
        m.as_standard_layout().into_owned()
    }
}

fn check_square(name: &'static str, m: &Array2<f64>) -> Result<(), CoreError> {
    if m.nrows() != m.ncols() {
        return Err(CoreError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    for ((i, j), &v) in m.indexed_iter() {
        if !v.is_finite() {
            return Err(CoreError::NonFinite { matrix: name, row: i, col: j });
        }
    }
    Ok(())
}

/// Whether a matrix equals its transpose exactly.
///
/// Exact comparison is intentional: equivalence transforms and standard-form
/// arithmetic apply identical operations to mirrored entries, so symmetry is
/// preserved bit-for-bit through the pipeline.
pub fn is_symmetric(m: &Array2<f64>) -> bool {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)] != m[(j, i)] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn validates_dimensions() {
        let a = array![[0.0, 1.0], [2.0, 0.0]];
        let b = array![[0.0, 3.0], [4.0, 0.0]];
        assert!(Instance::new("t", a.clone(), b.clone()).is_ok());

        let wide = Array2::<f64>::zeros((2, 3));
        assert!(matches!(
            Instance::new("t", wide, b.clone()),
            Err(CoreError::NotSquare { .. })
        ));

        let big = Array2::<f64>::zeros((3, 3));
        assert!(matches!(
            Instance::new("t", a.clone(), big),
            Err(CoreError::DimensionMismatch { .. })
        ));

        let one = Array2::<f64>::zeros((1, 1));
        assert!(matches!(
            Instance::new("t", one.clone(), one),
            Err(CoreError::TooSmall { .. })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let a = array![[0.0, f64::NAN], [2.0, 0.0]];
        let b = array![[0.0, 3.0], [4.0, 0.0]];
        assert!(matches!(
            Instance::new("t", a, b),
            Err(CoreError::NonFinite { matrix: "A", row: 0, col: 1 })
        ));
    }

    #[test]
    fn symmetry_check() {
        assert!(is_symmetric(&array![[1.0, 2.0], [2.0, 5.0]]));
        assert!(!is_symmetric(&array![[1.0, 2.0], [3.0, 5.0]]));
    }
}
