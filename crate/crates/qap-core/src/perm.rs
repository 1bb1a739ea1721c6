use std::fmt;

use crate::error::CoreError;

/// A permutation of `{0, .., n-1}`, stored as its image array: entry `i` is
/// the location assigned to facility `i`.
///
/// Indexing is 0-based internally; external formats (QAPLIB files, reports)
/// use 1-based indices and convert at the I/O boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation on `n` elements.
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from its image array, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, CoreError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(CoreError::InvalidPermutation {
                    reason: format!("image {v} out of range for n = {n}"),
                });
            }
            if seen[v] {
                return Err(CoreError::InvalidPermutation {
                    reason: format!("image {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Draws a uniformly random permutation via Fisher-Yates, consuming
    /// exactly `n-1` bounded uniform draws from `next_index`.
    ///
    /// The closure receives an exclusive upper bound `m` and must return a
    /// uniform value in `0..m`. Taking the draw as a closure keeps this crate
    /// independent of any particular RNG crate while callers pin one.
    pub fn random_with(n: usize, mut next_index: impl FnMut(usize) -> usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = next_index(i + 1);
            images.swap(i, j);
        }
        Permutation { images }
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` under the permutation.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The image array as a slice.
    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    /// Exchanges the images at positions `i` and `j` (the 2-swap move).
    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.images.swap(i, j);
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Functional composition `self ∘ inner`: maps `i` to `self(inner(i))`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.n(), inner.n(), "composition requires equal lengths");
        let images = inner.images.iter().map(|&v| self.images[v]).collect();
        Permutation { images }
    }

    /// Number of positions where the two permutations disagree.
    pub fn positional_distance(&self, other: &Permutation) -> usize {
        assert_eq!(self.n(), other.n(), "distance requires equal lengths");
        self.images
            .iter()
            .zip(&other.images)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Cayley distance: the minimum number of transpositions turning `self`
    /// into `other`, i.e. `n` minus the cycle count of `self ∘ other⁻¹`.
    pub fn cayley_distance(&self, other: &Permutation) -> usize {
        assert_eq!(self.n(), other.n(), "distance requires equal lengths");
        let n = self.n();
        // rho = self ∘ other⁻¹ without materializing the inverse: follow
        // rho(other(i)) = self(i).
        let mut rho = vec![0usize; n];
        for i in 0..n {
            rho[other.images[i]] = self.images[i];
        }
        let mut visited = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = rho[cur];
            }
        }
        n - cycles
    }
}

impl fmt::Display for Permutation {
    /// 1-based, space-separated (the external convention).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.images.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}
