use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A permutation of `{0, .., n-1}`.
///
/// As a row permutation `P`, `(P A)` has row `i` equal to row `map[i]` of `A`.
/// As a column permutation `Q`, `(A Q)` has column `j` equal to column
/// `map[j]` of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::InvalidArgument(format!("{map:?} is not a permutation")));
            }
            seen[m] = true;
        }
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Applies a transposition of positions `a` and `b`.
    pub fn swap(&mut self, a: usize, b: usize) {
        self.map.swap(a, b);
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m] = i;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: position `i` maps to `self[other[i]]`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Self { map: other.map.iter().map(|&i| self.map[i]).collect() }
    }

    /// The explicit 0/1 matrix acting on rows (`P A = P.to_matrix() * A`).
    pub fn to_matrix(&self) -> Matrix {
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| if self.map[i] == j { 1.0 } else { 0.0 })
    }

    pub fn permute_rows(&self, a: &Matrix) -> Matrix {
        assert_eq!(a.rows(), self.len());
        Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(self.map[i], j)])
    }

    pub fn permute_cols(&self, a: &Matrix) -> Matrix {
        assert_eq!(a.cols(), self.len());
        Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, self.map[j])])
    }
}
