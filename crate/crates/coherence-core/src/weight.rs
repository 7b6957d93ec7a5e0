//! Integer `gl_n` weights in the standard basis.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A `gl_n` weight written in the standard (diagonal coordinate) basis.
///
/// Ordered lexicographically, which fixes the order of all weight-graded
/// structures in the engine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(alloc::vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        debug_assert_eq!(self.len(), other.len());
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        debug_assert_eq!(self.len(), other.len());
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `delta_i - delta_j` (1-based indices), the weight shift of `E_{i,j}`.
    pub fn unit_shift(n: usize, i: usize, j: usize) -> WeightVector {
        let mut v = alloc::vec![0i64; n];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        WeightVector(v)
    }

    /// Coordinate permutation `(sigma . w)_k = w_{sigma(k)}`, with `sigma`
    /// given in 0-based one-line notation.
    pub fn permuted(&self, sigma: &[usize]) -> WeightVector {
        debug_assert_eq!(self.len(), sigma.len());
        WeightVector(sigma.iter().map(|&s| self.0[s]).collect())
    }

    /// Coordinates reversed, the effect of the index flip `i -> n+1-i`.
    pub fn reversed(&self) -> WeightVector {
        let mut v = self.0.clone();
        v.reverse();
        WeightVector(v)
    }

    /// Coordinates sorted non-increasing (dominant representative).
    pub fn dominant(&self) -> WeightVector {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(v)
    }

    pub fn coord_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn display_compact(&self) -> String {
        use core::fmt::Write;
        let mut s = String::from("(");
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s.push(')');
        s
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_compact())
    }
}
