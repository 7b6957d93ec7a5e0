//! Gelfand-Tsetlin combinatorics and exact matrix actions of `gl_n` on its
//! irreducible representations.
//!
//! Patterns are stored with non-increasing rows; the basis order is
//! lexicographic on the row-major reading of the triangle (widest row first),
//! which makes every matrix in the engine reproducible byte for byte.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat, Rat};
use crate::error::{CoreError, Result};
use crate::sparse::SparseVec;
use crate::weight::WeightVector;

/// A dominant integral `gl_n` weight: a non-increasing integer `n`-tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(CoreError::InvalidHighestWeight(format!(
                "length {} < 2",
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidHighestWeight(format!(
                "entries {entries:?} are not non-increasing"
            )));
        }
        Ok(HighestWeight(entries))
    }

    /// The zero weight (trivial module) of rank `n`.
    pub fn trivial(n: usize) -> Self {
        HighestWeight(alloc::vec![0; n])
    }

    /// `m` times the fundamental weight `omega_k` of `gl_n`: `m` repeated `k`
    /// times, padded with zeros.
    pub fn fundamental_multiple(n: usize, k: usize, m: i64) -> Self {
        let mut v = alloc::vec![0i64; n];
        for e in v.iter_mut().take(k) {
            *e = m;
        }
        HighestWeight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn as_weight(&self) -> WeightVector {
        WeightVector(self.0.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", WeightVector(self.0.clone()))
    }
}

/// A Gelfand-Tsetlin pattern with top row equal to some [`HighestWeight`].
///
/// `rows[0]` is the full top row (length `n`), `rows[d]` has length `n - d`;
/// consecutive rows interlace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(CoreError::InvalidHighestWeight(format!("{n} rows < 2")));
        }
        for (d, row) in rows.iter().enumerate() {
            if row.len() != n - d {
                return Err(CoreError::ModuleInvariant(format!(
                    "row {d} has length {}, expected {}",
                    row.len(),
                    n - d
                )));
            }
        }
        let p = GtPattern { rows };
        if !p.interlaces() {
            return Err(CoreError::ModuleInvariant(String::from(
                "rows do not interlace",
            )));
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Row `k` in the 1-based triangular indexing (`k` entries).
    pub fn math_row(&self, k: usize) -> &[i64] {
        &self.rows[self.rank() - k]
    }

    pub fn top_row(&self) -> &[i64] {
        &self.rows[0]
    }

    fn interlaces(&self) -> bool {
        for d in 0..self.rows.len() - 1 {
            let upper = &self.rows[d];
            let lower = &self.rows[d + 1];
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return false;
                }
            }
        }
        true
    }

    /// The `gl_n` weight of the basis vector labelled by this pattern:
    /// `mu_k = r_k - r_{k-1}` with `r_k` the sum of row `k`.
    pub fn weight(&self) -> WeightVector {
        let n = self.rank();
        let mut coords = Vec::with_capacity(n);
        let mut prev = 0i64;
        for k in 1..=n {
            let rk: i64 = self.math_row(k).iter().sum();
            coords.push(rk - prev);
            prev = rk;
        }
        WeightVector(coords)
    }

    /// Pattern with entry `i` of row `k` (both 1-based) shifted by `delta`;
    /// `None` if the result violates interlacing.
    fn shifted(&self, k: usize, i: usize, delta: i64) -> Option<GtPattern> {
        let mut rows = self.rows.clone();
        let d = self.rank() - k;
        rows[d][i - 1] += delta;
        let p = GtPattern { rows };
        if p.interlaces() {
            Some(p)
        } else {
            None
        }
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, row) in self.rows.iter().enumerate() {
            for _ in 0..d {
                f.write_str(" ")?;
            }
            for (i, e) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
            if d + 1 < self.rows.len() {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// All patterns with the given top row, in the canonical lexicographic order.
pub fn enumerate_patterns(lambda: &HighestWeight) -> Vec<GtPattern> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = alloc::vec![lambda.entries().to_vec()];
    descend(&mut rows, lambda.rank(), &mut out);
    out.sort();
    out
}

fn descend(rows: &mut Vec<Vec<i64>>, n: usize, out: &mut Vec<GtPattern>) {
    if rows.len() == n {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    let upper = rows.last().unwrap().clone();
    let len = upper.len() - 1;
    let mut row = alloc::vec![0i64; len];
    fill(&upper, &mut row, 0, rows, n, out);
}

fn fill(
    upper: &[i64],
    row: &mut Vec<i64>,
    i: usize,
    rows: &mut Vec<Vec<i64>>,
    n: usize,
    out: &mut Vec<GtPattern>,
) {
    if i == row.len() {
        rows.push(row.clone());
        descend(rows, n, out);
        rows.pop();
        return;
    }
    // interlacing bounds: upper[i] >= row[i] >= upper[i+1]
    for v in upper[i + 1]..=upper[i] {
        row[i] = v;
        fill(upper, row, i + 1, rows, n, out);
    }
}

/// Dimension of the irreducible with highest weight `lambda` by the product
/// formula `prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i)`.
///
/// Serves as the independent oracle for every pattern count in the engine.
pub fn weyl_dimension(lambda: &HighestWeight) -> BigInt {
    let n = lambda.rank();
    let e = lambda.entries();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(e[i] - e[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// [`weyl_dimension`] as a machine integer; panics only far beyond desk
/// scale.
pub fn weyl_dimension_usize(lambda: &HighestWeight) -> usize {
    use num_traits::ToPrimitive;
    weyl_dimension(lambda)
        .to_usize()
        .expect("dimension exceeds usize")
}

/// The extremal pattern of `sigma`: row `k` holds `lambda_{sigma(1)}, ...,
/// lambda_{sigma(k)}` sorted into the internal non-increasing convention.
/// Its weight is `(lambda_{sigma(1)}, ..., lambda_{sigma(n)})`.
pub fn extremal_pattern(lambda: &HighestWeight, sigma: &[usize]) -> GtPattern {
    let n = lambda.rank();
    debug_assert_eq!(sigma.len(), n);
    let mut rows = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let mut row: Vec<i64> = (0..k).map(|a| lambda.entries()[sigma[a]]).collect();
        row.sort_unstable_by(|a, b| b.cmp(a));
        rows.push(row);
    }
    GtPattern { rows }
}

/// Weight multiplicities of `V_lambda` counted over the pattern basis.
pub fn character(lambda: &HighestWeight) -> BTreeMap<WeightVector, usize> {
    let mut out = BTreeMap::new();
    for p in enumerate_patterns(lambda) {
        *out.entry(p.weight()).or_insert(0) += 1;
    }
    out
}

/// Generator labels for [`Irrep::generator_action`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `e_k = E_{k,k+1}`, `1 <= k <= n-1`.
    Raise(usize),
    /// `f_k = E_{k+1,k}`, `1 <= k <= n-1`.
    Lower(usize),
    /// `E_{k,k}`, `1 <= k <= n`.
    Diagonal(usize),
}

/// An exact sparse matrix of a weight-homogeneous operator on a fixed basis.
///
/// `cols[src]` is the image of basis vector `src`; every image entry lands in
/// the weight space shifted by `weight_shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub cols: Vec<SparseVec<usize, Rat>>,
    pub weight_shift: WeightVector,
    pub degree_shift: i64,
}

impl OpMatrix {
    pub fn zero(dim: usize, weight_shift: WeightVector, degree_shift: i64) -> Self {
        OpMatrix {
            cols: alloc::vec![SparseVec::new(); dim],
            weight_shift,
            degree_shift,
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn entry(&self, dst: usize, src: usize) -> Rat {
        self.cols[src].get(&dst).cloned().unwrap_or_else(crate::arith::zero)
    }

    pub fn set_entry(&mut self, dst: usize, src: usize, value: Rat) {
        self.cols[src].set(dst, value);
    }

    pub fn scaled(&self, c: &Rat) -> OpMatrix {
        OpMatrix {
            cols: self.cols.iter().map(|col| col.scaled(c)).collect(),
            weight_shift: self.weight_shift.clone(),
            degree_shift: self.degree_shift,
        }
    }

    /// Matrix product `self ∘ other`.
    pub fn compose(&self, other: &OpMatrix) -> OpMatrix {
        debug_assert_eq!(self.dim(), other.dim());
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: SparseVec<usize, Rat> = SparseVec::new();
                for (mid, c) in col.iter() {
                    acc.axpy(c, &self.cols[*mid]);
                }
                acc
            })
            .collect();
        OpMatrix {
            cols,
            weight_shift: self.weight_shift.add(&other.weight_shift),
            degree_shift: self.degree_shift + other.degree_shift,
        }
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &OpMatrix) -> OpMatrix {
        let ab = self.compose(other);
        let ba = other.compose(self);
        ab.sub(&ba)
    }

    pub fn add(&self, other: &OpMatrix) -> OpMatrix {
        debug_assert_eq!(self.weight_shift, other.weight_shift);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.add_assign_vec(b);
                v
            })
            .collect();
        OpMatrix {
            cols,
            weight_shift: self.weight_shift.clone(),
            degree_shift: self.degree_shift,
        }
    }

    pub fn sub(&self, other: &OpMatrix) -> OpMatrix {
        self.add(&other.scaled(&rat(-1)))
    }

    pub fn apply(&self, v: &SparseVec<usize, Rat>) -> SparseVec<usize, Rat> {
        let mut acc = SparseVec::new();
        for (src, c) in v.iter() {
            acc.axpy(c, &self.cols[*src]);
        }
        acc
    }
}

impl fmt::Display for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift {}:", self.weight_shift)?;
        for (src, col) in self.cols.iter().enumerate() {
            for (dst, c) in col.iter() {
                write!(f, " [{dst},{src}]={c}")?;
            }
        }
        Ok(())
    }
}

/// An irreducible `gl_n` representation over its Gelfand-Tsetlin basis,
/// with exact generator matrices.
pub struct Irrep {
    pub lambda: HighestWeight,
    pub patterns: Vec<GtPattern>,
    pub weights: Vec<WeightVector>,
    index: BTreeMap<GtPattern, usize>,
}

impl Irrep {
    pub fn new(lambda: HighestWeight) -> Self {
        let patterns = enumerate_patterns(&lambda);
        let weights = patterns.iter().map(|p| p.weight()).collect();
        let index = patterns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Irrep {
            lambda,
            patterns,
            weights,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn pattern_index(&self, p: &GtPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the extremal pattern of `sigma`.
    pub fn extremal_index(&self, sigma: &[usize]) -> usize {
        let p = extremal_pattern(&self.lambda, sigma);
        self.index[&p]
    }

    /// Index of the lowest-weight pattern (extremal for the longest element).
    pub fn lowest_index(&self) -> usize {
        self.extremal_index(&crate::perm::longest(self.rank()))
    }

    /// Index of the highest-weight pattern (extremal for the identity).
    pub fn highest_index(&self) -> usize {
        self.extremal_index(&crate::perm::identity(self.rank()))
    }

    /// Exact matrix of a Chevalley generator or diagonal unit.
    ///
    /// The raising and lowering coefficients are the classical rational
    /// pattern-shift formulas; moves leaving the pattern cone are dropped.
    /// Correctness is enforced by the commutation-relation suite, not by
    /// transcription fidelity.
    pub fn generator_action(&self, g: Generator) -> Result<OpMatrix> {
        let n = self.rank();
        match g {
            Generator::Diagonal(k) => {
                if !(1..=n).contains(&k) {
                    return Err(CoreError::InvalidIndex(format!("E_{{{k},{k}}} for n={n}")));
                }
                let mut m = OpMatrix::zero(self.dim(), WeightVector::zero(n), 0);
                for (idx, w) in self.weights.iter().enumerate() {
                    let c = w.as_slice()[k - 1];
                    if c != 0 {
                        m.set_entry(idx, idx, rat(c));
                    }
                }
                Ok(m)
            }
            Generator::Raise(k) => {
                if !(1..n).contains(&k) {
                    return Err(CoreError::InvalidIndex(format!("e_{k} for n={n}")));
                }
                let shift = WeightVector::unit_shift(n, k, k + 1);
                let mut m = OpMatrix::zero(self.dim(), shift, 0);
                for (idx, p) in self.patterns.iter().enumerate() {
                    for i in 1..=k {
                        let Some(target) = p.shifted(k, i, 1) else {
                            continue;
                        };
                        let c = raise_coefficient(p, k, i);
                        if !c.is_zero() {
                            let t = self.index[&target];
                            m.cols[idx].add_to(t, c);
                        }
                    }
                }
                Ok(m)
            }
            Generator::Lower(k) => {
                if !(1..n).contains(&k) {
                    return Err(CoreError::InvalidIndex(format!("f_{k} for n={n}")));
                }
                let shift = WeightVector::unit_shift(n, k + 1, k);
                let mut m = OpMatrix::zero(self.dim(), shift, 0);
                for (idx, p) in self.patterns.iter().enumerate() {
                    for i in 1..=k {
                        let Some(target) = p.shifted(k, i, -1) else {
                            continue;
                        };
                        let c = lower_coefficient(p, k, i);
                        if !c.is_zero() {
                            let t = self.index[&target];
                            m.cols[idx].add_to(t, c);
                        }
                    }
                }
                Ok(m)
            }
        }
    }

    /// Exact matrix of the unit `E_{i,j}`; off the tridiagonal it is built
    /// from iterated commutators `E_{i,j} = [E_{i,k}, E_{k,j}]`.
    pub fn matrix_unit_action(&self, i: usize, j: usize) -> Result<OpMatrix> {
        let n = self.rank();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(CoreError::InvalidIndex(format!("E_{{{i},{j}}} for n={n}")));
        }
        if i == j {
            return self.generator_action(Generator::Diagonal(i));
        }
        if j == i + 1 {
            return self.generator_action(Generator::Raise(i));
        }
        if i == j + 1 {
            return self.generator_action(Generator::Lower(j));
        }
        if i < j {
            let a = self.matrix_unit_action(i, j - 1)?;
            let b = self.matrix_unit_action(j - 1, j)?;
            Ok(a.commutator(&b))
        } else {
            let a = self.matrix_unit_action(i, j + 1)?;
            let b = self.matrix_unit_action(j + 1, j)?;
            Ok(a.commutator(&b))
        }
    }
}

/// `l_{k,i} = lambda_{k,i} - i`, the shifted entries entering the coefficient
/// formulas. Within one row they are strictly decreasing, so the denominators
/// below are never zero; this is asserted rather than assumed.
fn shifted_entry(p: &GtPattern, k: usize, i: usize) -> i64 {
    p.math_row(k)[i - 1] - i as i64
}

fn raise_coefficient(p: &GtPattern, k: usize, i: usize) -> Rat {
    let li = shifted_entry(p, k, i);
    let mut num = BigInt::one();
    for j in 1..=k + 1 {
        num *= BigInt::from(li - shifted_entry(p, k + 1, j));
    }
    let mut den = BigInt::one();
    for j in 1..=k {
        if j != i {
            den *= BigInt::from(li - shifted_entry(p, k, j));
        }
    }
    assert!(!den.is_zero(), "vanishing GT denominator at row {k}, entry {i}");
    -Rat::new(num, den)
}

fn lower_coefficient(p: &GtPattern, k: usize, i: usize) -> Rat {
    let li = shifted_entry(p, k, i);
    let mut num = BigInt::one();
    for j in 1..k {
        num *= BigInt::from(li - shifted_entry(p, k - 1, j));
    }
    let mut den = BigInt::one();
    for j in 1..=k {
        if j != i {
            den *= BigInt::from(li - shifted_entry(p, k, j));
        }
    }
    assert!(!den.is_zero(), "vanishing GT denominator at row {k}, entry {i}");
    Rat::new(num, den)
}

/// Check the full `gl_n` commutation table `[E_{i,j}, E_{k,l}] =
/// delta_{jk} E_{i,l} - delta_{li} E_{k,j}` on `V_lambda`; returns the first
/// failing quadruple if any.
pub fn check_commutation_relations(lambda: &HighestWeight) -> Result<Option<(usize, usize, usize, usize)>> {
    let rep = Irrep::new(lambda.clone());
    let n = rep.rank();
    let mut units = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            units.push(((i, j), rep.matrix_unit_action(i, j)?));
        }
    }
    for ((i, j), a) in &units {
        for ((k, l), b) in &units {
            let lhs = a.commutator(b);
            let mut rhs = OpMatrix::zero(rep.dim(), lhs.weight_shift.clone(), 0);
            if j == k {
                rhs = rhs.add(&reshift(&rep.matrix_unit_action(*i, *l)?, &lhs.weight_shift));
            }
            if l == i {
                rhs = rhs.sub(&reshift(&rep.matrix_unit_action(*k, *j)?, &lhs.weight_shift));
            }
            if lhs.cols != rhs.cols {
                return Ok(Some((*i, *j, *k, *l)));
            }
        }
    }
    Ok(None)
}

fn reshift(m: &OpMatrix, shift: &WeightVector) -> OpMatrix {
    let mut out = m.clone();
    out.weight_shift = shift.clone();
    out
}

/// Check that every image entry of `m` lands in the shifted weight space.
pub fn check_weight_homogeneous(m: &OpMatrix, weights: &[WeightVector]) -> bool {
    for (src, col) in m.cols.iter().enumerate() {
        let expected = weights[src].add(&m.weight_shift);
        for (dst, c) in col.iter() {
            if !c.is_zero() && weights[*dst] != expected {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn hw(e: &[i64]) -> HighestWeight {
        HighestWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(HighestWeight::new(alloc::vec![1, 2]).is_err());
        assert!(HighestWeight::new(alloc::vec![3]).is_err());
    }

    #[test]
    fn pattern_counts_match_weyl_dimension() {
        for lam in [
            hw(&[1, 0]),
            hw(&[2, 0]),
            hw(&[5, 0]),
            hw(&[3, 1, 0]),
            hw(&[0, 0, 0]),
            hw(&[2, 1, 1, 0]),
            hw(&[3, 2, 1, 0]),
        ] {
            let pats = enumerate_patterns(&lam);
            assert_eq!(BigInt::from(pats.len()), weyl_dimension(&lam), "{lam}");
        }
        assert_eq!(weyl_dimension(&hw(&[5, 0])), BigInt::from(6));
        assert_eq!(weyl_dimension(&hw(&[3, 1, 0])), BigInt::from(15));
        assert_eq!(weyl_dimension(&hw(&[2, 0])), BigInt::from(3));
        assert_eq!(enumerate_patterns(&hw(&[1, 0])).len(), 2);
        assert_eq!(enumerate_patterns(&hw(&[0, 0, 0])).len(), 1);
    }

    #[test]
    fn pattern_weights() {
        let top = GtPattern::new(alloc::vec![alloc::vec![1, 0], alloc::vec![1]]).unwrap();
        assert_eq!(top.weight(), WeightVector(alloc::vec![1, 0]));
        let bottom = GtPattern::new(alloc::vec![alloc::vec![1, 0], alloc::vec![0]]).unwrap();
        assert_eq!(bottom.weight(), WeightVector(alloc::vec![0, 1]));
        for p in enumerate_patterns(&hw(&[3, 1, 0])) {
            assert_eq!(p.weight().coord_sum(), 4);
        }
    }

    #[test]
    fn extremal_patterns() {
        let lam = hw(&[3, 1, 0]);
        let id = extremal_pattern(&lam, &[0, 1, 2]);
        assert_eq!(id.weight(), WeightVector(alloc::vec![3, 1, 0]));
        let swap = extremal_pattern(&lam, &[1, 0, 2]);
        assert_eq!(swap.weight(), WeightVector(alloc::vec![1, 3, 0]));
        // constant weights: every sigma gives the same pattern
        let c = hw(&[2, 2, 2]);
        let pats: Vec<_> = crate::perm::all_permutations(3)
            .iter()
            .map(|s| extremal_pattern(&c, s))
            .collect();
        assert!(pats.iter().all(|p| *p == pats[0]));
        // extremal weight spaces are one-dimensional
        let ch = character(&lam);
        for sigma in crate::perm::all_permutations(3) {
            let w = extremal_pattern(&lam, &sigma).weight();
            assert_eq!(ch[&w], 1);
        }
    }

    #[test]
    fn character_examples() {
        let ch = character(&hw(&[1, 0, 0]));
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&m| m == 1));

        let ch = character(&hw(&[3, 1, 0]));
        assert_eq!(ch[&WeightVector(alloc::vec![3, 1, 0])], 1);
        assert_eq!(ch[&WeightVector(alloc::vec![2, 1, 1])], 2);
        assert_eq!(ch.values().sum::<usize>(), 15);

        let ch = character(&hw(&[4, 0]));
        assert_eq!(ch.len(), 5);
        assert!(ch.values().all(|&m| m == 1));
    }

    #[test]
    fn defining_representation_action() {
        let rep = Irrep::new(hw(&[1, 0]));
        let f = rep.generator_action(Generator::Lower(1)).unwrap();
        let e = rep.generator_action(Generator::Raise(1)).unwrap();
        let hi = rep.highest_index();
        let lo = rep.lowest_index();
        assert_eq!(f.entry(lo, hi), rat(1));
        assert!(f.cols[lo].is_zero());
        assert_eq!(e.entry(hi, lo), rat(1));
        assert!(e.cols[hi].is_zero());
    }

    #[test]
    fn raising_kills_highest_lowering_kills_lowest() {
        for lam in [hw(&[2, 0]), hw(&[3, 1, 0]), hw(&[2, 1, 1, 0])] {
            let rep = Irrep::new(lam);
            let hi = rep.highest_index();
            let lo = rep.lowest_index();
            for k in 1..rep.rank() {
                let e = rep.generator_action(Generator::Raise(k)).unwrap();
                assert!(e.cols[hi].is_zero());
                let f = rep.generator_action(Generator::Lower(k)).unwrap();
                assert!(f.cols[lo].is_zero());
            }
        }
    }

    #[test]
    fn sl2_string_length() {
        let rep = Irrep::new(hw(&[2, 0]));
        let f = rep.generator_action(Generator::Lower(1)).unwrap();
        let hi = rep.highest_index();
        let ff = f.compose(&f);
        let fff = ff.compose(&f);
        assert!(!ff.cols[hi].is_zero());
        assert!(fff.cols[hi].is_zero());
    }

    #[test]
    fn commutator_gives_long_root_unit() {
        let rep = Irrep::new(hw(&[1, 1, 0]));
        let a = rep.matrix_unit_action(1, 2).unwrap();
        let b = rep.matrix_unit_action(2, 3).unwrap();
        let e13 = rep.matrix_unit_action(1, 3).unwrap();
        assert_eq!(a.commutator(&b).cols, e13.cols);
    }

    #[test]
    fn defining_rep_long_unit() {
        let rep = Irrep::new(hw(&[1, 0, 0]));
        let e13 = rep.matrix_unit_action(1, 3).unwrap();
        let src = rep
            .weights
            .iter()
            .position(|w| w.as_slice() == [0, 0, 1])
            .unwrap();
        let dst = rep
            .weights
            .iter()
            .position(|w| w.as_slice() == [1, 0, 0])
            .unwrap();
        assert!(!e13.entry(dst, src).is_zero());
    }

    #[test]
    fn commutation_relations_small() {
        for lam in [hw(&[1, 0]), hw(&[2, 1]), hw(&[1, 1, 0]), hw(&[2, 1, 0])] {
            assert_eq!(check_commutation_relations(&lam).unwrap(), None, "{lam}");
        }
    }

    #[test]
    fn actions_are_weight_homogeneous() {
        let rep = Irrep::new(hw(&[2, 1, 0]));
        for i in 1..=3 {
            for j in 1..=3 {
                let m = rep.matrix_unit_action(i, j).unwrap();
                assert_eq!(m.weight_shift, {
                    let mut v = WeightVector::zero(3);
                    if i != j {
                        v = WeightVector::unit_shift(3, i, j);
                    }
                    v
                });
                assert!(check_weight_homogeneous(&m, &rep.weights));
            }
        }
    }

    #[test]
    fn invalid_generator_index() {
        let rep = Irrep::new(hw(&[1, 0]));
        assert!(rep.generator_action(Generator::Raise(2)).is_err());
        assert!(rep.matrix_unit_action(0, 1).is_err());
        assert!(rep.matrix_unit_action(1, 3).is_err());
    }
}
