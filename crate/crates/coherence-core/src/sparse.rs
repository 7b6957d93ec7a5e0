//! Sparse vectors over an exact coefficient ring, and canonical echelon
//! bases over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::Zero;

use crate::arith::Rat;

/// Exact coefficient ring for sparse vectors.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn vanishes(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn vanishes(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// A sparse vector: a finite map from ordered basis labels to nonzero
/// coefficients. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec<L: Ord + Clone, C: Coeff> {
    entries: BTreeMap<L, C>,
}

impl<L: Ord + Clone, C: Coeff> Default for SparseVec<L, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone, C: Coeff> SparseVec<L, C> {
    pub fn new() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(label: L) -> Self {
        let mut v = SparseVec::new();
        v.set(label, C::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (L, C)>>(it: I) -> Self {
        let mut v = SparseVec::new();
        for (l, c) in it {
            v.add_to(l, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &L) -> Option<&C> {
        self.entries.get(label)
    }

    /// First (smallest-label) entry.
    pub fn leading(&self) -> Option<(&L, &C)> {
        self.entries.iter().next()
    }

    pub fn set(&mut self, label: L, value: C) {
        if value.vanishes() {
            self.entries.remove(&label);
        } else {
            self.entries.insert(label, value);
        }
    }

    pub fn add_to(&mut self, label: L, value: C) {
        if value.vanishes() {
            return;
        }
        match self.entries.remove(&label) {
            None => {
                self.entries.insert(label, value);
            }
            Some(old) => {
                let s = old.add_ref(&value);
                if !s.vanishes() {
                    self.entries.insert(label, s);
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &C, other: &SparseVec<L, C>) {
        if c.vanishes() {
            return;
        }
        for (l, v) in other.entries.iter() {
            self.add_to(l.clone(), c.mul_ref(v));
        }
    }

    pub fn add_assign_vec(&mut self, other: &SparseVec<L, C>) {
        for (l, v) in other.entries.iter() {
            self.add_to(l.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &C) -> SparseVec<L, C> {
        if c.vanishes() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(l, v)| (l.clone(), v.mul_ref(c)))
                .filter(|(_, v)| !v.vanishes())
                .collect(),
        }
    }

    pub fn negated(&self) -> SparseVec<L, C> {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(l, v)| (l.clone(), v.neg_ref()))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &C)> {
        self.entries.iter()
    }

    pub fn map_labels<M: Ord + Clone, F: Fn(&L) -> M>(&self, f: F) -> SparseVec<M, C> {
        let mut out = SparseVec::new();
        for (l, c) in self.iter() {
            out.add_to(f(l), c.clone());
        }
        out
    }

    /// Tensor/outer product: labels combined by `f`, coefficients multiplied.
    pub fn outer<M: Ord + Clone, N: Ord + Clone, F: Fn(&L, &M) -> N>(
        &self,
        other: &SparseVec<M, C>,
        f: F,
    ) -> SparseVec<N, C> {
        let mut out = SparseVec::new();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add_to(f(a, b), ca.mul_ref(cb));
            }
        }
        out
    }
}

/// Outcome of inserting a vector into an echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert<L> {
    /// The vector was already in the span.
    Dependent,
    /// A new pivot was created at this label.
    Added(L),
}

/// A reduced row-echelon basis over the rationals, pivoted on the canonical
/// label order. The stored basis is the unique reduced echelon basis of its
/// span, independent of insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QEchelon<L: Ord + Clone> {
    rows: BTreeMap<L, SparseVec<L, Rat>>,
    entries: usize,
}

impl<L: Ord + Clone> Default for QEchelon<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone> QEchelon<L> {
    pub fn new() -> Self {
        QEchelon {
            rows: BTreeMap::new(),
            entries: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn stored_entries(&self) -> usize {
        self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = (&L, &SparseVec<L, Rat>)> {
        self.rows.iter()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &L> {
        self.rows.keys()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &SparseVec<L, Rat>) -> SparseVec<L, Rat> {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut SparseVec<L, Rat>) {
        loop {
            let hit = v
                .iter()
                .find_map(|(l, _)| self.rows.get_key_value(l).map(|(k, _)| k.clone()));
            match hit {
                None => return,
                Some(p) => {
                    let c = v.get(&p).cloned().unwrap();
                    let row = &self.rows[&p];
                    v.axpy(&-c, row);
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<L, Rat>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Express `v` in the row basis: coefficients keyed by pivot label.
    /// `None` if `v` is outside the span.
    pub fn express(&self, v: &SparseVec<L, Rat>) -> Option<Vec<(L, Rat)>> {
        let mut v = v.clone();
        let mut coeffs = Vec::new();
        loop {
            let hit = v
                .iter()
                .find_map(|(l, _)| self.rows.get_key_value(l).map(|(k, _)| k.clone()));
            match hit {
                None => {
                    if v.is_zero() {
                        return Some(coeffs);
                    }
                    return None;
                }
                Some(p) => {
                    let c = v.get(&p).cloned().unwrap();
                    v.axpy(&-c.clone(), &self.rows[&p]);
                    coeffs.push((p, c));
                }
            }
        }
    }

    /// Insert `v`; the basis stays in reduced echelon form.
    pub fn insert(&mut self, v: &SparseVec<L, Rat>) -> Insert<L> {
        let mut v = self.reduce(v);
        if v.is_zero() {
            return Insert::Dependent;
        }
        let (pivot, lead) = {
            let (l, c) = v.leading().unwrap();
            (l.clone(), c.clone())
        };
        let inv = Rat::new(lead.denom().clone(), lead.numer().clone());
        v = v.scaled(&inv);
        // keep reduced form: clear the new pivot from existing rows
        let affected: Vec<L> = self
            .rows
            .iter()
            .filter(|(_, row)| row.get(&pivot).is_some())
            .map(|(p, _)| p.clone())
            .collect();
        for p in affected {
            let row = self.rows.get_mut(&p).unwrap();
            self.entries -= row.len();
            let c = row.get(&pivot).cloned().unwrap();
            row.axpy(&-c, &v);
            self.entries += row.len();
        }
        self.entries += v.len();
        self.rows.insert(pivot.clone(), v);
        Insert::Added(pivot)
    }

    /// The normalized row with the given pivot.
    pub fn row(&self, pivot: &L) -> Option<&SparseVec<L, Rat>> {
        self.rows.get(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn v(pairs: &[(u32, i64)]) -> SparseVec<u32, Rat> {
        SparseVec::from_entries(pairs.iter().map(|&(l, c)| (l, rat(c))))
    }

    #[test]
    fn sparse_basics() {
        let mut a = v(&[(0, 1), (2, -3)]);
        a.add_to(2, rat(3));
        assert_eq!(a.len(), 1);
        a.axpy(&rat(2), &v(&[(0, 1), (5, 1)]));
        assert_eq!(a.get(&0), Some(&rat(3)));
        assert_eq!(a.get(&5), Some(&rat(2)));
        assert_eq!(a.leading().unwrap().0, &0);
    }

    #[test]
    fn echelon_is_canonical() {
        let vecs = [v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 2), (2, -4)])];
        let mut fwd = QEchelon::new();
        for x in &vecs {
            fwd.insert(x);
        }
        let mut rev = QEchelon::new();
        for x in vecs.iter().rev() {
            rev.insert(x);
        }
        assert_eq!(fwd, rev);
        assert_eq!(fwd.dim(), 2);
        assert!(fwd.contains(&v(&[(0, 4), (1, 5), (2, -3)])));
        assert!(!fwd.contains(&v(&[(0, 4), (1, 2), (2, -3)])));
    }

    #[test]
    fn express_roundtrip() {
        let mut e = QEchelon::new();
        e.insert(&v(&[(0, 2), (1, 1)]));
        e.insert(&v(&[(1, 3)]));
        let target = v(&[(0, 4), (1, 7)]);
        let coeffs = e.express(&target).unwrap();
        let mut rebuilt: SparseVec<u32, Rat> = SparseVec::new();
        for (p, c) in coeffs {
            rebuilt.axpy(&c, e.row(&p).unwrap());
        }
        assert_eq!(rebuilt, target);
        assert!(e.express(&v(&[(5, 1)])).is_none());
    }

    #[test]
    fn fractional_pivots() {
        let mut e = QEchelon::new();
        let mut x: SparseVec<u32, Rat> = SparseVec::new();
        x.set(3, rat_frac(2, 3));
        x.set(7, rat_frac(-1, 5));
        e.insert(&x);
        let row = e.row(&3).unwrap();
        assert_eq!(row.get(&3), Some(&rat(1)));
    }
}
