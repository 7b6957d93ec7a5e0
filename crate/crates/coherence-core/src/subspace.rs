//! Work-list closure of operator-stable subspaces of tensor products, with
//! exact per-weight echelon bases.
//!
//! The result of [`closure`] is the smallest subspace containing the seeds
//! and stable under the given weight-homogeneous operators; its per-weight
//! reduced echelon bases are canonical, so the output is independent of seed
//! order and work-list scheduling.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::arith::Rat;
use crate::error::{CoreError, Result};
use crate::sparse::{Insert, QEchelon, SparseVec};
use crate::tensor::{AssembledOp, TensorLabel, TensorSpace};
use crate::weight::WeightVector;

/// A weight-graded subspace of a tensor product: one reduced echelon basis
/// per weight, every stored vector homogeneous of its key weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightGradedSubspace {
    spaces: BTreeMap<WeightVector, QEchelon<TensorLabel>>,
}

impl WeightGradedSubspace {
    pub fn new() -> Self {
        WeightGradedSubspace {
            spaces: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(|e| e.dim()).sum()
    }

    pub fn stored_entries(&self) -> usize {
        self.spaces.values().map(|e| e.stored_entries()).sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = &WeightVector> {
        self.spaces.keys()
    }

    pub fn space(&self, w: &WeightVector) -> Option<&QEchelon<TensorLabel>> {
        self.spaces.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, &QEchelon<TensorLabel>)> {
        self.spaces.iter()
    }

    /// Insert a vector known to be homogeneous of weight `w`.
    pub fn insert(&mut self, w: WeightVector, v: &SparseVec<TensorLabel, Rat>) -> Insert<TensorLabel> {
        self.spaces.entry(w).or_default().insert(v)
    }

    /// Dimension per weight.
    pub fn character(&self) -> BTreeMap<WeightVector, usize> {
        self.spaces
            .iter()
            .filter(|(_, e)| e.dim() > 0)
            .map(|(w, e)| (w.clone(), e.dim()))
            .collect()
    }

    /// Membership of a weight-homogeneous vector.
    pub fn contains(&self, space: &TensorSpace<'_>, v: &SparseVec<TensorLabel, Rat>) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        let w = space.weight_of(v)?;
        Ok(self
            .spaces
            .get(&w)
            .map(|e| e.contains(v))
            .unwrap_or(false))
    }

    /// Exact subspace equality (not only dimensions).
    pub fn equals(&self, other: &WeightGradedSubspace) -> bool {
        if self.character() != other.character() {
            return false;
        }
        for (w, e) in &self.spaces {
            if e.dim() == 0 {
                continue;
            }
            let Some(oe) = other.spaces.get(w) else {
                return false;
            };
            for (_, row) in e.rows() {
                if !oe.contains(row) {
                    return false;
                }
            }
        }
        true
    }

    /// Span of the union.
    pub fn sum(&self, other: &WeightGradedSubspace) -> WeightGradedSubspace {
        let mut out = self.clone();
        for (w, e) in &other.spaces {
            for (_, row) in e.rows() {
                out.insert(w.clone(), row);
            }
        }
        out
    }

    /// `dim(self ∩ other) = dim self + dim other - dim(self + other)`.
    pub fn intersection_dimension(&self, other: &WeightGradedSubspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// The intersection subspace, weight by weight: combinations of this
    /// basis whose reductions against the other basis vanish.
    pub fn intersection(&self, other: &WeightGradedSubspace) -> WeightGradedSubspace {
        let mut out = WeightGradedSubspace::new();
        for (w, e) in &self.spaces {
            let Some(oe) = other.spaces.get(w) else { continue };
            let rows: Vec<SparseVec<TensorLabel, Rat>> =
                e.rows().map(|(_, r)| r.clone()).collect();
            let remainders: Vec<SparseVec<TensorLabel, Rat>> =
                rows.iter().map(|r| oe.reduce(r)).collect();
            for combo in kernel_combos(&remainders) {
                let mut v: SparseVec<TensorLabel, Rat> = SparseVec::new();
                for (c, row) in combo.iter().zip(rows.iter()) {
                    v.axpy(c, row);
                }
                if !v.is_zero() {
                    out.insert(w.clone(), &v);
                }
            }
        }
        out
    }

    /// Dimension per `(weight, z-degree)`, where the degree of an echelon
    /// vector is read off a degree-descending re-echelonization; for
    /// degree-homogeneous subspaces this is the plain graded character.
    pub fn degree_character(
        &self,
        space: &TensorSpace<'_>,
    ) -> BTreeMap<(WeightVector, usize), usize> {
        let mut out = BTreeMap::new();
        for (w, e) in &self.spaces {
            let mut desc: QEchelon<(Reverse<usize>, TensorLabel)> = QEchelon::new();
            for (_, row) in e.rows() {
                let mapped = row.map_labels(|l| (Reverse(space.label_degree(l)), l.clone()));
                if let Insert::Added((Reverse(d), _)) = desc.insert(&mapped) {
                    *out.entry((w.clone(), d)).or_insert(0) += 1;
                }
            }
        }
        out
    }
}

/// Rational combinations of the given vectors that vanish: a basis of the
/// kernel of the matrix with those columns, by forward elimination with
/// combination tracking.
fn kernel_combos(vecs: &[SparseVec<TensorLabel, Rat>]) -> Vec<Vec<Rat>> {
    let mut rows: Vec<(SparseVec<TensorLabel, Rat>, Vec<Rat>)> = Vec::new();
    let mut kernel = Vec::new();
    for (idx, v) in vecs.iter().enumerate() {
        let mut e = v.clone();
        let mut combo = alloc::vec![crate::arith::zero(); vecs.len()];
        combo[idx] = crate::arith::one();
        for (row, rcombo) in &rows {
            let Some((pl, _)) = row.leading() else { continue };
            if let Some(c) = e.get(pl).cloned() {
                let pc = row.get(pl).unwrap().clone();
                let factor = c / pc;
                e.axpy(&-factor.clone(), row);
                for (a, b) in combo.iter_mut().zip(rcombo.iter()) {
                    *a = a.clone() - &factor * b;
                }
            }
        }
        if e.is_zero() {
            kernel.push(combo);
        } else {
            rows.push((e, combo));
        }
    }
    kernel
}

/// Smallest operator-stable subspace containing the seeds.
///
/// `cap` bounds the number of stored entries; exceeding it aborts with
/// [`CoreError::MemoryCap`].
pub fn closure(
    space: &TensorSpace<'_>,
    seeds: &[SparseVec<TensorLabel, Rat>],
    ops: &[AssembledOp<Rat>],
    cap: usize,
) -> Result<WeightGradedSubspace> {
    let mut s = WeightGradedSubspace::new();
    let mut queue: VecDeque<(WeightVector, SparseVec<TensorLabel, Rat>)> = VecDeque::new();
    for seed in seeds {
        if seed.is_zero() {
            continue;
        }
        let w = space.weight_of(seed)?;
        if let Insert::Added(p) = s.insert(w.clone(), seed) {
            let row = s.space(&w).unwrap().row(&p).unwrap().clone();
            queue.push_back((w, row));
        }
    }
    let mut steps = 0usize;
    while let Some((w, v)) = queue.pop_front() {
        for op in ops {
            let img = op.apply(space, &v);
            if img.is_zero() {
                continue;
            }
            let wi = w.add(&op.weight_shift);
            if let Insert::Added(p) = s.insert(wi.clone(), &img) {
                let row = s.space(&wi).unwrap().row(&p).unwrap().clone();
                queue.push_back((wi, row));
            }
        }
        steps += 1;
        if steps.is_multiple_of(32) {
            let entries = s.stored_entries();
            if entries > cap {
                return Err(CoreError::MemoryCap { entries, cap });
            }
        }
    }
    let entries = s.stored_entries();
    if entries > cap {
        return Err(CoreError::MemoryCap { entries, cap });
    }
    Ok(s)
}

/// Closure from a single seed.
pub fn cyclic_closure(
    space: &TensorSpace<'_>,
    seed: &SparseVec<TensorLabel, Rat>,
    ops: &[AssembledOp<Rat>],
    cap: usize,
) -> Result<WeightGradedSubspace> {
    closure(space, core::slice::from_ref(seed), ops, cap)
}

/// Check that `s` is stable under every operator: each operator applied to
/// each basis vector reduces to zero remainder.
pub fn is_stable(space: &TensorSpace<'_>, s: &WeightGradedSubspace, ops: &[AssembledOp<Rat>]) -> bool {
    for (w, e) in s.iter() {
        for (_, row) in e.rows() {
            for op in ops {
                let img = op.apply(space, row);
                if img.is_zero() {
                    continue;
                }
                let wi = w.add(&op.weight_shift);
                let ok = s.space(&wi).map(|e| e.contains(&img)).unwrap_or(false);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// A permutation together with its extremal seed vector.
pub type Seed = (Vec<usize>, SparseVec<TensorLabel, Rat>);

/// The seed family for the extremal-generation closure: for each permutation
/// the tensor product of the factors' extremal vectors, with its weight.
pub fn conjecture_seeds(space: &TensorSpace<'_>) -> Result<Vec<Seed>> {
    let n = space.rank();
    let mut out = Vec::new();
    for sigma in crate::perm::all_permutations(n) {
        let parts: Result<Vec<_>> = space
            .factors
            .iter()
            .map(|m| crate::current::extremal_vector(m, &sigma))
            .collect();
        let v = space.product_vector(&parts?);
        out.push((sigma, v));
    }
    Ok(out)
}
