//! Tensor products of graded modules, and weight-homogeneous operators
//! assembled from per-factor actions.

use alloc::vec::Vec;

use crate::arith::Rat;
use crate::current::GradedCurrentModule;
use crate::error::{CoreError, Result};
use crate::sparse::{Coeff, SparseVec};
use crate::weight::WeightVector;

/// A basis label of a tensor product: one basis index per factor.
pub type TensorLabel = Vec<u32>;

/// A tensor product of graded modules of a common rank, each factor tagged
/// with the quiver component it sits at. Several factors may share a
/// component.
pub struct TensorSpace<'a> {
    pub factors: Vec<&'a GradedCurrentModule>,
    pub components: Vec<usize>,
    n: usize,
}

impl<'a> TensorSpace<'a> {
    pub fn new(factors: Vec<&'a GradedCurrentModule>, components: Vec<usize>) -> Result<Self> {
        assert_eq!(factors.len(), components.len());
        let n = factors
            .first()
            .map(|m| m.rank())
            .ok_or_else(|| CoreError::ModuleInvariant("empty factor list".into()))?;
        for m in &factors {
            if m.rank() != n {
                return Err(CoreError::RankMismatch {
                    expected: n,
                    found: m.rank(),
                });
            }
        }
        Ok(TensorSpace {
            factors,
            components,
            n,
        })
    }

    /// One factor per quiver component, in order.
    pub fn cyclic_arrangement(factors: Vec<&'a GradedCurrentModule>) -> Result<Self> {
        let components = (0..factors.len()).collect();
        TensorSpace::new(factors, components)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Largest z-truncation over the factors.
    pub fn max_trunc(&self) -> usize {
        self.factors.iter().map(|m| m.trunc()).max().unwrap_or(1)
    }

    pub fn label_weight(&self, label: &TensorLabel) -> WeightVector {
        debug_assert_eq!(label.len(), self.arity());
        let mut w = WeightVector::zero(self.n);
        for (f, &idx) in label.iter().enumerate() {
            w = w.add(&self.factors[f].basis()[idx as usize].weight);
        }
        w
    }

    pub fn label_degree(&self, label: &TensorLabel) -> usize {
        label
            .iter()
            .enumerate()
            .map(|(f, &idx)| self.factors[f].basis()[idx as usize].z_degree)
            .sum()
    }

    /// Tensor product of the factors' cyclic vectors.
    pub fn cyclic_label(&self) -> TensorLabel {
        self.factors
            .iter()
            .map(|m| m.cyclic_index() as u32)
            .collect()
    }

    /// Weight of a homogeneous vector, or an error if it mixes weights.
    pub fn weight_of<C: Coeff>(&self, v: &SparseVec<TensorLabel, C>) -> Result<WeightVector> {
        let mut it = v.iter();
        let Some((first, _)) = it.next() else {
            return Err(CoreError::NonHomogeneous);
        };
        let w = self.label_weight(first);
        for (l, _) in it {
            if self.label_weight(l) != w {
                return Err(CoreError::NonHomogeneous);
            }
        }
        Ok(w)
    }

    /// Outer product of per-factor vectors into the tensor basis.
    pub fn product_vector(&self, parts: &[SparseVec<usize, Rat>]) -> SparseVec<TensorLabel, Rat> {
        assert_eq!(parts.len(), self.arity());
        let mut acc: SparseVec<TensorLabel, Rat> = SparseVec::unit(Vec::new());
        for part in parts {
            let mut next = SparseVec::new();
            for (prefix, c) in acc.iter() {
                for (idx, d) in part.iter() {
                    let mut l = prefix.clone();
                    l.push(*idx as u32);
                    next.add_to(l, c.mul_ref(d));
                }
            }
            acc = next;
        }
        acc
    }
}

/// One term of an assembled operator: `coeff * E_{i,j} z^zpow` acting on a
/// single tensor factor.
#[derive(Debug, Clone)]
pub struct OpTerm<C: Coeff> {
    pub factor: usize,
    pub i: usize,
    pub j: usize,
    pub zpow: usize,
    pub coeff: C,
}

/// A weight-homogeneous operator on a tensor product, stored as a sum of
/// single-factor terms.
#[derive(Debug, Clone)]
pub struct AssembledOp<C: Coeff> {
    pub weight_shift: WeightVector,
    pub terms: Vec<OpTerm<C>>,
    /// Diagnostic name used in reports.
    pub name: alloc::string::String,
}

impl<C: Coeff> AssembledOp<C> {
    pub fn apply(
        &self,
        space: &TensorSpace<'_>,
        v: &SparseVec<TensorLabel, C>,
    ) -> SparseVec<TensorLabel, C> {
        let mut out = SparseVec::new();
        for (label, c) in v.iter() {
            for term in &self.terms {
                let Some(m) = space.factors[term.factor].action(term.i, term.j, term.zpow) else {
                    continue;
                };
                let src = label[term.factor] as usize;
                let col = &m.cols[src];
                if col.is_zero() {
                    continue;
                }
                let scale = c.mul_ref(&term.coeff);
                for (dst, a) in col.iter() {
                    let mut l = label.clone();
                    l[term.factor] = *dst as u32;
                    out.add_to(l, scale.mul_ref(&rat_to_c::<C>(a)));
                }
            }
        }
        out
    }
}

fn rat_to_c<C: Coeff>(r: &Rat) -> C {
    C::from_rat(r)
}

/// Diagonal action of the plain current algebra: `E_{i,j} z^k` applied to
/// every factor with coefficient one. The operator set generating the full
/// cyclic span of a tensor product.
pub fn current_operators(space: &TensorSpace<'_>) -> Vec<AssembledOp<Rat>> {
    let n = space.rank();
    let nmax = space.max_trunc();
    let mut ops = Vec::new();
    for k in 0..nmax {
        for i in 1..=n {
            for j in 1..=n {
                if i == j && k == 0 {
                    continue; // scalar on every weight vector
                }
                let terms = (0..space.arity())
                    .map(|f| OpTerm {
                        factor: f,
                        i,
                        j,
                        zpow: k,
                        coeff: crate::arith::one(),
                    })
                    .collect();
                ops.push(AssembledOp {
                    weight_shift: if i == j {
                        WeightVector::zero(n)
                    } else {
                        WeightVector::unit_shift(n, i, j)
                    },
                    terms,
                    name: alloc::format!("E[{i},{j}]z^{k}"),
                });
            }
        }
    }
    ops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::gt::HighestWeight;

    #[test]
    fn product_vector_and_weights() {
        let a = crate::current::finite_module(&HighestWeight::new(alloc::vec![1, 0]).unwrap());
        let b = crate::current::finite_module(&HighestWeight::new(alloc::vec![2, 0]).unwrap());
        let space = TensorSpace::cyclic_arrangement(alloc::vec![&a, &b]).unwrap();
        assert_eq!(space.arity(), 2);
        let v = space.product_vector(&[
            SparseVec::from_entries([(0usize, rat(2))]),
            SparseVec::from_entries([(1usize, rat(3))]),
        ]);
        assert_eq!(v.len(), 1);
        let (l, c) = v.iter().next().unwrap();
        assert_eq!(c, &rat(6));
        let w = space.label_weight(l);
        assert_eq!(w.len(), 2);
    }
}
