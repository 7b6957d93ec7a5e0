//! Univariate polynomials in the contraction parameter, and Hermite-form
//! echelon bases for lattices over that polynomial ring.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::sparse::{Coeff, SparseVec};

/// A polynomial in the formal contraction parameter with exact rational
/// coefficients; `coeffs[k]` multiplies the k-th power, trailing zeros are
/// stripped, the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsPoly {
    coeffs: Vec<Rat>,
}

impl EpsPoly {
    pub fn zero() -> Self {
        EpsPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        EpsPoly::constant(crate::arith::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            EpsPoly::zero()
        } else {
            EpsPoly {
                coeffs: alloc::vec![c],
            }
        }
    }

    /// The monomial `c * eps^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        let mut coeffs = alloc::vec![crate::arith::zero(); k + 1];
        coeffs[k] = c;
        EpsPoly { coeffs }
    }

    pub fn eps() -> Self {
        EpsPoly::monomial(crate::arith::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = EpsPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(crate::arith::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient; zero polynomial yields zero.
    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(crate::arith::zero)
    }

    /// Lowest power with nonzero coefficient, or `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Value at zero: the constant coefficient.
    pub fn eval_zero(&self) -> Rat {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = crate::arith::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &EpsPoly) -> EpsPoly {
        let n = core::cmp::max(self.coeffs.len(), other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &EpsPoly) -> EpsPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> EpsPoly {
        EpsPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &EpsPoly) -> EpsPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return EpsPoly::zero();
        }
        let mut coeffs = alloc::vec![crate::arith::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> EpsPoly {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        EpsPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `eps^k`.
    pub fn shift_up(&self, k: usize) -> EpsPoly {
        if self.coeffs.is_empty() {
            return EpsPoly::zero();
        }
        let mut coeffs = alloc::vec![crate::arith::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        EpsPoly { coeffs }
    }

    /// Exact division by `eps^k`; panics if the valuation is smaller.
    pub fn shift_down(&self, k: usize) -> EpsPoly {
        if k == 0 {
            return self.clone();
        }
        assert!(self.valuation().map(|v| v >= k).unwrap_or(true));
        EpsPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &EpsPoly) -> (EpsPoly, EpsPoly) {
        assert!(!d.coeffs.is_empty(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = {
            let l = d.leading_coeff();
            Rat::new(l.denom().clone(), l.numer().clone())
        };
        let mut r = self.clone();
        let mut q = EpsPoly::zero();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff() * &lead_inv;
            let t = EpsPoly::monomial(c, rd - dd);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        (q, r)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &EpsPoly) -> EpsPoly {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Monic normalization: `(self / lc, lc)`.
    pub fn monic(&self) -> (EpsPoly, Rat) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (self.clone(), crate::arith::one());
        }
        let inv = Rat::new(lc.denom().clone(), lc.numer().clone());
        (self.scale(&inv), lc)
    }

    /// Canonical text form, e.g. `3/2 + x^2 - x^3` with `x` the parameter.
    pub fn display_with(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                s.push_str(" + ");
            }
            first = false;
            if k == 0 {
                let _ = write!(s, "{c}");
            } else if c.is_one() {
                let _ = write!(s, "{var}^{k}");
            } else {
                let _ = write!(s, "{c}*{var}^{k}");
            }
        }
        s
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("eps"))
    }
}

impl Coeff for EpsPoly {
    fn zero() -> Self {
        EpsPoly::zero()
    }
    fn one() -> Self {
        EpsPoly::one()
    }
    fn from_rat(r: &Rat) -> Self {
        EpsPoly::constant(r.clone())
    }
    fn vanishes(&self) -> bool {
        EpsPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` and `(s, t)` with
/// `s*a + t*b = g`. At least one input must be nonzero.
pub fn gcd_ext(a: &EpsPoly, b: &EpsPoly) -> (EpsPoly, EpsPoly, EpsPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = EpsPoly::one();
    let mut s1 = EpsPoly::zero();
    let mut t0 = EpsPoly::zero();
    let mut t1 = EpsPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert!(!r0.is_zero(), "gcd of two zero polynomials");
    let (g, lc) = r0.monic();
    let inv = Rat::new(lc.denom().clone(), lc.numer().clone());
    (g, s0.scale(&inv), t0.scale(&inv))
}

/// Growth outcome of a lattice insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeInsert {
    Unchanged,
    Grew,
}

/// A triangular basis of a module over the polynomial ring, pivoted on the
/// canonical label order with monic pivot polynomials. After
/// [`PolyEchelon::canonicalize`] the basis is the unique Hermite form of its
/// module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEchelon<L: Ord + Clone> {
    rows: BTreeMap<L, SparseVec<L, EpsPoly>>,
}

impl<L: Ord + Clone> Default for PolyEchelon<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone> PolyEchelon<L> {
    pub fn new() -> Self {
        PolyEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&L, &SparseVec<L, EpsPoly>)> {
        self.rows.iter()
    }

    pub fn stored_entries(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    /// Insert `v` into the module; reports whether the module grew.
    pub fn insert(&mut self, v: &SparseVec<L, EpsPoly>) -> LatticeInsert {
        let mut v = v.clone();
        let mut grew = false;
        while let Some((lead, _)) = v.leading() {
            let lead = lead.clone();
            match self.rows.get(&lead).cloned() {
                None => {
                    let lc = v.get(&lead).unwrap().leading_coeff();
                    let inv = Rat::new(lc.denom().clone(), lc.numer().clone());
                    let row = v.scaled(&EpsPoly::constant(inv));
                    self.rows.insert(lead, row);
                    grew = true;
                    break;
                }
                Some(row) => {
                    let p = row.get(&lead).unwrap().clone();
                    let vl = v.get(&lead).unwrap().clone();
                    let (q, r) = vl.divmod(&p);
                    if r.is_zero() {
                        v.axpy(&q.neg(), &row);
                    } else {
                        // pivot gcd update; the row replacement is unimodular
                        let (g, s, t) = gcd_ext(&p, &vl);
                        let mut new_row = row.scaled(&s);
                        new_row.axpy(&t, &v);
                        let mut v_next = v.scaled(&p.div_exact(&g));
                        v_next.axpy(&vl.div_exact(&g).neg(), &row);
                        debug_assert!(new_row.get(&lead).map(|c| c == &g).unwrap_or(false));
                        self.rows.insert(lead, new_row);
                        v = v_next;
                        grew = true;
                    }
                }
            }
        }
        if grew {
            LatticeInsert::Grew
        } else {
            LatticeInsert::Unchanged
        }
    }

    /// Exact module membership.
    pub fn contains(&self, v: &SparseVec<L, EpsPoly>) -> bool {
        let mut v = v.clone();
        while let Some((lead, _)) = v.leading() {
            let lead = lead.clone();
            match self.rows.get(&lead) {
                None => return false,
                Some(row) => {
                    let p = row.get(&lead).unwrap();
                    let vl = v.get(&lead).unwrap().clone();
                    let (q, r) = vl.divmod(p);
                    if !r.is_zero() {
                        return false;
                    }
                    v.axpy(&q.neg(), row);
                }
            }
        }
        true
    }

    /// Reduce foreign-pivot entries below the pivot degree; afterwards the
    /// basis is the canonical Hermite form of the module.
    pub fn canonicalize(&mut self) {
        let pivots: Vec<L> = self.rows.keys().cloned().collect();
        for target in pivots.iter() {
            let mut row = self.rows.remove(target).unwrap();
            for other in pivots.iter() {
                if other == target {
                    continue;
                }
                if let Some(entry) = row.get(other).cloned() {
                    let orow = &self.rows[other];
                    let p = orow.get(other).unwrap();
                    let (q, _) = entry.divmod(p);
                    if !q.is_zero() {
                        row.axpy(&q.neg(), orow);
                    }
                }
            }
            self.rows.insert(target.clone(), row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> EpsPoly {
        EpsPoly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn poly_arithmetic() {
        let a = p(&[1, 2]); // 1 + 2x
        let b = p(&[0, 1]); // x
        assert_eq!(a.mul(&b), p(&[0, 1, 2]));
        assert_eq!(a.add(&b), p(&[1, 3]));
        assert_eq!(a.sub(&a), EpsPoly::zero());
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(b.valuation(), Some(1));
        assert_eq!(p(&[0, 0, 3]).shift_down(2), p(&[3]));
        assert_eq!(a.eval_zero(), rat(1));
        assert_eq!(a.eval(&rat(3)), rat(7));
    }

    #[test]
    fn divmod_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.divmod(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());

        let (g, s, t) = gcd_ext(&p(&[-1, 0, 1]), &p(&[1, 2, 1]));
        assert_eq!(g, p(&[1, 1]));
        let lhs = s.mul(&p(&[-1, 0, 1])).add(&t.mul(&p(&[1, 2, 1])));
        assert_eq!(lhs, g);
    }

    #[test]
    fn lattice_gcd_update() {
        // rows x*e0 and (x+1)*e0 generate the unit lattice at label 0
        let mut lat: PolyEchelon<u32> = PolyEchelon::new();
        let mut v1 = SparseVec::new();
        v1.set(0u32, p(&[0, 1]));
        let mut v2 = SparseVec::new();
        v2.set(0u32, p(&[1, 1]));
        assert_eq!(lat.insert(&v1), LatticeInsert::Grew);
        assert_eq!(lat.insert(&v2), LatticeInsert::Grew);
        assert_eq!(lat.rank(), 1);
        let mut unit = SparseVec::new();
        unit.set(0u32, EpsPoly::one());
        assert!(lat.contains(&unit));
        assert_eq!(lat.insert(&unit), LatticeInsert::Unchanged);
    }

    #[test]
    fn lattice_membership_respects_divisibility() {
        let mut lat: PolyEchelon<u32> = PolyEchelon::new();
        let mut v = SparseVec::new();
        v.set(0u32, p(&[0, 1]));
        lat.insert(&v);
        let mut w = SparseVec::new();
        w.set(0u32, EpsPoly::one());
        assert!(!lat.contains(&w));
        let mut x = SparseVec::new();
        x.set(0u32, p(&[0, 0, 5]));
        assert!(lat.contains(&x));
    }

    #[test]
    fn canonical_form_is_reduced() {
        let mut lat: PolyEchelon<u32> = PolyEchelon::new();
        let mut v1 = SparseVec::new();
        v1.set(0u32, p(&[0, 1]));
        v1.set(1u32, p(&[0, 0, 7]));
        let mut v2 = SparseVec::new();
        v2.set(1u32, p(&[0, 1]));
        lat.insert(&v1);
        lat.insert(&v2);
        lat.canonicalize();
        let row0 = lat.rows().next().unwrap().1.clone();
        let reduced = row0
            .get(&1u32)
            .map(|p| p.degree().unwrap_or(0) < 1)
            .unwrap_or(true);
        assert!(reduced);
    }
}
