//! Finite-dimensional graded cyclic modules over the truncated current
//! algebra `gl_n[z]/z^N`, with explicit exact action matrices.
//!
//! Three constructors are provided: [`finite_module`] (the current algebra
//! acts through its degree-zero quotient), [`evaluation_module`] (`x z^k`
//! acts as `c^k x`), and [`fusion_module`] (the associated graded of the
//! cyclic span inside a tensor product of evaluation modules at pairwise
//! distinct points). Every stored module carries its bracket relations, and
//! validation recomputes them entry by entry.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{rat_pow, Rat};
use crate::error::{CoreError, Result};
use crate::gt::{HighestWeight, Irrep, OpMatrix};
use crate::sparse::{Coeff, SparseVec};
use crate::weight::WeightVector;

/// One basis vector of a graded module: its `gl_n` weight and z-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub weight: WeightVector,
    pub z_degree: usize,
}

/// A finite-dimensional module over `gl_n[z]` on which `x z^k` acts as zero
/// for `k >= trunc`, given by exact action matrices for every `E_{i,j} z^k`.
#[derive(Debug, Clone)]
pub struct GradedCurrentModule {
    n: usize,
    trunc: usize,
    basis: Vec<BasisVector>,
    actions: BTreeMap<(usize, usize, usize), OpMatrix>,
    cyclic: usize,
    name: String,
}

impl GradedCurrentModule {
    /// Assemble a module from parts without validation; callers are expected
    /// to validate (constructors in this module do).
    pub fn from_parts(
        n: usize,
        trunc: usize,
        basis: Vec<BasisVector>,
        actions: BTreeMap<(usize, usize, usize), OpMatrix>,
        cyclic: usize,
        name: String,
    ) -> Self {
        GradedCurrentModule {
            n,
            trunc,
            basis,
            actions,
            cyclic,
            name,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn cyclic_index(&self) -> usize {
        self.cyclic
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn actions(&self) -> &BTreeMap<(usize, usize, usize), OpMatrix> {
        &self.actions
    }

    /// Mutable access, for fault-injection paths in the property suites.
    pub fn actions_mut(&mut self) -> &mut BTreeMap<(usize, usize, usize), OpMatrix> {
        &mut self.actions
    }

    /// Action of `E_{i,j} z^k`; `None` means the zero matrix.
    pub fn action(&self, i: usize, j: usize, k: usize) -> Option<&OpMatrix> {
        self.actions.get(&(i, j, k))
    }

    /// Action as an owned matrix, materializing zeros.
    pub fn action_or_zero(&self, i: usize, j: usize, k: usize) -> OpMatrix {
        match self.action(i, j, k) {
            Some(m) => m.clone(),
            None => OpMatrix::zero(
                self.dim(),
                if i == j {
                    WeightVector::zero(self.n)
                } else {
                    WeightVector::unit_shift(self.n, i, j)
                },
                k as i64,
            ),
        }
    }

    /// Weight-and-degree character of the underlying graded space.
    pub fn graded_character(&self) -> BTreeMap<(WeightVector, usize), usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry((b.weight.clone(), b.z_degree)).or_insert(0) += 1;
        }
        out
    }

    /// Validate all structural invariants; every failure is described.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let dim = self.dim();
        // shift conformance and grading
        for (&(i, j, k), m) in &self.actions {
            if m.dim() != dim {
                report.fail(format!("action E[{i},{j}]z^{k} has wrong dimension"));
                return report;
            }
            if k >= self.trunc {
                report.fail(format!("action E[{i},{j}]z^{k} stored beyond truncation"));
            }
            for (src, col) in m.cols.iter().enumerate() {
                for (dst, c) in col.iter() {
                    if c.vanishes() {
                        continue;
                    }
                    let mut w = self.basis[src].weight.clone();
                    if i != j {
                        w = w.add(&WeightVector::unit_shift(self.n, i, j));
                    }
                    if self.basis[*dst].weight != w {
                        report.shifts_ok = false;
                        report.fail(format!("E[{i},{j}]z^{k} breaks a weight shift at {src}->{dst}"));
                    }
                    if self.basis[*dst].z_degree != self.basis[src].z_degree + k {
                        report.graded_ok = false;
                    }
                }
            }
        }
        // bracket relations below the truncation, vanishing at or above it
        for (&(i, j, a), ma) in &self.actions {
            for (&(k, l, b), mb) in &self.actions {
                let lhs = ma.commutator(mb);
                if a + b >= self.trunc {
                    if !lhs.is_zero() && report.truncated_ok {
                        report.truncated_ok = false;
                        report.fail(format!(
                            "[E[{i},{j}]z^{a}, E[{k},{l}]z^{b}] does not vanish beyond truncation"
                        ));
                    }
                    continue;
                }
                let mut expected = OpMatrix::zero(dim, lhs.weight_shift.clone(), (a + b) as i64);
                if j == k {
                    expected =
                        expected.add(&with_shift(self.action_or_zero(i, l, a + b), &lhs.weight_shift));
                }
                if l == i {
                    expected =
                        expected.sub(&with_shift(self.action_or_zero(k, j, a + b), &lhs.weight_shift));
                }
                if lhs.cols != expected.cols && report.brackets_ok {
                    report.brackets_ok = false;
                    report.fail(format!(
                        "bracket [E[{i},{j}]z^{a}, E[{k},{l}]z^{b}] violated"
                    ));
                }
            }
        }
        // cyclicity under the full action closure
        if self.cyclic >= dim {
            report.fail(String::from("cyclic index out of range"));
            return report;
        }
        let span = self.cyclic_span_dim();
        if span != dim {
            report.cyclic_ok = false;
            report.fail(format!("cyclic span has dimension {span} of {dim}"));
        }
        report
    }

    /// Dimension of the span of the cyclic vector under all stored actions.
    fn cyclic_span_dim(&self) -> usize {
        let mut ech: crate::sparse::QEchelon<usize> = crate::sparse::QEchelon::new();
        let mut queue: Vec<SparseVec<usize, Rat>> = Vec::new();
        let seed = SparseVec::unit(self.cyclic);
        if let crate::sparse::Insert::Added(p) = ech.insert(&seed) {
            queue.push(ech.row(&p).unwrap().clone());
        }
        while let Some(v) = queue.pop() {
            for m in self.actions.values() {
                let img = m.apply(&v);
                if img.is_zero() {
                    continue;
                }
                if let crate::sparse::Insert::Added(p) = ech.insert(&img) {
                    queue.push(ech.row(&p).unwrap().clone());
                }
            }
        }
        ech.dim()
    }

    pub fn validate_strict(&self) -> Result<()> {
        let report = self.validate();
        if report.ok() {
            Ok(())
        } else {
            Err(CoreError::ModuleInvariant(
                report.first_failure.unwrap_or_else(|| String::from("unknown")),
            ))
        }
    }
}

/// Outcome of [`GradedCurrentModule::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub shifts_ok: bool,
    pub graded_ok: bool,
    pub brackets_ok: bool,
    pub truncated_ok: bool,
    pub cyclic_ok: bool,
    pub first_failure: Option<String>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        ValidationReport {
            shifts_ok: true,
            graded_ok: true,
            brackets_ok: true,
            truncated_ok: true,
            cyclic_ok: true,
            first_failure: None,
        }
    }
}

impl ValidationReport {
    fn fail(&mut self, msg: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    pub fn ok(&self) -> bool {
        self.shifts_ok
            && self.graded_ok
            && self.brackets_ok
            && self.truncated_ok
            && self.cyclic_ok
            && self.first_failure.is_none()
    }
}

/// The irreducible `V_lambda` with `z` acting through degree zero only;
/// cyclic from the lowest-weight pattern.
pub fn finite_module(lambda: &HighestWeight) -> GradedCurrentModule {
    let rep = Irrep::new(lambda.clone());
    let n = rep.rank();
    let dim = rep.dim();
    let mut actions = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let m = rep.matrix_unit_action(i, j).expect("valid indices");
            if !m.is_zero() {
                actions.insert((i, j, 0), m);
            }
        }
    }
    let basis = rep
        .weights
        .iter()
        .map(|w| BasisVector {
            weight: w.clone(),
            z_degree: 0,
        })
        .collect();
    let cyclic = rep.lowest_index();
    let m = GradedCurrentModule::from_parts(
        n,
        1,
        basis,
        actions,
        cyclic,
        format!("finite{}", lambda),
    );
    debug_assert_eq!(dim, m.dim());
    m
}

/// Evaluation module at the point `c`: `E_{i,j} z^k` acts as `c^k E_{i,j}`,
/// truncated at `trunc`. For `c != 0` the z-grading is trivial (all basis
/// vectors sit in degree zero), so only the bracket and cyclicity invariants
/// hold; for `c = 0` this coincides with [`finite_module`] up to truncation.
pub fn evaluation_module(lambda: &HighestWeight, c: &Rat, trunc: usize) -> GradedCurrentModule {
    assert!(trunc >= 1);
    let rep = Irrep::new(lambda.clone());
    let n = rep.rank();
    let mut actions = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let base = rep.matrix_unit_action(i, j).expect("valid indices");
            if base.is_zero() {
                continue;
            }
            for k in 0..trunc {
                let ck = rat_pow(c, k);
                if ck.vanishes() {
                    continue;
                }
                let mut m = base.scaled(&ck);
                m.degree_shift = k as i64;
                actions.insert((i, j, k), m);
            }
        }
    }
    let basis = rep
        .weights
        .iter()
        .map(|w| BasisVector {
            weight: w.clone(),
            z_degree: 0,
        })
        .collect();
    let cyclic = rep.lowest_index();
    GradedCurrentModule::from_parts(
        n,
        trunc,
        basis,
        actions,
        cyclic,
        format!("eval{}@{}", lambda, c),
    )
}

type AmbientVec = SparseVec<Vec<u32>, Rat>;

/// Forward-only echelon used by the fusion filtration: rows are immutable
/// once inserted and carry the filtration level at which they appeared.
struct FilteredEchelon {
    rows: BTreeMap<Vec<u32>, (AmbientVec, usize)>,
}

impl FilteredEchelon {
    fn new() -> Self {
        FilteredEchelon {
            rows: BTreeMap::new(),
        }
    }

    /// Reduce `v` and, if independent, store it at `level`.
    fn insert(&mut self, v: &AmbientVec, level: usize) -> Option<AmbientVec> {
        let mut v = v.clone();
        loop {
            let (lead, c) = v.leading()?;
            let lead = lead.clone();
            let c = c.clone();
            match self.rows.get(&lead) {
                Some((row, _)) => {
                    v.axpy(&-c, row);
                }
                None => {
                    let inv = Rat::new(c.denom().clone(), c.numer().clone());
                    let row = v.scaled(&inv);
                    self.rows.insert(lead, (row.clone(), level));
                    return Some(row);
                }
            }
        }
    }

    /// Express `v` over the stored rows: pairs `(pivot, coefficient)`.
    fn express(&self, v: &AmbientVec) -> Option<Vec<(Vec<u32>, Rat)>> {
        let mut v = v.clone();
        let mut out = Vec::new();
        loop {
            let Some((lead, c)) = v.leading() else {
                return Some(out);
            };
            let lead = lead.clone();
            let c = c.clone();
            match self.rows.get(&lead) {
                Some((row, _)) => {
                    v.axpy(&-c.clone(), row);
                    out.push((lead, c));
                }
                None => return None,
            }
        }
    }
}

/// Fusion product: the associated graded, along the z-degree filtration, of
/// the cyclic current span of the tensor product of evaluation modules at
/// the given pairwise distinct points. The output is graded cyclic, with
/// z-degrees given by filtration levels.
pub fn fusion_module(inputs: &[(HighestWeight, Rat)]) -> Result<GradedCurrentModule> {
    if inputs.is_empty() {
        return Err(CoreError::ModuleInvariant("empty fusion input".into()));
    }
    for (a, (_, ca)) in inputs.iter().enumerate() {
        for (_, cb) in inputs.iter().skip(a + 1) {
            if ca == cb {
                return Err(CoreError::CoincidentPoints);
            }
        }
    }
    let n = inputs[0].0.rank();
    for (lam, _) in inputs {
        if lam.rank() != n {
            return Err(CoreError::RankMismatch {
                expected: n,
                found: lam.rank(),
            });
        }
    }
    let m = inputs.len();
    let reps: Vec<Irrep> = inputs.iter().map(|(l, _)| Irrep::new(l.clone())).collect();

    // per-factor matrices of E_{i,j}, and the evaluation scalars c^k
    let mut unit_mats: Vec<BTreeMap<(usize, usize), OpMatrix>> = Vec::new();
    for rep in &reps {
        let mut mats = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                let mat = rep.matrix_unit_action(i, j)?;
                if !mat.is_zero() {
                    mats.insert((i, j), mat);
                }
            }
        }
        unit_mats.push(mats);
    }
    let apply_op = |i: usize, j: usize, k: usize, v: &AmbientVec| {
        let mut out: AmbientVec = SparseVec::new();
        for (label, c) in v.iter() {
            for (f, mats) in unit_mats.iter().enumerate() {
                let Some(mat) = mats.get(&(i, j)) else {
                    continue;
                };
                let scale = c * rat_pow(&inputs[f].1, k);
                if scale.vanishes() {
                    continue;
                }
                for (dst, a) in mat.cols[label[f] as usize].iter() {
                    let mut l = label.clone();
                    l[f] = *dst as u32;
                    out.add_to(l, &scale * a);
                }
            }
        }
        out
    };

    // BFS over filtration levels; operators of z-power k shift the level by k
    let mut ech = FilteredEchelon::new();
    let seed: AmbientVec =
        SparseVec::unit(reps.iter().map(|r| r.lowest_index() as u32).collect());
    let mut buckets: BTreeMap<usize, Vec<AmbientVec>> = BTreeMap::new();
    buckets.entry(0).or_default().push(seed);
    while let Some((&level, _)) = buckets.iter().next() {
        let batch = buckets.remove(&level).unwrap();
        let mut queue = batch;
        while let Some(v) = queue.pop() {
            let Some(row) = ech.insert(&v, level) else {
                continue;
            };
            for k in 0..m {
                for i in 1..=n {
                    for j in 1..=n {
                        if i == j && k == 0 {
                            continue;
                        }
                        let img = apply_op(i, j, k, &row);
                        if img.is_zero() {
                            continue;
                        }
                        if k == 0 {
                            queue.push(img);
                        } else {
                            buckets.entry(level + k).or_default().push(img);
                        }
                    }
                }
            }
        }
    }

    // graded basis: rows sorted by (level, weight, pivot)
    let weight_of = |label: &Vec<u32>| {
        let mut w = WeightVector::zero(n);
        for (f, &idx) in label.iter().enumerate() {
            w = w.add(&reps[f].weights[idx as usize]);
        }
        w
    };
    let mut rows: Vec<(Vec<u32>, AmbientVec, usize)> = ech
        .rows
        .iter()
        .map(|(p, (row, lvl))| (p.clone(), row.clone(), *lvl))
        .collect();
    rows.sort_by(|a, b| {
        (a.2, weight_of(&a.0), &a.0).cmp(&(b.2, weight_of(&b.0), &b.0))
    });
    let index_of_pivot: BTreeMap<Vec<u32>, usize> = rows
        .iter()
        .enumerate()
        .map(|(idx, (p, _, _))| (p.clone(), idx))
        .collect();
    let d_max = rows.iter().map(|r| r.2).max().unwrap_or(0);
    let trunc = d_max + 1;

    let basis: Vec<BasisVector> = rows
        .iter()
        .map(|(p, _, lvl)| BasisVector {
            weight: weight_of(p),
            z_degree: *lvl,
        })
        .collect();

    // associated-graded action matrices
    let mut actions: BTreeMap<(usize, usize, usize), OpMatrix> = BTreeMap::new();
    for k in 0..trunc.min(m) {
        for i in 1..=n {
            for j in 1..=n {
                let shift = if i == j {
                    WeightVector::zero(n)
                } else {
                    WeightVector::unit_shift(n, i, j)
                };
                let mut mat = OpMatrix::zero(rows.len(), shift, k as i64);
                let mut nonzero = false;
                for (src, (_, row, lvl)) in rows.iter().enumerate() {
                    let img = apply_op(i, j, k, row);
                    if img.is_zero() {
                        continue;
                    }
                    let expansion = ech
                        .express(&img)
                        .expect("cyclic span is closed under the current action");
                    for (pivot, c) in expansion {
                        let dst = index_of_pivot[&pivot];
                        let dst_lvl = rows[dst].2;
                        debug_assert!(dst_lvl <= lvl + k);
                        if dst_lvl == lvl + k {
                            mat.cols[src].add_to(dst, c);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    actions.insert((i, j, k), mat);
                }
            }
        }
    }

    let cyclic_pivot: Vec<u32> = reps.iter().map(|r| r.lowest_index() as u32).collect();
    let cyclic = index_of_pivot[&cyclic_pivot];
    let mut name = String::from("fusion[");
    for (a, (lam, c)) in inputs.iter().enumerate() {
        if a > 0 {
            name.push(',');
        }
        name.push_str(&format!("{lam}@{c}"));
    }
    name.push(']');

    let module = GradedCurrentModule::from_parts(n, trunc, basis, actions, cyclic, name);
    debug_assert!(module.validate().ok(), "fusion output failed validation");
    Ok(module)
}

/// The Cartan component of a tensor product: the closure of the tensor
/// product of cyclic vectors under the diagonal action of the full
/// truncated current algebra.
pub fn cartan_component(
    modules: &[&GradedCurrentModule],
    cap: usize,
) -> Result<crate::subspace::WeightGradedSubspace> {
    let space = crate::tensor::TensorSpace::cyclic_arrangement(modules.to_vec())?;
    let ops = crate::tensor::current_operators(&space);
    let seed: SparseVec<crate::tensor::TensorLabel, Rat> = SparseVec::unit(space.cyclic_label());
    crate::subspace::cyclic_closure(&space, &seed, &ops, cap)
}

/// Necessary conditions for a module to present like a spherical affine
/// Demazure module in the lowest-weight convention: the cyclic vector is a
/// weight vector killed by the lowering currents and by the positive-degree
/// Cartan currents, and the raising currents alone generate.
#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub lowering_annihilates: bool,
    pub cartan_z_annihilates: bool,
    pub raising_generates: bool,
    pub cyclic_weight: WeightVector,
    pub graded_character: BTreeMap<(WeightVector, usize), usize>,
}

impl PresentationReport {
    pub fn passes(&self) -> bool {
        self.lowering_annihilates && self.cartan_z_annihilates && self.raising_generates
    }
}

pub fn demazure_presentation_check(m: &GradedCurrentModule) -> PresentationReport {

    let v: SparseVec<usize, Rat> = SparseVec::unit(m.cyclic_index());
    let mut lowering = true;
    let mut cartan_z = true;
    for (&(i, j, k), mat) in m.actions() {
        if i > j && !mat.apply(&v).is_zero() {
            lowering = false;
        }
        if i == j && k >= 1 && !mat.apply(&v).is_zero() {
            cartan_z = false;
        }
    }
    // raising closure
    let mut ech: crate::sparse::QEchelon<usize> = crate::sparse::QEchelon::new();
    let mut queue = Vec::new();
    if let crate::sparse::Insert::Added(p) = ech.insert(&v) {
        queue.push(ech.row(&p).unwrap().clone());
    }
    while let Some(u) = queue.pop() {
        for (&(i, j, _), mat) in m.actions() {
            if i >= j {
                continue;
            }
            let img = mat.apply(&u);
            if img.is_zero() {
                continue;
            }
            if let crate::sparse::Insert::Added(p) = ech.insert(&img) {
                queue.push(ech.row(&p).unwrap().clone());
            }
        }
    }
    PresentationReport {
        lowering_annihilates: lowering,
        cartan_z_annihilates: cartan_z,
        raising_generates: ech.dim() == m.dim(),
        cyclic_weight: m.basis()[m.cyclic_index()].weight.clone(),
        graded_character: m.graded_character(),
    }
}

/// The degree-zero subrepresentation generated by the cyclic vector, as an
/// echelon basis inside the module.
pub fn degree_zero_subrep(m: &GradedCurrentModule) -> crate::sparse::QEchelon<usize> {
    let mut ech: crate::sparse::QEchelon<usize> = crate::sparse::QEchelon::new();
    let seed: SparseVec<usize, Rat> = SparseVec::unit(m.cyclic_index());
    let mut queue = Vec::new();
    if let crate::sparse::Insert::Added(p) = ech.insert(&seed) {
        queue.push(ech.row(&p).unwrap().clone());
    }
    while let Some(u) = queue.pop() {
        for i in 1..=m.rank() {
            for j in 1..=m.rank() {
                if i == j {
                    continue;
                }
                let Some(mat) = m.action(i, j, 0) else { continue };
                let img = mat.apply(&u);
                if img.is_zero() {
                    continue;
                }
                if let crate::sparse::Insert::Added(p) = ech.insert(&img) {
                    queue.push(ech.row(&p).unwrap().clone());
                }
            }
        }
    }
    ech
}

/// Extremal vector of weight `sigma . lambda` in the degree-zero
/// subrepresentation generated by the cyclic vector, normalized so its
/// leading coordinate is one.
pub fn extremal_vector(m: &GradedCurrentModule, sigma: &[usize]) -> Result<SparseVec<usize, Rat>> {
    let d0 = degree_zero_subrep(m);
    let lambda = m.basis()[m.cyclic_index()].weight.dominant();
    let target = lambda.permuted(sigma);
    let mut found: Vec<&SparseVec<usize, Rat>> = Vec::new();
    for (_, row) in d0.rows() {
        let (lead, _) = row.leading().unwrap();
        if m.basis()[*lead].weight == target {
            found.push(row);
        }
    }
    if found.len() != 1 {
        return Err(CoreError::WeightSpaceDimension {
            expected: 1,
            found: found.len(),
        });
    }
    // echelon rows within one weight space all have that weight; leading
    // coefficient of an echelon row is already one
    Ok((*found[0]).clone())
}

fn with_shift(mut m: OpMatrix, shift: &WeightVector) -> OpMatrix {
    m.weight_shift = shift.clone();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::perm;
    use num_traits::One;

    fn hw(e: &[i64]) -> HighestWeight {
        HighestWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn finite_modules_validate() {
        for lam in [hw(&[1, 0]), hw(&[3, 0]), hw(&[0, 0]), hw(&[2, 1, 0])] {
            let m = finite_module(&lam);
            assert!(m.validate().ok(), "{}", m.name());
            assert_eq!(m.trunc(), 1);
        }
        assert_eq!(finite_module(&hw(&[1, 0])).dim(), 2);
        assert_eq!(finite_module(&hw(&[3, 0])).dim(), 4);
        assert_eq!(finite_module(&hw(&[0, 0])).dim(), 1);
    }

    #[test]
    fn evaluation_at_zero_matches_finite() {
        let lam = hw(&[2, 0]);
        let f = finite_module(&lam);
        let e = evaluation_module(&lam, &rat(0), 3);
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(
                    f.action(i, j, 0).map(|m| &m.cols),
                    e.action(i, j, 0).map(|m| &m.cols)
                );
                assert!(e.action(i, j, 1).is_none());
            }
        }
    }

    #[test]
    fn evaluation_scales_by_powers() {
        let lam = hw(&[1, 0]);
        let e1 = evaluation_module(&lam, &rat(1), 2);
        let e2 = evaluation_module(&lam, &rat(2), 2);
        let base = e1.action(1, 2, 0).unwrap();
        assert_eq!(e1.action(1, 2, 1).unwrap().cols, base.cols);
        assert_eq!(e2.action(1, 2, 1).unwrap().cols, base.scaled(&rat(2)).cols);
        let report = e2.validate();
        assert!(report.brackets_ok && report.cyclic_ok && report.shifts_ok);
        assert!(!report.graded_ok && !report.truncated_ok);
        assert!(!report.ok()); // nontrivial evaluation is neither graded nor truncated
    }

    #[test]
    fn fusion_of_two_fundamentals() {
        let m = fusion_module(&[(hw(&[1, 0]), rat(0)), (hw(&[1, 0]), rat(1))]).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.trunc(), 2);
        let mut by_degree = BTreeMap::new();
        for b in m.basis() {
            *by_degree.entry(b.z_degree).or_insert(0usize) += 1;
        }
        assert_eq!(by_degree[&0], 3);
        assert_eq!(by_degree[&1], 1);
        assert!(m.validate().ok());
    }

    #[test]
    fn fusion_single_input_is_finite_content() {
        let m = fusion_module(&[(hw(&[2, 0]), rat(0))]).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.basis().iter().all(|b| b.z_degree == 0));
    }

    #[test]
    fn fusion_rejects_coincident_points() {
        assert!(matches!(
            fusion_module(&[(hw(&[1, 0]), rat(1)), (hw(&[1, 0]), rat(1))]),
            Err(CoreError::CoincidentPoints)
        ));
    }

    #[test]
    fn fusion_character_is_point_independent() {
        let a = fusion_module(&[(hw(&[2, 0]), rat(0)), (hw(&[1, 0]), rat(1))]).unwrap();
        let b = fusion_module(&[(hw(&[2, 0]), rat(5)), (hw(&[1, 0]), rat_frac(-3, 7))]).unwrap();
        assert_eq!(a.graded_character(), b.graded_character());
    }

    #[test]
    fn presentation_check_examples() {
        let f = finite_module(&hw(&[2, 1, 0]));
        assert!(demazure_presentation_check(&f).passes());

        let e = evaluation_module(&hw(&[1, 0]), &rat(2), 2);
        let rep = demazure_presentation_check(&e);
        assert!(!rep.cartan_z_annihilates);
        assert!(!rep.passes());

        let fusion = fusion_module(&[(hw(&[1, 0]), rat(0)), (hw(&[1, 0]), rat(1))]).unwrap();
        assert!(demazure_presentation_check(&fusion).passes());
    }

    #[test]
    fn corrupted_module_flagged() {
        let mut m = finite_module(&hw(&[1, 0]));
        let key = (1usize, 2usize, 0usize);
        let mat = m.actions.get_mut(&key).unwrap();
        mat.cols[0] = SparseVec::new();
        mat.cols[1] = SparseVec::new();
        let report = m.validate();
        assert!(!report.ok());
    }

    #[test]
    fn cartan_component_examples() {
        let cap = 1 << 24;
        let a = finite_module(&hw(&[2, 0]));
        let b = finite_module(&hw(&[3, 0]));
        assert_eq!(cartan_component(&[&a, &b], cap).unwrap().dim(), 6);
        let x = finite_module(&hw(&[1, 0, 0]));
        let y = finite_module(&hw(&[1, 1, 0]));
        let z = finite_module(&hw(&[1, 0, 0]));
        assert_eq!(cartan_component(&[&x, &y, &z], cap).unwrap().dim(), 15);
        // a single module: the cyclic span is everything
        let single = finite_module(&hw(&[2, 1, 0]));
        assert_eq!(cartan_component(&[&single], cap).unwrap().dim(), single.dim());
        // mismatched ranks are rejected
        assert!(cartan_component(&[&a, &x], cap).is_err());
    }

    #[test]
    fn cartan_component_matches_product_formula() {
        let cap = 1 << 24;
        for (l0, l1) in [([1, 0], [2, 1]), ([2, 2], [1, 0])] {
            let a = finite_module(&hw(&l0));
            let b = finite_module(&hw(&l1));
            let total = HighestWeight::new(
                l0.iter().zip(l1.iter()).map(|(x, y)| x + y).collect(),
            )
            .unwrap();
            assert_eq!(
                cartan_component(&[&a, &b], cap).unwrap().dim(),
                crate::gt::weyl_dimension_usize(&total)
            );
        }
    }

    #[test]
    fn extremal_vectors_in_finite_module() {
        let lam = hw(&[2, 0]);
        let m = finite_module(&lam);
        let id = extremal_vector(&m, &perm::identity(2)).unwrap();
        let (lead, c) = id.leading().unwrap();
        assert_eq!(m.basis()[*lead].weight, WeightVector(alloc::vec![2, 0]));
        assert!(c.is_one());
        let w0 = extremal_vector(&m, &perm::longest(2)).unwrap();
        let (lead, _) = w0.leading().unwrap();
        assert_eq!(*lead, m.cyclic_index());
    }

    #[test]
    fn extremal_vector_in_fusion_module() {
        let m = fusion_module(&[(hw(&[1, 0]), rat(0)), (hw(&[1, 0]), rat(1))]).unwrap();
        // degree-zero top is V_(2,0); both extremal spaces are 1-dimensional
        for sigma in perm::all_permutations(2) {
            let v = extremal_vector(&m, &sigma).unwrap();
            assert!(!v.is_zero());
        }
    }
}
