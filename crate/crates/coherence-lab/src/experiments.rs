//! The batch experiments: conjecture sweeps, fundamental-weight checks,
//! module-file coherence runs, factorization comparisons, and the property
//! suites. Instances run in parallel; records are sorted before assembly,
//! so reports are identical across parallelism levels.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use rayon::prelude::*;

use coherence_core::arith::{rat, rat_frac, Rat};
use coherence_core::contraction::{
    closure_operators, degree_zero_generators, endomorphism_check, flatten_degree_zero,
    node_closure_operators, parametric_generators, psi_composition, psi_maps, raising_unit,
    rotation_conjugation_check, sh_twist, Labeling, LoopElement, ZePoly,
};
use coherence_core::current::finite_module;
use coherence_core::error::CoreError;
use coherence_core::gt::{
    check_commutation_relations, enumerate_patterns, weyl_dimension_usize, Generator,
    HighestWeight, Irrep,
};
use coherence_core::limit::coherence_run;
use coherence_core::poly::EpsPoly;
use coherence_core::sparse::QEchelon;
use coherence_core::subspace::{closure, conjecture_seeds, cyclic_closure};
use coherence_core::tensor::{AssembledOp, TensorSpace};
use coherence_core::weight::WeightVector;

use crate::config::Config;
use crate::report::{character_hash, degree_character_hash, Record, Report};

/// Resolve the operator preset on a space.
pub fn operator_set(
    labeling: &Labeling,
    preset: &str,
    space: &TensorSpace<'_>,
) -> Result<Vec<AssembledOp<Rat>>> {
    match preset {
        "derived" => Ok(closure_operators(labeling, space)?),
        "minimal" => Ok(node_closure_operators(labeling, space)?),
        other => bail!("unknown operator preset {other:?}"),
    }
}

fn weight_key(lambda: &[HighestWeight]) -> String {
    let parts: Vec<String> = lambda.iter().map(|l| l.to_string()).collect();
    parts.join("x")
}

fn lambda_rows(lambda: &[HighestWeight]) -> Vec<Vec<i64>> {
    lambda.iter().map(|l| l.entries().to_vec()).collect()
}

fn total_weight(lambda: &[HighestWeight]) -> HighestWeight {
    let n = lambda[0].rank();
    let mut sum = vec![0i64; n];
    for l in lambda {
        for (a, b) in sum.iter_mut().zip(l.entries()) {
            *a += b;
        }
    }
    HighestWeight::new(sum).expect("sum of partitions is a partition")
}

/// One conjecture instance: the extremal closure against the product-formula
/// oracle, optionally with the full degeneration cross-checks.
pub fn run_instance(lambda: &[HighestWeight], cfg: &Config) -> Record {
    let key = format!("n={}/{}", cfg.n, weight_key(lambda));
    let mut rec = Record::new(key).with_lambda(&lambda_rows(lambda));
    let modules: Vec<_> = lambda.iter().map(finite_module).collect();
    let space = match TensorSpace::cyclic_arrangement(modules.iter().collect()) {
        Ok(s) => s,
        Err(e) => {
            rec.incomplete(e);
            return rec;
        }
    };
    let labeling = match Labeling::parse(&cfg.labeling, cfg.n) {
        Ok(l) => l,
        Err(e) => {
            rec.incomplete(e);
            return rec;
        }
    };
    let weyl = weyl_dimension_usize(&total_weight(lambda));
    rec.datum("weyl", weyl);

    let outcome = (|| -> std::result::Result<(), CoreError> {
        let ops = operator_set(&labeling, &cfg.operators, &space)
            .map_err(|e| CoreError::ModuleInvariant(e.to_string()))?;
        if cfg.check_limit {
            let run = coherence_run(&space, &labeling, &ops, cfg.max_entries)?;
            rec.datum("dim_extremal", run.dim_extremal);
            rec.datum("dim_cartan", run.dim_cartan);
            rec.datum("generic_rank", run.generic_rank);
            rec.datum("dim_limit", run.dim_limit);
            rec.datum("extremal_char", character_hash(&run.extremal.character()));
            rec.datum("limit_char", character_hash(&run.limit_character));
            rec.check("extremal-dim-is-weyl", run.dim_extremal == weyl);
            rec.check("limit-dim-is-rank", run.dim_limit == run.generic_rank);
            rec.check("limit-dim-is-cartan", run.dim_limit == run.dim_cartan);
            rec.check(
                "limit-char-is-cartan-char",
                run.limit_character == run.cartan_character,
            );
            rec.check("extremal-inside-limit", run.extremal_contained);
            rec.datum("extremal-equals-limit", run.subspaces_equal);
        } else {
            let seeds = conjecture_seeds(&space)?;
            let seed_vecs: Vec<_> = seeds.into_iter().map(|(_, v)| v).collect();
            let s = closure(&space, &seed_vecs, &ops, cfg.max_entries)?;
            rec.datum("dim_extremal", s.dim());
            rec.datum("extremal_char", character_hash(&s.character()));
            rec.check("extremal-dim-is-weyl", s.dim() == weyl);
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        rec.incomplete(e);
    }
    rec
}

/// All partitions of length `n` with entries bounded by `max_entry`.
pub fn partitions_entry_bound(n: usize, max_entry: i64) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(n: usize, pos: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        if pos == n {
            out.push(HighestWeight::new(cur.clone()).unwrap());
            return;
        }
        for v in 0..=bound {
            cur[pos] = v;
            rec(n, pos + 1, v, cur, out);
        }
    }
    rec(n, 0, max_entry, &mut cur, &mut out);
    out
}

/// All partitions of length `n` with size at most `max_total`.
pub fn partitions_size_bound(n: usize, max_total: i64) -> Vec<HighestWeight> {
    partitions_entry_bound(n, max_total)
        .into_iter()
        .filter(|l| l.size() <= max_total)
        .collect()
}

/// The sweep grid, by entry bound or by total-size bound; with
/// `symmetry_reduce` only one representative per cyclic rotation class of
/// the collection is kept.
pub fn sweep_grid(cfg: &Config) -> Result<Vec<Vec<HighestWeight>>> {
    let reduce = |grid: Vec<Vec<HighestWeight>>| {
        if !cfg.symmetry_reduce {
            return grid;
        }
        grid.into_iter()
            .filter(|lambda| {
                let n = lambda.len();
                (0..n).all(|r| {
                    let rotated: Vec<&HighestWeight> =
                        (0..n).map(|b| &lambda[(b + r) % n]).collect();
                    lambda.iter().collect::<Vec<_>>() <= rotated
                })
            })
            .collect()
    };
    if !cfg.instances.is_empty() {
        return Ok(reduce(cfg.instances.clone()));
    }
    let n = cfg.n;
    if let Some(me) = cfg.sweep_max_entry {
        let parts = partitions_entry_bound(n, me);
        let mut grid = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for g in &grid {
                for p in &parts {
                    let mut g2 = g.clone();
                    g2.push(p.clone());
                    next.push(g2);
                }
            }
            grid = next;
        }
        return Ok(reduce(grid));
    }
    if let Some(mt) = cfg.sweep_max_total {
        let mut grid = vec![(Vec::new(), 0i64)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (g, used) in &grid {
                for p in partitions_size_bound(n, mt - used) {
                    let mut g2 = g.clone();
                    let s = p.size();
                    g2.push(p);
                    next.push((g2, used + s));
                }
            }
            grid = next;
        }
        return Ok(reduce(grid.into_iter().map(|(g, _)| g).collect()));
    }
    bail!("sweep bounds missing: set sweep.max_entry, sweep.max_total or explicit instances")
}

pub fn run_conjecture_sweep(cfg: &Config) -> Result<Report> {
    let grid = sweep_grid(cfg)?;
    let records: Vec<Record> = grid
        .par_iter()
        .map(|lambda| run_instance(lambda, cfg))
        .collect();
    Ok(Report::assemble(
        "conjecture-sweep",
        &cfg.labeling,
        &cfg.operators,
        records,
    ))
}

/// Check that every weight is a multiple of one fixed fundamental weight and
/// return `(j, multiplicities)`.
fn fundamental_shape(lambda: &[HighestWeight]) -> Option<(usize, Vec<i64>)> {
    let n = lambda[0].rank();
    let mut j: Option<usize> = None;
    let mut ks = Vec::new();
    for l in lambda {
        if l.is_zero() {
            ks.push(0);
            continue;
        }
        let e = l.entries();
        let m = e[0];
        let width = e.iter().take_while(|&&x| x == m).count();
        if e.iter().skip(width).any(|&x| x != 0) || width == n {
            return None;
        }
        match j {
            None => j = Some(width),
            Some(w) if w != width => return None,
            _ => {}
        }
        ks.push(m);
    }
    Some((j.unwrap_or(1), ks))
}

pub fn run_fundamental(cfg: &Config) -> Result<Report> {
    let grid = if cfg.instances.is_empty() {
        bail!("fundamental runs need explicit instances")
    } else {
        cfg.instances.clone()
    };
    let records: Vec<Record> = grid
        .par_iter()
        .map(|lambda| {
            let key = format!("n={}/{}", cfg.n, weight_key(lambda));
            let mut rec = Record::new(key).with_lambda(&lambda_rows(lambda));
            let Some((j, ks)) = fundamental_shape(lambda) else {
                rec.incomplete("weights are not multiples of a fixed fundamental weight");
                return rec;
            };
            if let Some(expect_j) = cfg.fundamental_index {
                if expect_j != j && ks.iter().any(|&k| k != 0) {
                    rec.incomplete(format!("fundamental index is {j}, expected {expect_j}"));
                    return rec;
                }
            }
            rec.datum("fundamental_index", j);
            let mut base = run_instance(lambda, cfg);
            rec.checks.append(&mut base.checks);
            rec.data.append(&mut base.data);
            if !base.pass {
                rec.pass = false;
            }
            if !base.complete {
                rec.complete = false;
                rec.pass = false;
                return rec;
            }
            // report each one-seed closure, the summands of the decomposition
            let modules: Vec<_> = lambda.iter().map(finite_module).collect();
            let space = TensorSpace::cyclic_arrangement(modules.iter().collect()).unwrap();
            let labeling = Labeling::parse(&cfg.labeling, cfg.n).unwrap();
            let ops = operator_set(&labeling, &cfg.operators, &space).unwrap();
            match conjecture_seeds(&space) {
                Ok(seeds) => {
                    for (sigma, seed) in seeds {
                        match cyclic_closure(&space, &seed, &ops, cfg.max_entries) {
                            Ok(c) => {
                                let tag: Vec<String> =
                                    sigma.iter().map(|x| (x + 1).to_string()).collect();
                                rec.datum(
                                    format!("summand[{}]", tag.join("")),
                                    format!(
                                        "dim={} degree_char={}",
                                        c.dim(),
                                        degree_character_hash(&c.degree_character(&space))
                                    ),
                                );
                            }
                            Err(e) => rec.incomplete(e),
                        }
                    }
                }
                Err(e) => rec.incomplete(e),
            }
            rec
        })
        .collect();
    Ok(Report::assemble(
        "fundamental",
        &cfg.labeling,
        &cfg.operators,
        records,
    ))
}

/// The factored route: close the extremal seeds inside the product over
/// `i` of the per-fundamental collections.
fn factored_closure_dim(
    lambda: &[HighestWeight],
    cfg: &Config,
) -> std::result::Result<(usize, BTreeMap<WeightVector, usize>), CoreError> {
    let n = cfg.n;
    let mut factors = Vec::new();
    let mut components = Vec::new();
    for i in 1..=n {
        for (b, l) in lambda.iter().enumerate() {
            let e = l.entries();
            let m = if i == n {
                e[n - 1]
            } else {
                e[i - 1] - e[i]
            };
            factors.push(finite_module(&HighestWeight::fundamental_multiple(n, i, m)));
            components.push(b);
        }
    }
    let space = TensorSpace::new(factors.iter().collect(), components)?;
    let labeling = Labeling::parse(&cfg.labeling, n)?;
    let ops = operator_set(&labeling, &cfg.operators, &space)
        .map_err(|e| CoreError::ModuleInvariant(e.to_string()))?;
    let seeds = conjecture_seeds(&space)?;
    let seed_vecs: Vec<_> = seeds.into_iter().map(|(_, v)| v).collect();
    let s = closure(&space, &seed_vecs, &ops, cfg.max_entries)?;
    Ok((s.dim(), s.character()))
}

pub fn run_kostant_kumar(cfg: &Config) -> Result<Report> {
    if cfg.instances.is_empty() {
        bail!("kostant-kumar runs need explicit instances");
    }
    let records: Vec<Record> = cfg
        .instances
        .par_iter()
        .map(|lambda| {
            let key = format!("n={}/{}", cfg.n, weight_key(lambda));
            let mut rec = Record::new(key).with_lambda(&lambda_rows(lambda));
            let weyl = weyl_dimension_usize(&total_weight(lambda));
            rec.datum("weyl", weyl);
            // direct route
            let direct = {
                let modules: Vec<_> = lambda.iter().map(finite_module).collect();
                let space = match TensorSpace::cyclic_arrangement(modules.iter().collect()) {
                    Ok(s) => s,
                    Err(e) => {
                        rec.incomplete(e);
                        return rec;
                    }
                };
                let labeling = Labeling::parse(&cfg.labeling, cfg.n).unwrap();
                let ops = match operator_set(&labeling, &cfg.operators, &space) {
                    Ok(o) => o,
                    Err(e) => {
                        rec.incomplete(e);
                        return rec;
                    }
                };
                let seeds = match conjecture_seeds(&space) {
                    Ok(s) => s,
                    Err(e) => {
                        rec.incomplete(e);
                        return rec;
                    }
                };
                let seed_vecs: Vec<_> = seeds.into_iter().map(|(_, v)| v).collect();
                match closure(&space, &seed_vecs, &ops, cfg.max_entries) {
                    Ok(s) => (s.dim(), s.character()),
                    Err(e) => {
                        rec.incomplete(e);
                        return rec;
                    }
                }
            };
            rec.datum("dim_direct", direct.0);
            match factored_closure_dim(lambda, cfg) {
                Ok((dim, ch)) => {
                    rec.datum("dim_factored", dim);
                    rec.check("routes-agree", dim == direct.0);
                    rec.check("characters-agree", ch == direct.1);
                    rec.check("direct-dim-is-weyl", direct.0 == weyl);
                }
                Err(e) => rec.incomplete(e),
            }
            rec
        })
        .collect();
    Ok(Report::assemble(
        "kostant-kumar",
        &cfg.labeling,
        &cfg.operators,
        records,
    ))
}

pub fn run_demazure(cfg: &Config) -> Result<Report> {
    if cfg.module_paths.is_empty() {
        bail!("demazure-coherence runs need module files");
    }
    let mut modules = Vec::new();
    for p in &cfg.module_paths {
        modules.push(crate::format::load_module(p)?);
    }
    let records = vec![demazure_record(
        &modules.iter().collect::<Vec<_>>(),
        &cfg.expected_limit_dims,
        cfg,
        "modules",
    )];
    Ok(Report::assemble(
        "demazure-coherence",
        &cfg.labeling,
        &cfg.operators,
        records,
    ))
}

/// A single coherence run on an explicit module arrangement.
pub fn demazure_record(
    modules: &[&coherence_core::current::GradedCurrentModule],
    expected_limit: &[Option<usize>],
    cfg: &Config,
    key: &str,
) -> Record {
    let mut rec = Record::new(format!("n={}/{key}", cfg.n));
    for (idx, m) in modules.iter().enumerate() {
        let pres = coherence_core::current::demazure_presentation_check(m);
        rec.check(format!("presentation[{idx}]"), pres.passes());
        rec.datum(
            format!("module[{idx}]"),
            format!("{} dim={} trunc={}", m.name(), m.dim(), m.trunc()),
        );
    }
    if !rec.pass {
        rec.incomplete("presentation check failed; instance aborted");
        return rec;
    }
    let space = match TensorSpace::cyclic_arrangement(modules.to_vec()) {
        Ok(s) => s,
        Err(e) => {
            rec.incomplete(e);
            return rec;
        }
    };
    let labeling = match Labeling::parse(&cfg.labeling, cfg.n) {
        Ok(l) => l,
        Err(e) => {
            rec.incomplete(e);
            return rec;
        }
    };
    let ops = match operator_set(&labeling, &cfg.operators, &space) {
        Ok(o) => o,
        Err(e) => {
            rec.incomplete(e);
            return rec;
        }
    };
    match coherence_run(&space, &labeling, &ops, cfg.max_entries) {
        Ok(run) => {
            rec.datum("dim_cartan", run.dim_cartan);
            rec.datum("generic_rank", run.generic_rank);
            rec.datum("dim_limit", run.dim_limit);
            rec.datum("dim_extremal", run.dim_extremal);
            rec.datum("limit_char", character_hash(&run.limit_character));
            rec.datum(
                "limit_levels",
                format!("{:?}", run.levels.values().flatten().collect::<Vec<_>>()),
            );
            rec.check("limit-dim-is-rank", run.dim_limit == run.generic_rank);
            rec.check("limit-dim-is-cartan", run.dim_limit == run.dim_cartan);
            rec.check(
                "limit-char-is-cartan-char",
                run.limit_character == run.cartan_character,
            );
            rec.check("extremal-inside-limit", run.extremal_contained);
            rec.datum("extremal-equals-limit", run.subspaces_equal);
            for (idx, exp) in expected_limit.iter().enumerate() {
                if let Some(d) = exp {
                    rec.check(format!("expected-limit-dim[{idx}]"), run.dim_limit == *d);
                }
            }
        }
        Err(e) => rec.incomplete(e),
    }
    rec
}

// ---------------------------------------------------------------------------
// property suites

fn relation_grid() -> Vec<HighestWeight> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.extend(partitions_entry_bound(n, 3));
    }
    out
}

/// Commutation table with an optional injected fault in one raising
/// coefficient; returns whether the table holds.
fn relations_hold(lambda: &HighestWeight, fault: bool) -> bool {
    if !fault {
        return matches!(check_commutation_relations(lambda), Ok(None));
    }
    let rep = Irrep::new(lambda.clone());
    let n = rep.rank();
    let mut units = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            units.push(((i, j), rep.matrix_unit_action(i, j).unwrap()));
        }
    }
    // corrupt one coefficient of e_1
    if let Some((_, m)) = units.iter_mut().find(|((i, j), m)| *i == 1 && *j == 2 && !m.is_zero()) {
        let src = (0..m.dim()).find(|&s| !m.cols[s].is_zero()).unwrap();
        let (dst, c) = {
            let (d, c) = m.cols[src].iter().next().unwrap();
            (*d, c.clone())
        };
        m.cols[src].set(dst, c + rat(1));
    } else {
        return true; // trivial module: nothing to corrupt
    }
    for ((i, j), a) in &units {
        for ((k, l), b) in &units {
            let lhs = a.commutator(b);
            let mut rhs =
                coherence_core::gt::OpMatrix::zero(rep.dim(), lhs.weight_shift.clone(), 0);
            if j == k {
                let mut m = units
                    .iter()
                    .find(|((x, y), _)| (*x, *y) == (*i, *l))
                    .unwrap()
                    .1
                    .clone();
                m.weight_shift = lhs.weight_shift.clone();
                rhs = rhs.add(&m);
            }
            if l == i {
                let mut m = units
                    .iter()
                    .find(|((x, y), _)| (*x, *y) == (*k, *j))
                    .unwrap()
                    .1
                    .clone();
                m.weight_shift = lhs.weight_shift.clone();
                rhs = rhs.sub(&m);
            }
            if lhs.cols != rhs.cols {
                return false;
            }
        }
    }
    true
}

pub fn run_property_suites(cfg: &Config) -> Result<Report> {
    let mut tasks: Vec<Box<dyn Fn() -> Record + Sync + Send>> = Vec::new();

    for lam in relation_grid() {
        let l = lam.clone();
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("gl-relations/n={}/{}", l.rank(), l));
            rec.check("commutation-table", relations_hold(&l, false));
            rec
        }));
        let l2 = lam.clone();
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("pattern-count/n={}/{}", l2.rank(), l2));
            let count = enumerate_patterns(&l2).len();
            rec.check(
                "count-equals-product-formula",
                count == weyl_dimension_usize(&l2),
            );
            rec
        }));
        let l3 = lam.clone();
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("extremal-annihilation/n={}/{}", l3.rank(), l3));
            let rep = Irrep::new(l3.clone());
            let hi = rep.highest_index();
            let lo = rep.lowest_index();
            let mut ok = true;
            for k in 1..rep.rank() {
                let e = rep.generator_action(Generator::Raise(k)).unwrap();
                let f = rep.generator_action(Generator::Lower(k)).unwrap();
                ok &= e.cols[hi].is_zero() && f.cols[lo].is_zero();
            }
            rec.check("highest-and-lowest-extremal", ok);
            rec
        }));
    }

    for n in 2..=6usize {
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("psi-composition/n={n}"));
            let maps = psi_maps(n, &EpsPoly::eps());
            let comp = psi_composition(&maps);
            let zpe = ZePoly::z_plus_eps();
            let mut ok = true;
            for (i, row) in comp.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    ok &= if i == j { cell == &zpe } else { cell.is_zero() };
                }
            }
            rec.check("composition-is-marked-identity", ok);
            rec
        }));
    }

    for n in 2..=5usize {
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("endomorphism-rule/n={n}"));
            let ok = parametric_generators(n, 2).iter().all(endomorphism_check);
            rec.check("generators-satisfy-rule", ok);
            let mut bad = LoopElement::new(n, "const".into());
            for b in 0..n {
                bad.add_term(b, 1, 2, 0, EpsPoly::one());
            }
            rec.check("unmarked-element-fails", !endomorphism_check(&bad));
            rec
        }));
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("contraction-span/n={n}"));
            let gens = degree_zero_generators(n);
            rec.check("generator-count", gens.len() == n * n);
            for (tag, eps) in [("0", rat(0)), ("1", rat(1)), ("-5/7", rat_frac(-5, 7))] {
                let specialized: Vec<LoopElement> =
                    gens.iter().map(|g| g.eval_eps(&eps)).collect();
                let mut ech: QEchelon<(usize, usize, usize)> = QEchelon::new();
                for g in &specialized {
                    ech.insert(&flatten_degree_zero(g));
                }
                rec.check(format!("span-dimension[eps={tag}]"), ech.dim() == n * n);
                let closed = specialized.iter().all(|a| {
                    specialized.iter().all(|b| {
                        ech.contains(&flatten_degree_zero(&a.bracket(b).truncated(1)))
                    })
                });
                rec.check(format!("bracket-closure[eps={tag}]"), closed);
            }
            rec
        }));
    }

    for n in 2..=4usize {
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("lowering-part-commutes/n={n}"));
            let zero = rat(0);
            let lowers: Vec<LoopElement> = degree_zero_generators(n)
                .iter()
                .filter(|g| g.terms().all(|(&(_, i, j, _), _)| i > j))
                .map(|g| g.eval_eps(&zero))
                .collect();
            let ok = lowers
                .iter()
                .all(|a| lowers.iter().all(|b| a.bracket(b).truncated(1).is_zero()));
            rec.check("pairwise-commute", ok);
            rec
        }));
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("borel-part-closes/n={n}"));
            let zero = rat(0);
            let borel: Vec<LoopElement> = degree_zero_generators(n)
                .iter()
                .filter(|g| g.terms().all(|(&(_, i, j, _), _)| i <= j))
                .map(|g| g.eval_eps(&zero))
                .collect();
            let mut ech: QEchelon<(usize, usize, usize)> = QEchelon::new();
            for g in &borel {
                ech.insert(&flatten_degree_zero(g));
            }
            let ok = borel.iter().all(|a| {
                borel
                    .iter()
                    .all(|b| ech.contains(&flatten_degree_zero(&a.bracket(b).truncated(1))))
            });
            rec.check("bracket-closure", ok);
            rec
        }));
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("rotation-symmetry/n={n}"));
            rec.check(
                "specialized",
                rotation_conjugation_check(n, Some(&rat(0))).is_some(),
            );
            if n <= 3 {
                rec.check("symbolic", rotation_conjugation_check(n, None).is_some());
            }
            rec
        }));
        tasks.push(Box::new(move || {
            let mut rec = Record::new(format!("node-family-generates/n={n}"));
            rec.check("nilpotent-part-generated", node_family_generates(n));
            rec
        }));
    }

    for n in 2..=3usize {
        for trunc in 1..=3usize {
            tasks.push(Box::new(move || {
                let mut rec = Record::new(format!("twist-bracket/n={n}/trunc={trunc}"));
                let mut ok = true;
                let mut units = Vec::new();
                for i in 1..=n {
                    for j in i + 1..=n {
                        for k in 0..trunc {
                            units.push(raising_unit(n, i, j, k));
                        }
                    }
                }
                for b in 1..n {
                    for x in &units {
                        for y in &units {
                            let lhs = sh_twist(&x.bracket(y), b).unwrap().truncated(trunc);
                            let rhs = sh_twist(x, b)
                                .unwrap()
                                .bracket(&sh_twist(y, b).unwrap())
                                .truncated(trunc);
                            ok &= lhs.terms().eq(rhs.terms());
                        }
                    }
                }
                rec.check("twist-respects-bracket", ok);
                rec
            }));
        }
    }

    tasks.push(Box::new(|| {
        let mut rec = Record::new("closure-idempotence/n=3".to_string());
        let mods = [
            finite_module(&HighestWeight::fundamental_multiple(3, 1, 1)),
            finite_module(&HighestWeight::fundamental_multiple(3, 2, 1)),
            finite_module(&HighestWeight::fundamental_multiple(3, 1, 1)),
        ];
        let space = TensorSpace::cyclic_arrangement(mods.iter().collect()).unwrap();
        let lab = Labeling::standard(3);
        let ops = closure_operators(&lab, &space).unwrap();
        let seeds: Vec<_> = conjecture_seeds(&space)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let s = closure(&space, &seeds, &ops, 1 << 26).unwrap();
        let basis: Vec<_> = s
            .iter()
            .flat_map(|(_, e)| e.rows().map(|(_, r)| r.clone()).collect::<Vec<_>>())
            .collect();
        let s2 = closure(&space, &basis, &ops, 1 << 26).unwrap();
        rec.check("re-closure-is-identity", s.equals(&s2));
        let mut rev = seeds.clone();
        rev.reverse();
        let s3 = closure(&space, &rev, &ops, 1 << 26).unwrap();
        rec.check("seed-order-independent", s == s3);
        rec
    }));

    if cfg.inject_fault {
        tasks.push(Box::new(|| {
            let mut rec = Record::new("fault-injection/gl-relations".to_string());
            let lam = HighestWeight::new(vec![2, 1, 0]).unwrap();
            rec.check("fault-detected", !relations_hold(&lam, true));
            rec
        }));
    }

    let records: Vec<Record> = tasks.par_iter().map(|t| t()).collect();
    Ok(Report::assemble(
        "property-suites",
        &cfg.labeling,
        &cfg.operators,
        records,
    ))
}

/// Iterated brackets of the node family span the nondiagonal degree-zero
/// part in the family's native labeling.
fn node_family_generates(n: usize) -> bool {
    let native = Labeling::dual_rotated(n);
    let zero = rat(0);
    let mut span: QEchelon<(usize, usize, usize)> = QEchelon::new();
    let mut queue: Vec<LoopElement> = coherence_core::contraction::node_generators(n)
        .iter()
        .map(|g| g.eval_eps(&zero))
        .collect();
    let mut elements: Vec<LoopElement> = Vec::new();
    while let Some(x) = queue.pop() {
        if let coherence_core::sparse::Insert::Added(_) = span.insert(&flatten_degree_zero(&x)) {
            for y in &elements {
                queue.push(x.bracket(y).truncated(1));
                queue.push(y.bracket(&x).truncated(1));
            }
            elements.push(x);
        }
    }
    degree_zero_generators(n)
        .into_iter()
        .map(|g| native.apply(&g).eval_eps(&zero))
        .filter(|g| g.terms().all(|(&(_, i, j, _), _)| i != j))
        .all(|g| span.contains(&flatten_degree_zero(&g)))
}

/// Dispatch on the experiment kind.
pub fn run(cfg: &Config) -> Result<Report> {
    match cfg.experiment {
        crate::config::ExperimentKind::ConjectureSweep => run_conjecture_sweep(cfg),
        crate::config::ExperimentKind::Fundamental => run_fundamental(cfg),
        crate::config::ExperimentKind::DemazureCoherence => run_demazure(cfg),
        crate::config::ExperimentKind::KostantKumar => run_kostant_kumar(cfg),
        crate::config::ExperimentKind::PropertySuites => run_property_suites(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentKind;

    fn test_cfg(n: usize) -> Config {
        Config {
            experiment: ExperimentKind::ConjectureSweep,
            n,
            labeling: "standard".into(),
            operators: "derived".into(),
            max_entries: 1 << 26,
            check_limit: true,
            fundamental_index: None,
            out: None,
            sweep_max_entry: None,
            sweep_max_total: None,
            instances: Vec::new(),
            module_paths: Vec::new(),
            expected_limit_dims: Vec::new(),
            inject_fault: false,
            symmetry_reduce: false,
        }
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_entry_bound(2, 3).len(), 10);
        assert_eq!(partitions_size_bound(3, 4).len(), 1 + 1 + 2 + 3 + 4);
    }

    #[test]
    fn sweep_grid_sizes() {
        let mut cfg = test_cfg(2);
        cfg.sweep_max_entry = Some(3);
        assert_eq!(sweep_grid(&cfg).unwrap().len(), 100);
        let mut cfg = test_cfg(3);
        cfg.sweep_max_total = Some(4);
        assert_eq!(sweep_grid(&cfg).unwrap().len(), 83);
    }

    #[test]
    fn symmetry_reduction_keeps_representatives() {
        let mut cfg = test_cfg(2);
        cfg.sweep_max_entry = Some(2);
        let full = sweep_grid(&cfg).unwrap().len();
        cfg.symmetry_reduce = true;
        let reduced = sweep_grid(&cfg).unwrap();
        // pairs (a,b) with a <= b under rotation: 6 choose with repetition
        assert_eq!(full, 36);
        assert_eq!(reduced.len(), 21);
        for lambda in &reduced {
            assert!(lambda[0] <= lambda[1]);
        }
    }

    #[test]
    fn single_instance_record() {
        let mut cfg = test_cfg(2);
        cfg.check_limit = true;
        let lam = vec![
            HighestWeight::new(vec![2, 0]).unwrap(),
            HighestWeight::new(vec![3, 0]).unwrap(),
        ];
        let rec = run_instance(&lam, &cfg);
        assert!(rec.pass, "{rec:?}");
        assert_eq!(rec.data["dim_extremal"], "6");
        assert_eq!(rec.data["weyl"], "6");
        assert_eq!(rec.data["extremal-equals-limit"], "true");
    }

    #[test]
    fn fundamental_shape_detection() {
        let lam = vec![
            HighestWeight::fundamental_multiple(3, 2, 2),
            HighestWeight::trivial(3),
            HighestWeight::fundamental_multiple(3, 2, 1),
        ];
        assert_eq!(fundamental_shape(&lam), Some((2, vec![2, 0, 1])));
        let mixed = vec![
            HighestWeight::fundamental_multiple(3, 1, 1),
            HighestWeight::fundamental_multiple(3, 2, 1),
            HighestWeight::trivial(3),
        ];
        assert_eq!(fundamental_shape(&mixed), None);
    }

    #[test]
    fn kostant_kumar_routes_agree() {
        let mut cfg = test_cfg(3);
        cfg.experiment = ExperimentKind::KostantKumar;
        cfg.instances = vec![
            vec![
                HighestWeight::new(vec![2, 1, 0]).unwrap(),
                HighestWeight::trivial(3),
                HighestWeight::trivial(3),
            ],
            // already a fundamental multiple: the routes agree tautologically
            vec![
                HighestWeight::fundamental_multiple(3, 1, 2),
                HighestWeight::trivial(3),
                HighestWeight::fundamental_multiple(3, 1, 1),
            ],
        ];
        let rep = run_kostant_kumar(&cfg).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_tsv());
        let mixed = rep
            .records
            .iter()
            .find(|r| r.key.contains("(2,1,0)"))
            .unwrap();
        assert_eq!(mixed.data["dim_direct"], "8");
        assert_eq!(mixed.data["dim_factored"], "8");
        let pure = rep
            .records
            .iter()
            .find(|r| r.key.contains("(2,0,0)"))
            .unwrap();
        assert_eq!(pure.data["dim_direct"], "10");
        assert_eq!(pure.data["dim_factored"], "10");
    }

    #[test]
    fn fundamental_rank_one_reduces_to_closed_form() {
        let mut cfg = test_cfg(2);
        cfg.experiment = ExperimentKind::Fundamental;
        cfg.instances = vec![vec![
            HighestWeight::new(vec![2, 0]).unwrap(),
            HighestWeight::new(vec![3, 0]).unwrap(),
        ]];
        let rep = run_fundamental(&cfg).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_tsv());
        let rec = &rep.records[0];
        assert_eq!(rec.data["dim_extremal"], "6");
        assert_eq!(rec.data["fundamental_index"], "1");
        assert!(rec.data["summand[12]"].starts_with("dim=4"));
        assert!(rec.data["summand[21]"].starts_with("dim=3"));
    }

    #[test]
    fn fault_injection_detected() {
        let lam = HighestWeight::new(vec![2, 1, 0]).unwrap();
        assert!(relations_hold(&lam, false));
        assert!(!relations_hold(&lam, true));
    }
}
