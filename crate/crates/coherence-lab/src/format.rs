//! On-disk formats: the module file schema, subspace dumps and character
//! tables. All serializations are canonical; saving a loaded file reproduces
//! it byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use coherence_core::arith::Rat;
use coherence_core::current::{BasisVector, GradedCurrentModule};
use coherence_core::gt::OpMatrix;
use coherence_core::sparse::SparseVec;
use coherence_core::subspace::WeightGradedSubspace;
use coherence_core::tensor::TensorSpace;
use coherence_core::weight::WeightVector;

pub const MODULE_SCHEMA: &str = "coherence-lab/module/v1";
pub const SUBSPACE_SCHEMA: &str = "coherence-lab/subspace/v1";
pub const REPORT_SCHEMA: &str = "coherence-lab/report/v1";

#[derive(Debug, Serialize, Deserialize)]
struct ModuleFile {
    schema: String,
    name: String,
    rank: usize,
    truncation: usize,
    cyclic_index: usize,
    basis: Vec<BasisEntry>,
    actions: Vec<ActionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BasisEntry {
    weight: Vec<i64>,
    z_degree: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct ActionEntry {
    i: usize,
    j: usize,
    k: usize,
    /// `[source, target, coefficient]` triplets, sorted.
    entries: Vec<(usize, usize, String)>,
}

/// Canonical text form of a rational: `p` or `p/q` in lowest terms.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let r: Rat = s
        .parse()
        .map_err(|e| anyhow::anyhow!("invalid rational literal {s:?}: {e}"))?;
    Ok(r)
}

fn module_to_file(m: &GradedCurrentModule) -> ModuleFile {
    let mut actions = Vec::new();
    for (&(i, j, k), mat) in m.actions() {
        let mut entries = Vec::new();
        for (src, col) in mat.cols.iter().enumerate() {
            for (dst, c) in col.iter() {
                entries.push((src, *dst, rat_to_string(c)));
            }
        }
        entries.sort();
        if !entries.is_empty() {
            actions.push(ActionEntry { i, j, k, entries });
        }
    }
    ModuleFile {
        schema: MODULE_SCHEMA.to_string(),
        name: m.name().to_string(),
        rank: m.rank(),
        truncation: m.trunc(),
        cyclic_index: m.cyclic_index(),
        basis: m
            .basis()
            .iter()
            .map(|b| BasisEntry {
                weight: b.weight.as_slice().to_vec(),
                z_degree: b.z_degree,
            })
            .collect(),
        actions,
    }
}

fn module_from_file(f: ModuleFile) -> Result<GradedCurrentModule> {
    if f.schema != MODULE_SCHEMA {
        bail!("unsupported module schema {:?}", f.schema);
    }
    let dim = f.basis.len();
    if f.cyclic_index >= dim {
        bail!("cyclic index {} out of range {dim}", f.cyclic_index);
    }
    let n = f.rank;
    let basis: Vec<BasisVector> = f
        .basis
        .into_iter()
        .map(|b| {
            if b.weight.len() != n {
                bail!("weight length differs from rank");
            }
            Ok(BasisVector {
                weight: WeightVector(b.weight),
                z_degree: b.z_degree,
            })
        })
        .collect::<Result<_>>()?;
    let mut actions = BTreeMap::new();
    for a in f.actions {
        if !(1..=n).contains(&a.i) || !(1..=n).contains(&a.j) {
            bail!("action indices ({},{}) out of range", a.i, a.j);
        }
        let shift = if a.i == a.j {
            WeightVector::zero(n)
        } else {
            WeightVector::unit_shift(n, a.i, a.j)
        };
        let mut mat = OpMatrix::zero(dim, shift, a.k as i64);
        for (src, dst, c) in a.entries {
            if src >= dim || dst >= dim {
                bail!("matrix entry ({src},{dst}) out of range");
            }
            mat.cols[src].add_to(dst, rat_from_string(&c)?);
        }
        if actions.insert((a.i, a.j, a.k), mat).is_some() {
            bail!("duplicate action block ({},{},{})", a.i, a.j, a.k);
        }
    }
    let module =
        GradedCurrentModule::from_parts(n, f.truncation, basis, actions, f.cyclic_index, f.name);
    module
        .validate_strict()
        .map_err(|e| anyhow::anyhow!("module file fails validation: {e}"))?;
    Ok(module)
}

pub fn module_to_json(m: &GradedCurrentModule) -> String {
    let mut s = serde_json::to_string_pretty(&module_to_file(m)).expect("serializable");
    s.push('\n');
    s
}

pub fn module_from_json(text: &str) -> Result<GradedCurrentModule> {
    let f: ModuleFile = serde_json::from_str(text).context("malformed module file")?;
    module_from_file(f)
}

pub fn save_module(m: &GradedCurrentModule, path: &Path) -> Result<()> {
    std::fs::write(path, module_to_json(m))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_module(path: &Path) -> Result<GradedCurrentModule> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    module_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Serialize)]
struct SubspaceFile {
    schema: String,
    dimension: usize,
    weights: Vec<SubspaceWeight>,
}

#[derive(Debug, Serialize)]
struct SubspaceWeight {
    weight: Vec<i64>,
    vectors: Vec<Vec<(Vec<u32>, String)>>,
}

/// Dump the per-weight echelon bases of a subspace.
pub fn subspace_to_json(s: &WeightGradedSubspace) -> String {
    let mut weights = Vec::new();
    for (w, e) in s.iter() {
        let mut vectors = Vec::new();
        for (_, row) in e.rows() {
            let mut entries: Vec<(Vec<u32>, String)> = row
                .iter()
                .map(|(l, c)| (l.clone(), rat_to_string(c)))
                .collect();
            entries.sort();
            vectors.push(entries);
        }
        weights.push(SubspaceWeight {
            weight: w.as_slice().to_vec(),
            vectors,
        });
    }
    let f = SubspaceFile {
        schema: SUBSPACE_SCHEMA.to_string(),
        dimension: s.dim(),
        weights,
    };
    let mut text = serde_json::to_string_pretty(&f).expect("serializable");
    text.push('\n');
    text
}

/// Character table as TSV: `weight <TAB> multiplicity`.
pub fn character_to_tsv(ch: &BTreeMap<WeightVector, usize>) -> String {
    let mut out = String::from("weight\tmultiplicity\n");
    for (w, m) in ch {
        out.push_str(&format!("{}\t{}\n", w.display_compact(), m));
    }
    out
}

/// Degree-resolved character table as TSV.
pub fn degree_character_to_tsv(ch: &BTreeMap<(WeightVector, usize), usize>) -> String {
    let mut out = String::from("weight\tz_degree\tmultiplicity\n");
    for ((w, d), m) in ch {
        out.push_str(&format!("{}\t{}\t{}\n", w.display_compact(), d, m));
    }
    out
}

/// Dump a subspace with labels resolved against a tensor space (adds the
/// degree-resolved character).
pub fn write_subspace(
    s: &WeightGradedSubspace,
    space: &TensorSpace<'_>,
    dir: &Path,
    stem: &str,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{stem}.json")), subspace_to_json(s))?;
    std::fs::write(
        dir.join(format!("{stem}.character.tsv")),
        character_to_tsv(&s.character()),
    )?;
    std::fs::write(
        dir.join(format!("{stem}.degree-character.tsv")),
        degree_character_to_tsv(&s.degree_character(space)),
    )?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct OperatorFile {
    schema: String,
    operators: Vec<OperatorEntry>,
}

#[derive(Debug, Serialize)]
struct OperatorEntry {
    name: String,
    weight_shift: Vec<i64>,
    /// `(factor, i, j, z_power, coefficient)` terms.
    terms: Vec<(usize, usize, usize, usize, String)>,
}

/// Debug dump of assembled operators in the matrix schema used by module
/// files.
pub fn write_operators(
    ops: &[coherence_core::tensor::AssembledOp<Rat>],
    dir: &Path,
    stem: &str,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let entries = ops
        .iter()
        .map(|op| OperatorEntry {
            name: op.name.clone(),
            weight_shift: op.weight_shift.as_slice().to_vec(),
            terms: op
                .terms
                .iter()
                .map(|t| (t.factor, t.i, t.j, t.zpow, rat_to_string(&t.coeff)))
                .collect(),
        })
        .collect();
    let f = OperatorFile {
        schema: "coherence-lab/operators/v1".to_string(),
        operators: entries,
    };
    let mut text = serde_json::to_string_pretty(&f).expect("serializable");
    text.push('\n');
    std::fs::write(dir.join(format!("{stem}.json")), text)?;
    Ok(())
}

/// Serialize a sparse vector for embedding in reports.
pub fn vector_to_string(v: &SparseVec<Vec<u32>, Rat>) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(l, c)| format!("{}*{:?}", rat_to_string(c), l))
        .collect();
    parts.join(" + ")
}
