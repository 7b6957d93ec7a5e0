//! Experiment configuration: a TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use coherence_core::gt::HighestWeight;

/// Experiment kinds accepted in configs and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    ConjectureSweep,
    Fundamental,
    DemazureCoherence,
    KostantKumar,
    PropertySuites,
}

impl ExperimentKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "conjecture-sweep" => ExperimentKind::ConjectureSweep,
            "fundamental" => ExperimentKind::Fundamental,
            "demazure-coherence" => ExperimentKind::DemazureCoherence,
            "kostant-kumar" => ExperimentKind::KostantKumar,
            "property-suites" => ExperimentKind::PropertySuites,
            other => bail!("unknown experiment kind {other:?}"),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::ConjectureSweep => "conjecture-sweep",
            ExperimentKind::Fundamental => "fundamental",
            ExperimentKind::DemazureCoherence => "demazure-coherence",
            ExperimentKind::KostantKumar => "kostant-kumar",
            ExperimentKind::PropertySuites => "property-suites",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: String,
    pub n: Option<usize>,
    #[serde(default = "default_labeling")]
    pub labeling: String,
    #[serde(default = "default_operators")]
    pub operators: String,
    #[serde(default = "default_cap")]
    pub max_entries: usize,
    #[serde(default = "default_check_limit")]
    pub check_limit: bool,
    #[serde(default)]
    pub fundamental_index: Option<usize>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub instances: Vec<InstanceSection>,
    #[serde(default)]
    pub modules: Vec<ModuleSection>,
    #[serde(default)]
    pub inject_fault: bool,
    /// Deduplicate sweep collections up to cyclic rotation (off by default
    /// so convention bugs surface).
    #[serde(default)]
    pub symmetry_reduce: bool,
}

fn default_labeling() -> String {
    "standard".to_string()
}

fn default_operators() -> String {
    "derived".to_string()
}

fn default_cap() -> usize {
    50_000_000
}

fn default_check_limit() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// Bound on every entry of every weight.
    pub max_entry: Option<i64>,
    /// Bound on the total size of the collection.
    pub max_total: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSection {
    pub weights: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub path: PathBuf,
    pub expected_limit_dim: Option<usize>,
}

/// A fully resolved experiment configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub labeling: String,
    pub operators: String,
    pub max_entries: usize,
    pub check_limit: bool,
    pub fundamental_index: Option<usize>,
    pub out: Option<PathBuf>,
    pub sweep_max_entry: Option<i64>,
    pub sweep_max_total: Option<i64>,
    pub instances: Vec<Vec<HighestWeight>>,
    pub module_paths: Vec<PathBuf>,
    pub expected_limit_dims: Vec<Option<usize>>,
    pub inject_fault: bool,
    pub symmetry_reduce: bool,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub labeling: Option<String>,
    pub operators: Option<String>,
    pub max_entries: Option<usize>,
    pub out: Option<PathBuf>,
    pub experiment: Option<String>,
}

pub fn load_config(path: &Path, overrides: &Overrides) -> Result<Config> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ConfigFile = toml::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    resolve(file, overrides, path.parent().unwrap_or(Path::new(".")))
}

pub fn resolve(file: ConfigFile, overrides: &Overrides, base: &Path) -> Result<Config> {
    let experiment = ExperimentKind::parse(
        overrides
            .experiment
            .as_deref()
            .unwrap_or(file.experiment.as_str()),
    )?;
    let n = overrides.n.or(file.n).unwrap_or(2);
    if n < 2 {
        bail!("rank must be at least 2");
    }
    let labeling = overrides
        .labeling
        .clone()
        .unwrap_or_else(|| file.labeling.clone());
    let operators = overrides
        .operators
        .clone()
        .unwrap_or_else(|| file.operators.clone());
    if operators != "derived" && operators != "minimal" {
        bail!("unknown operator preset {operators:?} (expected derived|minimal)");
    }
    let mut instances = Vec::new();
    for inst in &file.instances {
        let mut ws = Vec::new();
        for w in &inst.weights {
            ws.push(
                HighestWeight::new(w.clone())
                    .map_err(|e| anyhow::anyhow!("bad instance weight: {e}"))?,
            );
        }
        instances.push(ws);
    }
    let mut module_paths = Vec::new();
    let mut expected = Vec::new();
    for m in &file.modules {
        let p = if m.path.is_absolute() {
            m.path.clone()
        } else {
            base.join(&m.path)
        };
        if !p.exists() {
            bail!("module file {} does not exist", p.display());
        }
        module_paths.push(p);
        expected.push(m.expected_limit_dim);
    }
    Ok(Config {
        experiment,
        n,
        labeling,
        operators,
        max_entries: overrides.max_entries.unwrap_or(file.max_entries),
        check_limit: file.check_limit,
        fundamental_index: file.fundamental_index,
        out: overrides.out.clone().or(file.out),
        sweep_max_entry: file.sweep.as_ref().and_then(|s| s.max_entry),
        sweep_max_total: file.sweep.as_ref().and_then(|s| s.max_total),
        instances,
        module_paths,
        expected_limit_dims: expected,
        inject_fault: file.inject_fault,
        symmetry_reduce: file.symmetry_reduce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_config() {
        let file: ConfigFile = toml::from_str(
            r#"
experiment = "conjecture-sweep"
n = 3
[sweep]
max_total = 4
"#,
        )
        .unwrap();
        let cfg = resolve(file, &Overrides::default(), Path::new(".")).unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::ConjectureSweep);
        assert_eq!(cfg.n, 3);
        assert_eq!(cfg.sweep_max_total, Some(4));
        assert_eq!(cfg.labeling, "standard");
        assert_eq!(cfg.operators, "derived");
    }

    #[test]
    fn overrides_win() {
        let file: ConfigFile = toml::from_str(
            r#"
experiment = "conjecture-sweep"
n = 2
labeling = "dual"
"#,
        )
        .unwrap();
        let ov = Overrides {
            n: Some(3),
            labeling: Some("standard".into()),
            ..Default::default()
        };
        let cfg = resolve(file, &ov, Path::new(".")).unwrap();
        assert_eq!(cfg.n, 3);
        assert_eq!(cfg.labeling, "standard");
    }

    #[test]
    fn rejects_unknown_kind() {
        let file: ConfigFile = toml::from_str(r#"experiment = "nope""#).unwrap();
        assert!(resolve(file, &Overrides::default(), Path::new(".")).is_err());
    }
}
