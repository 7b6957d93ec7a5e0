use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use coherence_lab::config::{load_config, Overrides};
use coherence_lab::examples;
use coherence_lab::experiments;
use coherence_lab::format::{MODULE_SCHEMA, REPORT_SCHEMA};
use coherence_lab::report::{Report, ENGINE_VERSION};

#[derive(Parser)]
#[command(
    name = "coherence-lab",
    version = ENGINE_VERSION,
    long_version = concat!(
        env!("CARGO_PKG_VERSION"),
        "\nschemas: coherence-lab/module/v1, coherence-lab/subspace/v1, coherence-lab/report/v1",
    ),
    about = "Exact verification lab for contraction limits of cyclic current-algebra modules"
)]
struct Cli {
    /// Worker threads for sweeps (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment described by a TOML config file.
    Run {
        config: PathBuf,
        /// Override the rank.
        #[arg(long)]
        n: Option<usize>,
        /// Labeling preset: standard | dual | dual-rotated.
        #[arg(long)]
        preset: Option<String>,
        /// Operator preset: derived | minimal.
        #[arg(long)]
        operators: Option<String>,
        /// Stored-entry budget for the closure engines.
        #[arg(long)]
        max_entries: Option<usize>,
        /// Report output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the experiment kind.
        #[arg(long)]
        experiment: Option<String>,
    },
    /// Run the default property suites.
    Suite {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the fault-injection sanity path.
        #[arg(long)]
        fault_injection: bool,
    },
    /// Run a named example scenario:
    /// sec7.1 | sec7.2 | sec7.3a | sec7.3b | sec7.4.
    Example {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory holding the module data files.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
    /// Regenerate the checked-in module data files.
    MakeData {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>, started: Instant) -> anyhow::Result<bool> {
    if let Some(dir) = out {
        report.write(dir, &report.experiment)?;
    }
    println!("{}", report.summary_line());
    for r in report.records.iter().filter(|r| !r.pass) {
        println!("  FAIL {}: {:?}", r.key, r.checks);
    }
    eprintln!(
        "[{} finished in {:.2}s]",
        report.experiment,
        started.elapsed().as_secs_f64()
    );
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let started = Instant::now();
    let outcome = match cli.cmd {
        Cmd::Run {
            config,
            n,
            preset,
            operators,
            max_entries,
            out,
            experiment,
        } => {
            let overrides = Overrides {
                n,
                labeling: preset,
                operators,
                max_entries,
                out,
                experiment,
            };
            load_config(&config, &overrides).and_then(|cfg| {
                let report = experiments::run(&cfg)?;
                emit(&report, cfg.out.as_ref(), started)
            })
        }
        Cmd::Suite {
            out,
            fault_injection,
        } => {
            let mut cfg = suite_config();
            cfg.inject_fault = fault_injection;
            experiments::run_property_suites(&cfg).and_then(|report| emit(&report, out.as_ref(), started))
        }
        Cmd::Example {
            name,
            out,
            data_dir,
        } => {
            let dir = data_dir.unwrap_or_else(examples::default_data_dir);
            examples::run_example(&name, &dir, out.as_deref())
                .and_then(|report| emit(&report, out.as_ref(), started))
        }
        Cmd::MakeData { out } => {
            let dir = out.unwrap_or_else(examples::default_data_dir);
            examples::make_data(&dir).map(|written| {
                for p in written {
                    println!("wrote {}", p.display());
                }
                true
            })
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn suite_config() -> coherence_lab::config::Config {
    coherence_lab::config::Config {
        experiment: coherence_lab::config::ExperimentKind::PropertySuites,
        n: 2,
        labeling: "standard".into(),
        operators: "derived".into(),
        max_entries: 200_000_000,
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

// referenced so the schema constants stay part of the public surface
const _: (&str, &str) = (MODULE_SCHEMA, REPORT_SCHEMA);
