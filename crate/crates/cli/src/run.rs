use crate::config::{parse_document, Document};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mudiv_core::harness::{
    aggregates_csv, run_trials, scaling_sweep, threshold_csv, validate, write_json, write_records, RunOptions,
    Scheme, ValidationReport,
};
use mudiv_core::{NetworkParams, TrialAggregate};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "mudiv", version, about = "Spectrum-sharing multiuser diversity simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run both allocation schemes on the configured network
    Simulate(CommonArgs),
    /// Sweep the population size and fit the double-log growth
    Scaling(CommonArgs),
    /// Tabulate the access threshold over N, SNR and primary-network size
    Thresholds(CommonArgs),
    /// Run the statistical property suite; exits non-zero if any check fails
    Validate(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Configuration document (`key = value` lines)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output directory, created if missing
    #[arg(long, value_name = "PATH", default_value = ".")]
    pub out: PathBuf,
    /// Overrides `seed` from the configuration
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    /// Overrides `trials` (`samples` for validate)
    #[arg(long, value_name = "COUNT")]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Simulate,
    Scaling,
    Thresholds,
    Validate,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Simulate => "simulate",
            Kind::Scaling => "scaling",
            Kind::Thresholds => "thresholds",
            Kind::Validate => "validate",
        }
    }
}

/// One fully specified invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub kind: Kind,
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

impl From<Cli> for RunSpec {
    fn from(cli: Cli) -> Self {
        let (kind, a) = match cli.command {
            Command::Simulate(a) => (Kind::Simulate, a),
            Command::Scaling(a) => (Kind::Scaling, a),
            Command::Thresholds(a) => (Kind::Thresholds, a),
            Command::Validate(a) => (Kind::Validate, a),
        };
        RunSpec {
            kind,
            config: a.config,
            out: a.out,
            seed: a.seed,
            trials: a.trials,
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// False only when `validate` found a failing property.
    pub passed: bool,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    network: &'a NetworkParams,
    centralized: &'a TrialAggregate,
    distributed: &'a TrialAggregate,
}

fn ensure_writable(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let probe = dir.join(".mudiv-write-probe");
    fs::write(&probe, b"").with_context(|| format!("output directory {} is not writable", dir.display()))?;
    fs::remove_file(&probe).with_context(|| format!("cannot clean up {}", probe.display()))?;
    Ok(())
}

fn load(spec: &RunSpec) -> Result<Document> {
    let text = fs::read_to_string(&spec.config)
        .with_context(|| format!("cannot read config {}", spec.config.display()))?;
    let mut doc = parse_document(&text).with_context(|| format!("in {}", spec.config.display()))?;
    if let Some(seed) = spec.seed {
        doc.network = doc.network.with_seed(seed);
    }
    if let Some(trials) = spec.trials {
        if trials == 0 {
            bail!("--trials must be at least 1");
        }
        doc.trials = trials;
        doc.samples = trials;
    }
    Ok(doc)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn validation_csv(report: &ValidationReport) -> String {
    let mut out = String::from("check,passed,statistic,threshold\n");
    for c in &report.checks {
        out += &format!("{},{},{:?},{:?}\n", c.name, c.passed, c.statistic, c.threshold);
    }
    out
}

/// Runs one subcommand and writes `<subcommand>.csv` and `<subcommand>.json`
/// (plus per-trial record files for `simulate`) under `spec.out`.
pub fn execute(spec: &RunSpec) -> Result<RunOutcome> {
    let doc = load(spec)?;
    ensure_writable(&spec.out)?;
    let name = spec.kind.name();
    let csv_path = spec.out.join(format!("{name}.csv"));
    let json_path = spec.out.join(format!("{name}.json"));
    let mut files = vec![csv_path.clone(), json_path.clone()];
    let cfg = &doc.network;
    let mut passed = true;

    let summary = match spec.kind {
        Kind::Simulate => {
            let c = run_trials(cfg, Scheme::Centralized, doc.trials)?;
            let d = run_trials(cfg, Scheme::Distributed, doc.trials)?;
            write_text(&csv_path, &aggregates_csv([&c, &d])?)?;
            write_json(
                &SimulationReport {
                    network: cfg.params(),
                    centralized: &c,
                    distributed: &d,
                },
                &json_path,
            )?;
            for agg in [&c, &d] {
                let path = spec.out.join(format!("{name}_{}.bin", agg.scheme));
                write_records(&agg.records, &path)?;
                files.push(path);
            }
            format!(
                "N={} M={} trials={}: centralized {:.4} ± {:.4}, distributed {:.4} ± {:.4} bits/s/Hz",
                cfg.num_secondary(),
                cfg.num_bands(),
                doc.trials,
                c.mean_sum_rate,
                c.stderr_sum_rate,
                d.mean_sum_rate,
                d.stderr_sum_rate
            )
        }
        Kind::Scaling => {
            let report = scaling_sweep(cfg, &doc.n_values, doc.trials, &RunOptions::default())?;
            write_text(&csv_path, &aggregates_csv(report.centralized.iter().chain(&report.distributed))?)?;
            write_json(&report, &json_path)?;
            match report.fit {
                Some(f) => format!(
                    "{} populations: centralized slope {:.3} on log2(log2 N), R² {:.4}",
                    report.n_values.len(),
                    f.slope,
                    f.r_squared
                ),
                None => format!("{} populations (too few with N >= 50 to fit)", report.n_values.len()),
            }
        }
        Kind::Thresholds => {
            let sweep = mudiv_core::harness::threshold_sweep(cfg, &doc.n_values, &doc.rho_db_values, &doc.k_values)?;
            write_text(&csv_path, &threshold_csv(&sweep)?)?;
            write_json(&sweep, &json_path)?;
            format!(
                "{} thresholds; increasing in N: {}, in rho: {}, decreasing in K: {}",
                sweep.rows.len(),
                sweep.increasing_in_n,
                sweep.increasing_in_rho,
                sweep.decreasing_in_k
            )
        }
        Kind::Validate => {
            let report = validate(cfg, doc.samples)?;
            write_text(&csv_path, &validation_csv(&report))?;
            write_json(&report, &json_path)?;
            passed = report.passed;
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                format!("all {} checks passed", report.checks.len())
            } else {
                format!("failed: {}", failed.join(", "))
            }
        }
    };
    Ok(RunOutcome { passed, files, summary })
}
