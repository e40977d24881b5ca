//! `hypersat` command line: sampling, saturation pipelines, exact oracles,
//! and statistical checks, with CSV/JSON reporting.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypersat::hgio::{parse_hg, write_hg};
use hypersat_cli::{
    emit, run_verify, run_with_artifacts, ExperimentConfig, Mode, OutputFormat, TrialRecord,
};

#[derive(Parser)]
#[command(
    name = "hypersat",
    about = "Weak and strong clique saturation in random uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Wsat,
    Sat,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    PairBound,
    Inequality,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 4)]
    s: usize,
    /// Edge probability; defaults to 0.5, except `oracle` which defaults to
    /// the complete host (p = 1).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Report destination (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Zero the ms column for byte-identical reruns.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a seeded binomial random hypergraph.
    Gen {
        #[command(flatten)]
        common: CommonArgs,
        /// Write the sampled hypergraph in .hg format (single trial only).
        #[arg(long)]
        hg_out: Option<PathBuf>,
    },
    /// Build and verify weakly saturated sparks, or verify from files.
    Wsat {
        #[command(flatten)]
        common: CommonArgs,
        /// Use the structured proof-trace activation instead of the closure.
        #[arg(long)]
        proof_trace: bool,
        /// Write the activation trace (text format; .json mirrors as JSON).
        #[arg(long)]
        trace_out: Option<PathBuf>,
        /// Write the core plan of the last trial as JSON.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        /// Verify this host file instead of sampling.
        #[arg(long, requires = "spark")]
        host: Option<PathBuf>,
        /// Spark file to verify against the host.
        #[arg(long, requires = "host")]
        spark: Option<PathBuf>,
    },
    /// Build and verify strongly saturated subhypergraphs, or verify files.
    Sat {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        a1: Option<usize>,
        #[arg(long)]
        a2: Option<usize>,
        #[arg(long)]
        a3: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        c0: f64,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Write the per-seed build reports as a JSON array.
        #[arg(long)]
        report_out: Option<PathBuf>,
        #[arg(long, requires = "spark")]
        host: Option<PathBuf>,
        #[arg(long, requires = "host")]
        spark: Option<PathBuf>,
    },
    /// Exact brute-force minimum saturation numbers.
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = OracleKind::Wsat)]
        kind: OracleKind,
        /// Edge budget above which the oracle refuses to run.
        #[arg(long, default_value_t = hypersat::oracle::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Statistical checks: the pair-clique bound and the exact inequality.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// Clique order for the pair bound.
        #[arg(long, default_value_t = 4)]
        t: usize,
        /// Density constant for the pair bound.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
}

fn config_from(common: &CommonArgs, mode: Mode, default_p: f64) -> ExperimentConfig {
    ExperimentConfig {
        mode,
        n: common.n,
        r: common.r,
        s: common.s,
        p: common.p.unwrap_or(default_p),
        base_seed: common.seed,
        trials: common.trials,
        no_timing: common.no_timing,
        ..Default::default()
    }
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(
    records: Vec<TrialRecord>,
    common: &CommonArgs,
    statistical: bool,
) -> Result<ExitCode, String> {
    let format = match common.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    let text = emit(&records, format).map_err(|e| e.to_string())?;
    write_or_print(&common.out, &text).map_err(|e| e.to_string())?;
    if statistical || records.iter().all(|r| r.success) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn load_pair(host: &Path, spark: &Path) -> Result<(hypersat::Hypergraph, hypersat::Hypergraph), String> {
    let host_text = std::fs::read_to_string(host).map_err(|e| e.to_string())?;
    let spark_text = std::fs::read_to_string(spark).map_err(|e| e.to_string())?;
    Ok((
        parse_hg(&host_text).map_err(|e| format!("host: {e}"))?,
        parse_hg(&spark_text).map_err(|e| format!("spark: {e}"))?,
    ))
}

fn execute(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen { common, hg_out } => {
            if hg_out.is_some() && common.trials != 1 {
                return Err("--hg-out requires --trials 1".into());
            }
            let config = config_from(&common, Mode::Gen, 0.5);
            let (records, artifacts) = run_with_artifacts(&config).map_err(|e| e.to_string())?;
            if let (Some(path), Some(g)) = (&hg_out, &artifacts.hypergraph) {
                std::fs::write(path, write_hg(g)).map_err(|e| e.to_string())?;
            }
            finish(records, &common, false)
        }
        Command::Wsat {
            common,
            proof_trace,
            trace_out,
            plan_out,
            host,
            spark,
        } => {
            if let (Some(h), Some(sp)) = (&host, &spark) {
                let (g, hh) = load_pair(h, sp)?;
                let record = run_verify(Mode::WsatVerify, &g, &hh, common.s, common.no_timing)
                    .map_err(|e| e.to_string())?;
                return finish(vec![record], &common, false);
            }
            let mode = if proof_trace {
                Mode::ProofTrace
            } else {
                Mode::WsatBuild
            };
            let config = config_from(&common, mode, 0.5);
            let (records, artifacts) = run_with_artifacts(&config).map_err(|e| e.to_string())?;
            if let (Some(path), Some(trace)) = (&trace_out, &artifacts.trace) {
                let is_json = path.extension().is_some_and(|e| e == "json");
                let text = if is_json {
                    serde_json::to_string_pretty(trace).map_err(|e| e.to_string())? + "\n"
                } else {
                    trace.to_text()
                };
                std::fs::write(path, text).map_err(|e| e.to_string())?;
            }
            if let (Some(path), Some(json)) = (&plan_out, &artifacts.plan_json) {
                std::fs::write(path, format!("{json}\n")).map_err(|e| e.to_string())?;
            }
            finish(records, &common, false)
        }
        Command::Sat {
            common,
            a1,
            a2,
            a3,
            c0,
            c1,
            delta,
            report_out,
            host,
            spark,
        } => {
            if let (Some(h), Some(sp)) = (&host, &spark) {
                let (g, hh) = load_pair(h, sp)?;
                let record = run_verify(Mode::SatVerify, &g, &hh, common.s, common.no_timing)
                    .map_err(|e| e.to_string())?;
                return finish(vec![record], &common, false);
            }
            let mut config = config_from(&common, Mode::SatBuild, 0.5);
            config.a1 = a1;
            config.a2 = a2;
            config.a3 = a3;
            config.c0 = c0;
            config.c1 = c1;
            config.delta = delta;
            let (records, artifacts) = run_with_artifacts(&config).map_err(|e| e.to_string())?;
            if let Some(path) = &report_out {
                let text = serde_json::to_string_pretty(&artifacts.build_reports)
                    .map_err(|e| e.to_string())?
                    + "\n";
                std::fs::write(path, text).map_err(|e| e.to_string())?;
            }
            finish(records, &common, false)
        }
        Command::Oracle {
            common,
            kind,
            budget,
        } => {
            let mode = match kind {
                OracleKind::Wsat => Mode::OracleWsat,
                OracleKind::Sat => Mode::OracleSat,
            };
            let mut config = config_from(&common, mode, 1.0);
            config.budget = budget;
            let records = hypersat_cli::run(&config).map_err(|e| e.to_string())?;
            finish(records, &common, false)
        }
        Command::Check { common, kind, t, c } => {
            let mode = match kind {
                CheckKind::PairBound => Mode::CheckPairBound,
                CheckKind::Inequality => Mode::CheckInequality,
            };
            let mut config = config_from(&common, mode, 0.5);
            config.t = t;
            config.c = c;
            let records = hypersat_cli::run(&config).map_err(|e| e.to_string())?;
            finish(records, &common, true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
