//! remo command line: analyze state files, sweep families, locate thresholds,
//! audit random ensembles, and emit plot scripts.
//!
//! Exit codes: 0 all criteria inconclusive (or nothing to flag), 1 usage or
//! input error, 2 at least one criterion certified entanglement, 3 an audit
//! invariant failed.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use remo::audit::{run_audit, AuditConfig};
use remo::criteria::Criterion;
use remo::report::run_all;
use remo::reshape::BipartiteDims;
use remo::states::parse_state;
use remo::sweep::{find_threshold, run_sweep, Family, SweepSpec};

use output::{audit_text, plot_script, sweep_csv, utc_timestamp, write_output};

#[derive(Parser)]
#[command(name = "remo", version, about = "Entanglement detection via realignment-moment criteria")]
struct Cli {
    /// Omit the timestamp field from reports, making output byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a state file; prints a JSON report.
    Analyze {
        /// State document (JSON with dA, dB, re, im).
        state_file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated criteria, or "all".
        #[arg(long, default_value = "all")]
        criteria: String,
    },
    /// Sweep a state family; prints one CSV row per grid point.
    Sweep {
        #[arg(long, default_value = "werner")]
        family: String,
        /// First grid point.
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        /// Last grid point (inclusive).
        #[arg(long, default_value_t = 1.0)]
        end: f64,
        /// Number of grid points, both endpoints included.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Comma-separated criteria, or "all".
        #[arg(long, default_value = "all")]
        criteria: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bisect the parameter where a criterion's margin changes sign.
    Threshold {
        #[arg(long, default_value = "werner")]
        family: String,
        /// Criterion id, e.g. r-moment or ccnr.
        #[arg(long)]
        criterion: String,
        /// Grid points for the sign-change pre-scan.
        #[arg(long, default_value_t = 65)]
        prescan: usize,
    },
    /// Sample random and separable ensembles and verify invariants.
    Audit {
        /// Subsystem dimensions, e.g. 2x2 or 3x3.
        #[arg(long, default_value = "2x2")]
        dims: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Where to write the offending state if an invariant fails.
        #[arg(long, default_value = "audit-violation.json")]
        out: PathBuf,
    },
    /// Turn a sweep CSV into a self-contained gnuplot script.
    Plot {
        csv: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_criteria(text: &str) -> Result<Vec<Criterion>, String> {
    if text == "all" {
        return Ok(Criterion::ALL.to_vec());
    }
    text.split(',')
        .map(|t| Criterion::parse(t.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn parse_dims(text: &str) -> Result<BipartiteDims, String> {
    let parts: Vec<&str> = text.split('x').collect();
    let err = || format!("dims must look like 2x2, got \"{text}\"");
    if parts.len() != 2 {
        return Err(err());
    }
    let d_a: usize = parts[0].parse().map_err(|_| err())?;
    let d_b: usize = parts[1].parse().map_err(|_| err())?;
    BipartiteDims::new(d_a, d_b).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    ExitCode::from(run())
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze { state_file, out, criteria } => {
            let selected = parse_criteria(&criteria)?;
            let text = std::fs::read_to_string(&state_file)
                .map_err(|e| format!("cannot read {}: {e}", state_file.display()))?;
            let state = parse_state(&text).map_err(|e| e.to_string())?;
            let mut report = run_all(&state, &state_file.display().to_string())
                .map_err(|e| e.to_string())?;
            report
                .verdicts
                .retain(|v| selected.iter().any(|c| c.includes_verdict(&v.criterion)));
            report.entangled = report.verdicts.iter().any(|v| v.is_entangled());
            if !cli.no_timestamp {
                report.timestamp = Some(utc_timestamp());
            }
            write_output(&report.to_json(), out.as_deref())?;
            Ok(if report.entangled { 2 } else { 0 })
        }
        Command::Sweep { family, start, end, steps, criteria, out } => {
            let spec = SweepSpec {
                family: Family::parse(&family).map_err(|e| e.to_string())?,
                param_start: start,
                param_end: end,
                steps,
                criteria: parse_criteria(&criteria)?,
            };
            let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
            write_output(&sweep_csv(&rows, &spec.criteria), out.as_deref())?;
            Ok(0)
        }
        Command::Threshold { family, criterion, prescan } => {
            let family = Family::parse(&family).map_err(|e| e.to_string())?;
            let criterion = Criterion::parse(&criterion).map_err(|e| e.to_string())?;
            let value = find_threshold(family, criterion, prescan).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(0)
        }
        Command::Audit { dims, samples, seed, out } => {
            let config = AuditConfig {
                dims: parse_dims(&dims)?,
                samples,
                seed,
            };
            let summary = run_audit(&config).map_err(|e| e.to_string())?;
            print!("{}", audit_text(&summary, &out));
            if let Some(violation) = &summary.violation {
                std::fs::write(&out, &violation.state_document)
                    .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
                return Ok(3);
            }
            Ok(0)
        }
        Command::Plot { csv, out } => {
            let text = std::fs::read_to_string(&csv)
                .map_err(|e| format!("cannot read {}: {e}", csv.display()))?;
            let name = csv
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sweep.csv".to_string());
            let script = plot_script(&text, &name)?;
            write_output(&script, out.as_deref())?;
            Ok(0)
        }
    }
}
