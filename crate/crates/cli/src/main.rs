//! `cheeger`: compute, verify, reproduce and sweep from the command line.
//!
//! Exit status: 0 when every check passes, 1 when some check fails (the
//! failing rows go to stderr), 2 on usage, input or configuration errors.

mod compute;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use cheeger_core::experiments::{
    lemma_suite, reproduce_annulus, reproduce_flower, reproduce_gauss_sharpness,
    sweep_gauss_constants, sweep_zeta_constant, Table,
};
use cheeger_core::QuadratureConfig;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cheeger", version, about = "Cheeger constants and quantitative isoperimetry")]
pub struct RunConfig {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    tol_quad: Option<f64>,
    /// Root-finding tolerance.
    #[arg(long, global = true)]
    tol_root: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Report path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measures, indexes and Cheeger bounds of one shape or interval set.
    Compute {
        /// Shape document (`cheeger-shape/1`).
        input: PathBuf,
    },
    /// Lemma checks with their margins.
    Verify,
    /// Reproduce one of the extremal constructions.
    Reproduce {
        #[command(subcommand)]
        family: Family,
    },
    /// Randomized estimates of the inequality constants.
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    Flower {
        #[arg(long, value_delimiter = ',', default_values_t = [5u32, 10, 15, 20])]
        j: Vec<u32>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    Annulus {
        #[arg(long, value_delimiter = ',', default_values_t = [4u32, 10, 50])]
        j: Vec<u32>,
    },
    GaussSharpness {
        #[arg(long = "T", value_delimiter = ',', default_values_t = [3.0, 4.0, 5.0, 6.0, 7.0, 8.0])]
        t: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum SweepKind {
    Zeta {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    Gauss {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75])]
        bins: Vec<f64>,
    },
}

fn config(common: &Common) -> Result<QuadratureConfig, String> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = common.tol_quad {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol-quad must be positive, got {t}"));
        }
        cfg = cfg.with_quad_tol(t);
    }
    if let Some(t) = common.tol_root {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol-root must be positive, got {t}"));
        }
        cfg = cfg.with_root_tol(t);
    }
    Ok(cfg)
}

fn run(rc: &RunConfig) -> Result<Table, String> {
    let cfg = config(&rc.common)?;
    let lib = |e: cheeger_core::Error| e.to_string();
    match &rc.command {
        Command::Compute { input } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let (doc, parsed) = input::parse(&text)?;
            let mut table = match parsed {
                input::Input::Planar(shape) => compute::planar(&shape, &cfg),
                input::Input::Line(set) => compute::line(&set, &cfg).map_err(lib)?,
            };
            let echo = serde_json::to_string(&doc).map_err(|e| e.to_string())?;
            table.notes.push(format!("input: {echo}"));
            Ok(table)
        }
        Command::Verify => lemma_suite(&cfg).map_err(lib),
        Command::Reproduce { family } => match family {
            Family::Flower { j, eps } => reproduce_flower(j, *eps, &cfg).map_err(lib),
            Family::Annulus { j } => reproduce_annulus(j, &cfg).map_err(lib),
            Family::GaussSharpness { t } => reproduce_gauss_sharpness(t, &cfg).map_err(lib),
        },
        Command::Sweep { kind } => match kind {
            SweepKind::Zeta { seed, samples } => sweep_zeta_constant(*samples, *seed, &cfg).map_err(lib),
            SweepKind::Gauss { seed, samples, bins } => {
                sweep_gauss_constants(*samples, *seed, bins, &cfg).map_err(lib)
            }
        },
    }
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn main() -> ExitCode {
    let rc = RunConfig::parse();
    let table = match run(&rc) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = render(&table, rc.common.format);
    match &rc.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{report}"),
    }
    let failures = table.failures();
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &failures {
            eprintln!("FAIL {f}");
        }
        ExitCode::from(1)
    }
}
