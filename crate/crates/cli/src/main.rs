//! `biconfluent`: tables for the conditionally integrable bi-confluent Heun potential.
//!
//! Exit codes: 0 success, 1 failed validation, 2 usage error, 3 solver failure.

// `!(x >= 0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod manifest;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use biconfluent::validate::DEFAULT_ORACLE_LEVELS;
use biconfluent::PhysParams64;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use commands::{GridSpec, Method, Source};
use manifest::RunManifest;
use table::{Format, Table};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "biconfluent", version, about, long_about = None)]
struct Cli {
    #[command(flatten)]
    params: ParamArgs,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write `<command>.<format>` and `manifest.json` here instead of printing
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize, Clone, Copy)]
struct ParamArgs {
    /// Particle mass
    #[arg(long, default_value_t = 1.0, global = true)]
    mass: f64,
    /// Reduced Planck constant
    #[arg(long, default_value_t = 1.0, global = true)]
    hbar: f64,
    /// Asymptotic value of the potential
    #[arg(long, default_value_t = 0.0, global = true)]
    v0: f64,
    /// Strength of the x^{-3/2} term
    #[arg(long, default_value_t = 1.0, global = true)]
    v1: f64,
    /// Coulomb-like 1/x coefficient (closed forms need 0)
    #[arg(long, default_value_t = 0.0, global = true)]
    v2: f64,
}

impl ParamArgs {
    fn build(&self) -> PhysParams64 {
        PhysParams64 {
            mass: self.mass,
            hbar: self.hbar,
            v0: self.v0,
            v1: self.v1,
            v2: self.v2,
        }
    }
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
enum Command {
    /// Tabulate the potential
    Potential {
        #[arg(long, default_value_t = 0.05)]
        x_min: f64,
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
        #[arg(long, default_value_t = 500)]
        points: usize,
        /// Logarithmically spaced grid
        #[arg(long)]
        log_spaced: bool,
    },
    /// Bound-state energies
    Levels {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Bound-state wave function
    Wavefunction {
        /// Level index, starting at 1
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Source::Analytic)]
        source: Source,
        #[arg(long, default_value_t = 1e-3)]
        x_min: f64,
        /// Defaults to three times the outer turning point
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        /// Logarithmically spaced grid (the oracle grid is always logarithmic)
        #[arg(long)]
        log_spaced: bool,
        /// Scale to unit norm; otherwise to unit peak
        #[arg(long)]
        normalize: bool,
    },
    /// Run the check suite; exit status 1 if any check fails
    Validate {
        /// Multiplies every tolerance
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
        /// Levels compared with the shooting solver
        #[arg(long, default_value_t = DEFAULT_ORACLE_LEVELS)]
        n_max: usize,
    },
    /// Data series behind the figures
    Figure {
        /// Figure number, 1 to 4
        #[arg(long)]
        id: u8,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Potential { .. } => "potential",
            Command::Levels { .. } => "levels",
            Command::Wavefunction { .. } => "wavefunction",
            Command::Validate { .. } => "validate",
            Command::Figure { .. } => "figure",
        }
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn solver(err: biconfluent::Error) -> Failure {
    Failure {
        code: EXIT_SOLVER,
        message: err.to_string(),
    }
}

fn check_grid(x_min: f64, x_max: f64, points: usize) -> Result<(), Failure> {
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) {
        return Err(usage(format!("need 0 < x-min < x-max, got {x_min} and {x_max}")));
    }
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    Ok(())
}

/// Result of a command: the table plus manifest extras and the exit status.
struct Outcome {
    table: Table,
    summary: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Outcome {
            table,
            summary: serde_json::Value::Null,
            code: 0,
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let p = cli.params.build();
    p.validate().map_err(|e| usage(e.to_string()))?;
    let needs_well = !matches!(cli.command, Command::Potential { .. });
    if needs_well && p.v1 <= 0.0 {
        return Err(usage("bound states require --v1 > 0"));
    }
    let needs_closed_form = !matches!(
        cli.command,
        Command::Potential { .. }
            | Command::Levels {
                method: Method::Oracle,
                ..
            }
    );
    if needs_closed_form && p.v2 != 0.0 {
        return Err(usage("this command uses the closed-form solution, which needs --v2 0"));
    }

    match cli.command {
        Command::Potential {
            x_min,
            x_max,
            points,
            log_spaced,
        } => {
            check_grid(x_min, x_max, points)?;
            let grid = GridSpec {
                x_min,
                x_max,
                points,
                log_spaced,
            };
            commands::potential(&p, &grid).map(Outcome::table).map_err(solver)
        }
        Command::Levels { n_max, method } => {
            if n_max == 0 {
                return Err(usage("--n-max must be at least 1"));
            }
            commands::levels(&p, n_max, method).map(Outcome::table).map_err(solver)
        }
        Command::Wavefunction {
            n,
            source,
            x_min,
            x_max,
            points,
            log_spaced,
            normalize,
        } => {
            if n == 0 {
                return Err(usage("--n starts at 1"));
            }
            if !(x_min > 0.0) {
                return Err(usage(format!("--x-min must be positive, got {x_min}")));
            }
            let x_max = match x_max {
                Some(v) => v,
                None => commands::default_x_max(&p, n).map_err(solver)?,
            };
            check_grid(x_min, x_max, points)?;
            let grid = GridSpec {
                x_min,
                x_max,
                points,
                log_spaced,
            };
            let out = commands::wavefunction(&p, n, source, &grid, normalize).map_err(solver)?;
            if let Some(ov) = out.overlap {
                eprintln!("overlap(analytic, oracle) = {ov:.12}");
            }
            Ok(Outcome {
                table: out.table,
                summary: json!({ "energy": out.energy, "x_max": x_max, "overlap": out.overlap }),
                code: 0,
            })
        }
        Command::Validate { tolerance_scale, n_max } => {
            if !(tolerance_scale >= 0.0) || n_max == 0 {
                return Err(usage("--tolerance-scale must be non-negative and --n-max positive"));
            }
            let (table, report) = commands::validation(&p, n_max, tolerance_scale).map_err(solver)?;
            let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
            for c in &report.checks {
                eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            Ok(Outcome {
                table,
                summary: json!({ "passed": report.passed(), "failed": failed }),
                code: if report.passed() { 0 } else { EXIT_VALIDATION },
            })
        }
        Command::Figure { id } => {
            if !(1..=4).contains(&id) {
                return Err(usage(format!("unknown figure id {id}; expected 1 to 4")));
            }
            commands::figure(&p, id).map(Outcome::table).map_err(solver)
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    let body = outcome.table.render(cli.format);
    let Some(dir) = &cli.out_dir else {
        let mut out = std::io::stdout().lock();
        return match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
            // a closed reader (`| head`) is not an error
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        };
    };
    std::fs::create_dir_all(dir)?;
    let params = json!({
        "physics": cli.params,
        "command": cli.command,
        "format": cli.format,
    });
    let mut manifest = RunManifest::new(cli.command.name(), params);
    manifest.summary = outcome.summary.clone();
    let name = format!("{}.{}", cli.command.name(), cli.format.extension());
    manifest.write_output(dir, &name, &body)?;
    manifest.save(dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
