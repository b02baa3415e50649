//! Command-line interface: scenario evaluation, reference-value reproduction,
//! sharpness sweeps, compatibility windows, the noncontextual model, and the
//! state-independence scan.

mod commands;
mod error;
mod format;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use format::OutputFormat;
use scenario::AxesPreset;

#[derive(Parser)]
#[command(
    name = "specker",
    version,
    about = "Joint measurability and noncontextuality-bound analysis for unsharp qubit measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (sweep always emits CSV)
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file: R3, bounds, violation, diagnostics
    Evaluate {
        /// Path to a JSON scenario file
        scenario: PathBuf,
    },
    /// Recompute the trine-scenario reference values and check tolerances
    Reproduce {
        /// Tolerance for the closed-form rows (decimal-quoted rows keep a
        /// floor at their quote precision)
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Emit a CSV curve of the optimal violation against sharpness
    Sweep {
        #[arg(long, value_enum, default_value_t = AxesPreset::Trine)]
        preset: AxesPreset,
        #[arg(long)]
        eta_min: f64,
        #[arg(long)]
        eta_max: f64,
        #[arg(long)]
        step: f64,
    },
    /// Print the Specker sharpness window for a triple of axes
    Window {
        #[arg(long, value_enum)]
        preset: Option<AxesPreset>,
        /// Take the axes (and sharpness) from a scenario file
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Report whether this sharpness lies inside the window
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Noncontextual model bound and joint-distribution feasibility demos
    Model {
        #[arg(long, default_value_t = 2.0 / 3.0)]
        eta: f64,
        /// Seed for the Monte Carlo sampling path
        #[arg(long, default_value_t = specker_core::ont_model::DEFAULT_SEED)]
        seed: u64,
        /// Monte Carlo sample count (0 disables sampling)
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
    /// Scan measurement geometries for a state-independent violation opening
    ScanSi {
        #[arg(long, default_value_t = 50)]
        resolution: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let (content, failures) = match &cli.command {
        Command::Evaluate { scenario } => (commands::evaluate::run(scenario, cli.format)?, 0),
        Command::Reproduce { tolerance } => commands::reproduce::run(*tolerance, cli.format)?,
        Command::Sweep {
            preset,
            eta_min,
            eta_max,
            step,
        } => (commands::sweep::run(*preset, *eta_min, *eta_max, *step)?, 0),
        Command::Window {
            preset,
            scenario,
            eta,
        } => (
            commands::window::run(*preset, scenario.as_deref(), *eta, cli.format)?,
            0,
        ),
        Command::Model { eta, seed, samples } => {
            (commands::model::run(*eta, *seed, *samples, cli.format)?, 0)
        }
        Command::ScanSi { resolution } => (commands::scan_si::run(*resolution, cli.format)?, 0),
    };

    write_output(cli.output.as_deref(), &content)?;
    if failures > 0 {
        let err = CliError::RowsFailed { failed: failures };
        eprintln!("error: {err}");
        return Ok(err.exit_code());
    }
    Ok(ExitCode::SUCCESS)
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
        }
        Some(p) => {
            std::fs::write(p, content)
                .map_err(|e| CliError::Internal(format!("{}: {e}", p.display())))?;
        }
    }
    Ok(())
}
