//! Command-line surface: state evaluation, figure data, validation suites,
//! Crank-Nicolson runs and unit conversion.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or configuration error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{Family, FamilyKind, GridConfig, RunConfig, StateArgs};
pub use output::{fmt_num, Format, OUT_DIR_ENV, TOOL, VERSION};

use crate::validation::DEFAULT_SEED;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "accel-cs", version, about = "Quantum states of a particle in a uniform force field")]
pub struct Cli {
    /// Output file; stdout when neither this nor the output directory is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for outputs written under their default names.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a closed-form state on a grid at the requested times.
    Eval(StateArgs),
    /// Emit the density profiles of the two figure scenarios.
    Figure(FigureArgs),
    /// Run verification suites and write a JSON report.
    Validate(ValidateArgs),
    /// Crank-Nicolson evolution of a normalizable state.
    Propagate(StateArgs),
    /// Convert between physical and dimensionless variables.
    Units(UnitsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fig1,
    Fig2,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Grid nodes of each profile.
    #[arg(long, default_value_t = 6001)]
    pub n_points: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Suite names; see --all.
    pub suites: Vec<String>,
    #[arg(long)]
    pub all: bool,
    /// Corrupts the Airy seam blend (mutation check of the suites).
    #[arg(long, hide = true)]
    pub inject_seam_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Dimensionless,
    Dimensional,
}

#[derive(Debug, Args)]
pub struct UnitsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Physical force of the map.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub f_x: f64,
    #[arg(long, value_enum, default_value_t = Direction::Dimensionless)]
    pub to: Direction,
    /// Lengths to convert (x, or q when going to dimensional).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub length: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub time: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub momentum: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub force: Vec<f64>,
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(cli, a),
        Command::Figure(a) => commands::figure(cli, a),
        Command::Validate(a) => commands::validate(cli, a),
        Command::Propagate(a) => commands::propagate(cli, a),
        Command::Units(a) => commands::units(cli, a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
