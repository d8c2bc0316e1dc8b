//! `subord`: load subordination algebras, frames and `ω⁺` spaces from JSON,
//! run the library's checks and constructions, and print reports.
//!
//! Exit codes: `0` every verdict passed, `1` some verdict failed, `2` the
//! input was malformed or out of bounds.

mod commands;
mod input;
mod report;
mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subord::algebra::{DEFAULT_MAX_ATOMS, HARD_MAX_ATOMS};
use subord::frame::{DEFAULT_MAX_POINTS, MAX_FRAME_POINTS};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "subord", version, about = "Subordination algebras, their duals and their logics")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Bounds and output settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest accepted algebra, in atoms.
    #[arg(long, global = true, env = "SUBORD_MAX_ATOMS", default_value_t = DEFAULT_MAX_ATOMS, value_parser = bounded::<HARD_MAX_ATOMS>)]
    pub max_atoms: usize,
    /// Largest accepted frame, in points.
    #[arg(long, global = true, env = "SUBORD_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS, value_parser = bounded::<MAX_FRAME_POINTS>)]
    pub max_points: usize,
    /// Exception bound for clopen valuations on `ω⁺`.
    #[arg(long, global = true, env = "SUBORD_K", default_value_t = 6, value_parser = bounded::<16>)]
    pub k: usize,
    /// Seed for randomised families.
    #[arg(long, global = true, env = "SUBORD_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "SUBORD_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn bounded<const MAX: usize>(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (1..=MAX).contains(&n) {
        Ok(n)
    } else {
        Err(format!("must lie in 1..={MAX}"))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    Check(commands::check::CheckArgs),
    Dualize(commands::dualize::DualizeArgs),
    Quotient(commands::build::QuotientArgs),
    Product(commands::build::ProductArgs),
    Modalize(commands::build::ModalizeArgs),
    Validate(commands::validate::ValidateArgs),
    Correspond(commands::correspond::CorrespondArgs),
    Omega(commands::omega::OmegaArgs),
    Examples(commands::examples::ExamplesArgs),
    /// List the subcommands with the library operations each one reaches.
    Commands,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] subord::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use subord::Error::*;
        match self {
            CliError::Library(NotCongruence { .. } | NotMorphism { .. } | Hypothesis(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn run(cli: &Cli) -> CliResult<Report> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Check(a) => commands::check::run(a, cfg),
        Command::Dualize(a) => commands::dualize::run(a, cfg),
        Command::Quotient(a) => commands::build::run_quotient(a, cfg),
        Command::Product(a) => commands::build::run_product(a, cfg),
        Command::Modalize(a) => commands::build::run_modalize(a, cfg),
        Command::Validate(a) => commands::validate::run(a, cfg),
        Command::Correspond(a) => commands::correspond::run(a, cfg),
        Command::Omega(a) => commands::omega::run(a, cfg),
        Command::Examples(a) => commands::examples::run(a, cfg),
        Command::Commands => Ok(table::report()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.config.format));
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            match cli.config.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    let body = serde_json::json!({ "status": "error", "error": e.to_string() });
                    println!("{}", serde_json::to_string_pretty(&body).expect("plain JSON"));
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
