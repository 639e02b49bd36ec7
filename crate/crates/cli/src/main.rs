//! `ucplab`: verification suites, corridor sampling, I₃ scans and the
//! finite-logic search.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a run
//! errors, 2 on usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ucplab_core::Level;

#[derive(Parser, Debug)]
#[command(name = "ucplab", version, about = "Checks for quantum logics with unique conditional probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every property battery for one matrix model.
    Verify(ModelArgs),
    /// Sample corridor points (p, q) as CSV.
    Corridor(CorridorArgs),
    /// Largest I3 operator norm over random orthogonal triples.
    I3(ModelArgs),
    /// Enumerate and classify small block pastings.
    Search(SearchArgs),
    /// Check one finite logic given in the block text format.
    Check(CheckArgs),
    /// Print the octonion unit multiplication table as CSV.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Scalar algebra: R, C, H or O.
    #[arg(long, default_value = "C")]
    algebra: Level,
    /// Matrix size n (O requires 3).
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance (default 1e-9, or 1e-8 for O).
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct CorridorArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Sample diagonal (commuting) configurations only.
    #[arg(long)]
    classical: bool,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 6)]
    max_atoms: usize,
    /// Largest number of blocks.
    #[arg(long, default_value_t = 3)]
    blocks: usize,
    #[arg(long, default_value_t = 3)]
    block_size_min: usize,
    #[arg(long, default_value_t = 6)]
    block_size_max: usize,
    /// JSON-lines output, one record per logic.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct CheckArgs {
    /// Logic file: one `block: a1 a2 ...` line per block.
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct TableArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Corridor(a) => commands::corridor(&a),
        Command::I3(a) => commands::i3(&a),
        Command::Search(a) => commands::search(&a),
        Command::Check(a) => commands::check(&a),
        Command::Table(a) => commands::table(&a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(commands::Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
