//! `qcpart` command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or unparsable input, 2 infeasible
//! parameters, 3 size cap exceeded.

mod commands;
mod ranges;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qcpart",
    version,
    about = "Exact minimum-teleportation partitioning of quantum circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition a circuit with the subset dynamic program.
    Partition(PartitionArgs),
    /// Partition by exhaustive enumeration (small circuits only).
    Oracle(OracleArgs),
    /// Run many (circuit, K) combinations and emit CSV.
    Bench(BenchArgs),
    /// Write a generated circuit in .qc format.
    Gen(GenArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Circuit file (.qc, or RevLib .real).
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Generated circuit, `<name>:<size>` (e.g. `qft:8`).
    #[arg(long)]
    pub gen: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: Input,
    /// Number of parts: `3`, `2,4`, or `1..4`.
    #[arg(long)]
    pub parts: String,
    #[arg(long)]
    pub max_part_size: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Include the memo table.
    #[arg(long)]
    pub table: bool,
    /// Include the gate-by-gate execution trace.
    #[arg(long)]
    pub trace: bool,
    /// Split multi-control Toffoli gates into pairwise CNOTs on import.
    #[arg(long)]
    pub decompose_mct: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Lift the default qubit cap.
    #[arg(long)]
    pub force: bool,
    /// Omit wall-clock timings so output is reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
    /// Write the bipartite graph in Graphviz format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub parts: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub decompose_mct: bool,
    /// Also run the dynamic program and report whether costs agree.
    #[arg(long)]
    pub compare_dp: bool,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub circuit: Vec<PathBuf>,
    /// `<name>:<sizes>`, e.g. `qft:4..8`. Repeatable.
    #[arg(long)]
    pub gen: Vec<String>,
    #[arg(long)]
    pub parts: String,
    #[arg(long)]
    pub max_part_size: Option<usize>,
    #[arg(long)]
    pub decompose_mct: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Generator: `qft` or `random`.
    pub name: String,
    #[arg(long)]
    pub qubits: usize,
    /// Gate count for `random` (default 4 per qubit).
    #[arg(long)]
    pub gates: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partition(args) => commands::partition(&args),
        Command::Oracle(args) => commands::oracle(&args),
        Command::Bench(args) => commands::bench(&args),
        Command::Gen(args) => commands::gen(&args),
    };
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
