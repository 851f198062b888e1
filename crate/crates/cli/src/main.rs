//! `cyd`: builds, simplifies and counts the DGA of a marked graph diagram.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 failed mathematical check.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use cy_core::diagram::{Direction, Move, Side, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use commands::{CountOptions, MoveOptions, Report};

#[derive(Parser)]
#[command(name = "cyd", version, about = "DGA invariants of marked graph diagrams")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Step budget for simplification and the admissibility search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build the DGA of a diagram, crossing table or DGA file.
    Build {
        input: PathBuf,
        /// Check that the differential squares to zero.
        #[arg(long)]
        check_d2: bool,
        /// Write the DGA here instead of into the report.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Cancel generator pairs until none are left or the budget runs out.
    Simplify {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print the degree-0 presentation.
    Homology {
        input: PathBuf,
        /// Simplify the DGA first.
        #[arg(long)]
        simplify: bool,
    },
    /// Count ring maps into Z/NZ.
    Augcount {
        input: PathBuf,
        #[arg(long = "mod", value_delimiter = ',', default_value = "3")]
        mods: Vec<u64>,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
        /// Run the oracle even when the enumeration is large.
        #[arg(long)]
        force: bool,
        /// Simplify the DGA first.
        #[arg(long)]
        simplify: bool,
    },
    /// List move sites, or apply one.
    Move {
        input: PathBuf,
        /// Move name: 1, 1', 2, 3, 4, 4', 5, 6, 6', 7 or 8.
        #[arg(long = "move", short = 'm')]
        mv: Move,
        #[arg(long, value_enum, default_value_t = DirArg::Forward)]
        direction: DirArg,
        #[arg(long)]
        list: bool,
        /// Site index; random under the seed when absent.
        #[arg(long)]
        site: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Apply each move at a random site and compare counts.
    Invariance {
        input: PathBuf,
        /// Defaults to every move.
        #[arg(long, value_delimiter = ',')]
        moves: Vec<Move>,
        #[arg(long = "mods", value_delimiter = ',', default_value = "2,3,5")]
        mods: Vec<u64>,
    },
    /// Resolve every vertex to one side.
    Resolve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Try to reduce both resolutions to crossingless diagrams.
    Admissible { input: PathBuf },
}

fn run(cli: Cli) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let simplify = |on: bool| on.then_some(cli.budget);
    match cli.command {
        Command::Build { input, check_d2, out } => commands::build(&input, check_d2, out.as_deref()),
        Command::Simplify { input, out } => commands::simplify(&input, cli.budget, out.as_deref()),
        Command::Homology { input, simplify: s } => commands::homology(&input, simplify(s)),
        Command::Augcount { input, mods, oracle, force, simplify: s } => {
            commands::augcount(&input, &CountOptions { mods, oracle, force, simplify: simplify(s) })
        }
        Command::Move { input, mv, direction, list, site, out } => {
            let direction = match direction {
                DirArg::Forward => Direction::Forward,
                DirArg::Backward => Direction::Backward,
            };
            commands::apply_move(&input, &MoveOptions { mv, direction, list, site, out: out.as_deref() }, &mut rng)
        }
        Command::Invariance { input, moves, mods } => {
            let moves = if moves.is_empty() { Move::ALL.to_vec() } else { moves };
            commands::invariance(&input, &moves, &mods, &mut rng)
        }
        Command::Resolve { input, side } => {
            let sides = match side {
                SideArg::Plus => vec![Side::Plus],
                SideArg::Minus => vec![Side::Minus],
                SideArg::Both => vec![Side::Plus, Side::Minus],
            };
            commands::resolve(&input, &sides)
        }
        Command::Admissible { input } => commands::admissible(&input, cli.budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Format::Text => print!("{}", report.text),
            }
            match report.failure {
                Some(msg) => {
                    eprintln!("check failed: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
