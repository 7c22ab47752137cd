use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};

use matroid_lab::poset::DEFAULT_FACE_BUDGET;

mod commands;
mod report;

use report::{Outcome, Report};

/// Invariants of regular matroids and their fiber posets.
///
/// Every command prints a JSON report on standard output and a short summary on
/// standard error. The exit code is 0 when all embedded checks pass, 1 when one
/// fails and 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "matroid-lab", version)]
struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Accepted for compatibility; reports are always JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regularity of a binary matrix by Fano-minor search and by signing.
    Regular {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Integral homology of IR(r, F2) or of a facet list.
    Homology(HomologyArgs),
    /// SL(3, F2) character of the top homology of IR(3, F2).
    Character {
        #[arg(long, default_value_t = 3)]
        ir_rank: usize,
    },
    /// Shortest path inside IR(r, F2) between two matrices' column sets.
    Geodesic {
        #[arg(long)]
        e1: PathBuf,
        #[arg(long)]
        e2: PathBuf,
    },
    /// The rank-5 pair of regular configurations with no regular geodesic.
    Counterexample,
    /// A ball in the graph of IR(2, Z) around the standard basis.
    Tree {
        #[arg(long)]
        depth: usize,
        /// Write the ball as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["ir_rank", "complex"])))]
struct HomologyArgs {
    #[arg(long)]
    ir_rank: Option<usize>,
    /// One facet per line as vertex indices.
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Faces of the 3-skeleton allowed before rank 4 reports b2 and pi1 as inconclusive.
    #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
    face_budget: u128,
    /// Write the Hasse diagram as a DOT graph.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MATROID_LAB_THREADS") {
        let n: usize = v.parse().with_context(|| format!("MATROID_LAB_THREADS={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    configure_threads()?;
    match &cli.command {
        Command::Regular { matrix } => commands::regular(matrix),
        Command::Homology(a) => match (&a.complex, a.ir_rank) {
            (Some(path), _) => commands::homology_complex(path),
            (None, Some(r)) => commands::homology_ir(r, cli.seed, a.face_budget, a.dot.as_deref()),
            (None, None) => unreachable!("clap requires one source"),
        },
        Command::Character { ir_rank } => commands::character(*ir_rank),
        Command::Geodesic { e1, e2 } => commands::geodesic(e1, e2),
        Command::Counterexample => commands::counterexample(),
        Command::Tree { depth, dot } => commands::tree(*depth, dot.as_deref()),
    }
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn emit(v: &serde_json::Value) {
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            eprintln!("{}", outcome.summary);
            for c in &outcome.checks {
                eprintln!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
            }
            let report = Report::new(argv, outcome, start.elapsed());
            emit(&serde_json::to_value(&report).expect("reports serialize"));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = commands::error_code(&e);
            eprintln!("error[{code}]: {e:#}");
            let err = serde_json::json!({ "command": argv, "error": { "code": code, "message": format!("{e:#}") } });
            emit(&err);
            ExitCode::from(2)
        }
    }
}
