//! `ltim`: solve, reduce, verify, analyze and generate L-tree and Intermezzo
//! instances.
//!
//! Exit codes: 0 feasible/ok/valid, 1 infeasible/invalid, 2 resource limit
//! hit, 64 usage error, 65 unreadable or invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ltim", version, about = "L-tree recognition and Intermezzo ordering workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide an instance and print FEASIBLE with a witness, INFEASIBLE or
    /// RESOURCE-EXCEEDED.
    Solve(SolveArgs),
    /// Apply a reduction, writing the target instance and a `.map` sidecar.
    Reduce(ReduceArgs),
    /// Check an ordering against an instance.
    Verify { kind: Kind, instance: PathBuf, order: PathBuf },
    /// Print structural parameters of an instance.
    Analyze {
        file: PathBuf,
        /// Overrides detection by file extension.
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Generate a seeded instance.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ltree,
    Intermezzo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Auto,
    Dp,
    Backtrack,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub kind: Kind,
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    pub engine: Engine,
    /// Search node budget for backtracking.
    #[arg(long, default_value_t = ltree_intermezzo::recognition::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest DP table the solver may allocate.
    #[arg(long, default_value_t = ltree_intermezzo::dp::DEFAULT_STATE_CAP)]
    pub state_cap: u128,
    /// Ignore the given root and try every start vertex (ltree only).
    #[arg(long)]
    pub unrooted: bool,
    /// Append a `# stats` block of key=value lines.
    #[arg(long)]
    pub stats: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Sat2ltree,
    Ltree2gim,
    Gim2ltree,
    Gim2im,
    Mcp2gim,
    Root2unroot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Height,
    Width,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    pub reduction: Reduction,
    pub input: PathBuf,
    pub output: PathBuf,
    /// Which separator triple ltree2gim adds.
    #[arg(long, value_enum, default_value_t = VariantArg::Height)]
    pub variant: VariantArg,
    /// Encode precedence pairs as triples with one guard element (mcp2gim).
    #[arg(long)]
    pub lower_pairs: bool,
}

#[derive(Subcommand, Debug)]
pub enum Generator {
    /// The branch family with rightmost-neighbor chords between branches.
    Fig4 {
        #[arg(long)]
        t: usize,
        out: Option<PathBuf>,
    },
    /// Random 3-CNF in DIMACS format.
    Cnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        out: Option<PathBuf>,
    },
    /// Random multicolor graph.
    Mcp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        out: Option<PathBuf>,
    },
    /// Random general Intermezzo instance of bounded width.
    Gim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        out: Option<PathBuf>,
    },
    /// Random rooted spanning tree with chords.
    Ltree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        chords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only ancestor-descendant chords.
        #[arg(long)]
        hookfree: bool,
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("ltim: {e}");
            ExitCode::from(e.code())
        }
    }
}
