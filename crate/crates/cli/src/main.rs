use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Failure;

#[derive(Parser, Debug)]
#[command(name = "evencycle", version, about = "Even-cycle detection and listing in sparse graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Edge-list file: one `u v` pair per line, optional `n m` header, `#` comments.
    #[arg(long)]
    input: PathBuf,
    /// Half the cycle length.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report one 2k-cycle, or none.
    Detect(InputArgs),
    /// List every 2k-cycle.
    List {
        #[command(flatten)]
        input: InputArgs,
        /// Per-cycle failure probability (e.g. 1e-9 or 1/1000).
        #[arg(long)]
        epsilon: Option<String>,
        /// Degree threshold override.
        #[arg(long)]
        delta: Option<u64>,
        /// Abort once this many work units are spent.
        #[arg(long)]
        budget: Option<u64>,
        /// Use exhaustive enumeration instead of the randomized search.
        #[arg(long)]
        oracle: bool,
    },
    /// Scaling benchmark on random sparse graphs.
    Bench {
        /// Comma-separated edge counts.
        #[arg(long, default_value = "4096,8192,16384,32768,65536,131072")]
        sizes: String,
        /// Comma-separated generator seeds.
        #[arg(long, default_value = "1")]
        seeds: String,
        #[arg(long, default_value_t = 4)]
        avg_degree: u32,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Layered degree decomposition and its walk-count inequalities.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Cycle counts on random bipartite graphs against supersaturation bounds.
    Supersat {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        /// Edge probability.
        #[arg(long, conflicts_with = "edges")]
        p: Option<f64>,
        /// Exact edge count.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Solve and certify the 36 hexagon-case linear programs.
    LpVerify {
        /// Upper end of the degree-exponent box (default 2/5).
        #[arg(long)]
        degree_cap: Option<String>,
        /// Print dual multipliers for every case.
        #[arg(long)]
        certificates: bool,
    },
}

fn run(cli: Cli) -> Result<report::Output, Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::input(format!("--threads {t}: {e}")))?;
    }
    let ctx = commands::Context { timing: cli.timing };
    match cli.command {
        Command::Detect(a) => commands::detect(&ctx, &a),
        Command::List {
            input,
            epsilon,
            delta,
            budget,
            oracle,
        } => commands::list(&ctx, &input, epsilon.as_deref(), delta, budget, oracle),
        Command::Bench {
            sizes,
            seeds,
            avg_degree,
            k,
            epsilon,
        } => commands::bench(&ctx, &sizes, &seeds, avg_degree, k, epsilon.as_deref()),
        Command::Decompose { input, k } => commands::decompose(&ctx, &input, k),
        Command::Supersat {
            left,
            right,
            p,
            edges,
            k,
            trials,
            seed,
            budget,
        } => commands::supersat(&ctx, left, right, p, edges, k, trials, seed, budget),
        Command::LpVerify { degree_cap, certificates } => commands::lp_verify(&ctx, degree_cap.as_deref(), certificates),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli).and_then(|out| out.emit(format)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
