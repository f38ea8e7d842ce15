//! `webtrace`: exact web-traces, Kasteleyn determinants and annulus
//! statistics from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser)]
#[command(name = "webtrace", version, about = "Exact web-traces of n-multiwebs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for enumeration and reduction.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the signed determinant with the sum of traces over all multiwebs.
    Verify(VerifyArgs),
    /// Annulus grid tables.
    Annulus(AnnulusArgs),
    /// Reduce rank-3 multiwebs to loop classes.
    Skein(SkeinArgs),
    /// Theta coefficient of a graph on a pair of pants.
    Pants(GraphArg),
    /// Draw multiwebs with probability proportional to their coloring count.
    Sample(SampleArgs),
    /// Faces, punctures and matching count of a graph document.
    Faces(GraphArg),
}

#[derive(Args)]
struct GraphArg {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Rank; defaults to the document's `n`.
    #[arg(long)]
    n: Option<usize>,
    /// identity, random:SEED or file:PATH; defaults to the document's
    /// connection, else identity.
    #[arg(long)]
    connection: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Detz,
    Uv,
    Pgf,
    Means,
    Exponents,
}

#[derive(Args)]
struct AnnulusArgs {
    /// Half-width; must be odd.
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    height: usize,
    #[arg(long, value_enum)]
    what: What,
    /// Largest j and k in the exponent table.
    #[arg(long, default_value_t = 6)]
    max: u32,
}

#[derive(Args)]
struct SkeinArgs {
    #[arg(long)]
    graph: PathBuf,
    /// A single multiweb; without it every 3-multiweb is reduced and summed.
    #[arg(long)]
    multiweb: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global();
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(&a.graph, a.n, a.connection.as_deref()),
        Command::Annulus(a) => commands::annulus(a.m, a.height, a.what, a.max),
        Command::Skein(a) => commands::skein(&a.graph, a.multiweb.as_deref()),
        Command::Pants(a) => commands::pants(&a.graph),
        Command::Sample(a) => commands::sample(&a.graph, a.n, a.count, a.seed),
        Command::Faces(a) => commands::faces(&a.graph),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            eprintln!("time: {} ms", start.elapsed().as_millis());
            if report.matches == Some(false) {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
