use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Kostant positivity for fully commutative permutations via Temperley–Lieb diagrams.
#[derive(Parser, Debug)]
#[command(name = "tlkostant", version)]
struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
    Svg,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// One-line notation, e.g. 3,4,1,2.
    #[arg(long, conflicts_with = "word")]
    pub perm: Option<String>,
    /// Word in simple reflections, e.g. 2,1,3,2.
    #[arg(long)]
    pub word: Option<String>,
    /// Rank; required for the empty word, otherwise inferred.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide Kostant positivity with a certificate.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Append the ASCII diagram to text output.
        #[arg(long)]
        render: bool,
    },
    /// Count tables, recursion checks and ratio tables up to rank n.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Also count by classifying every element and compare.
        #[arg(long)]
        brute: bool,
        /// Largest rank allowed with --brute.
        #[arg(long, default_value_t = tlkostant::enumerate::BRUTE_FORCE_CAP)]
        brute_cap: usize,
        /// With --format csv, emit the ratio table instead of counts.
        #[arg(long)]
        ratios: bool,
    },
    /// Check the classifier against the brute-force oracle in rank n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Largest rank at which negative involutions get a full scan.
        #[arg(long, default_value_t = 5)]
        full_scan_limit: usize,
        /// Write the complete per-involution reports as JSON.
        #[arg(long)]
        full_report: Option<PathBuf>,
    },
    /// Draw the diagram of a fully commutative element.
    Render {
        #[command(flatten)]
        input: Input,
    },
    /// List left, right or two-sided cells with their involutions.
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = commands::Kind::Left)]
        kind: commands::Kind,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().expect("pool is built once");
    }
    let result = match cli.command {
        Command::Classify { input, render } => commands::classify(&input, render, cli.format),
        Command::Enumerate { n, brute, brute_cap, ratios } => commands::enumerate(n, brute, brute_cap, ratios, cli.format),
        Command::Verify { n, full_scan_limit, full_report } => {
            commands::verify(n, full_scan_limit, full_report.as_deref(), cli.format)
        }
        Command::Render { input } => commands::render(&input, cli.format),
        Command::Cells { n, kind } => commands::cells(n, kind, cli.format),
    };
    match result {
        Ok(output) => {
            if let Err(e) = commands::emit(&output.text, cli.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if output.discrepancy {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
