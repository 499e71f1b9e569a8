use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod failure;

#[derive(Parser)]
#[command(name = "enriched-ph")]
#[command(about = "Incarnations of data sets, equivariant operators and bigraded persistent homology")]
#[command(version)]
struct Cli {
    /// Accept data sets with no measurements (their pseudometric is zero)
    #[arg(long, global = true)]
    allow_empty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the pseudometric d_Φ of a data set as CSV
    Metric {
        dataset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report kind, blocks, a basis and the dimension of an incarnation
    Analyze {
        incarnation: PathBuf,
        /// Also write the Grothendieck graph as JSON
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Also write the Grothendieck graph as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Bigraded persistent homology of a measurement, or the PH functor of an incarnation
    Ph {
        /// A data set or an incarnation
        input: PathBuf,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, short, default_value_t = 1)]
        degree: usize,
        #[arg(long, short, default_value_t = 2)]
        prime: u32,
        /// Grid JSON; `-` for stdout (the default output)
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        grid: Option<PathBuf>,
        /// Include the ranks of the structure maps in the grid JSON
        #[arg(long)]
        maps: bool,
        /// Slice barcodes as CSV, one block per grid value of r; `-` for stdout
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        barcodes: Option<PathBuf>,
        /// Directory receiving one JSON file per edge of the Grothendieck graph
        #[arg(long)]
        functor: Option<PathBuf>,
        /// Grothendieck graph as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Equivariant operators
    Seo {
        #[command(subcommand)]
        command: SeoCommand,
    },
    /// Certified bounds on the interleaving distance of two measurements
    Interleave {
        dataset: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long, short, default_value_t = 1)]
        degree: usize,
        #[arg(long, short, default_value_t = 2)]
        prime: u32,
    },
    /// The universal incarnations (Φ, End_Φ(X)) and (Φ, Aut_Φ(X))
    Ops {
        #[arg(value_enum)]
        which: OpsKind,
        dataset: PathBuf,
    },
    /// Random instance for property harnesses
    #[command(hide = true)]
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "dataset")]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum SeoCommand {
    /// Validate (alpha, T) between two incarnations
    Check {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        seo: PathBuf,
    },
    /// Extend alpha given on a basis (the keys of `alpha`) to an operator
    Extend {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        seo: PathBuf,
        #[arg(long, value_enum, default_value = "seo")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a point map realizing a function of data sets or an operator
    Realize {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// `{"phi": "psi", ..}`, or an operator file when both inputs are incarnations
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Split an incarnation into the coproduct of its blocks
    Decompose {
        /// An incarnation, or a data set taken with the trivial monoid
        incarnation: PathBuf,
        /// Where to write the coproduct incarnation
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Change units along a value map
    Units {
        /// A data set or an incarnation
        input: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Seo,
    Meo,
    Geo,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpsKind {
    End,
    Aut,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Dataset,
    Incarnation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}
