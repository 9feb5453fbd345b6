use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lincbo::AlgorithmId;

#[derive(Parser, Debug)]
#[command(
    name = "lincbo",
    version,
    about = "Duquenne-Guigues basis of formal contexts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the implication basis of a context.
    Basis(BasisArgs),
    /// List or count the intents of a context.
    Intents(IntentsArgs),
    /// Generate a synthetic context in CXT format.
    Gen(GenArgs),
    /// Binarize a CSV table into a CXT context.
    Scale(ScaleArgs),
    /// Time basis algorithms on one or more contexts.
    Bench(BenchArgs),
    /// Check that a basis is sound, complete and non-redundant.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Cxt,
    Fimi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Context file, or `-` for standard input.
    pub input: PathBuf,

    /// Input format; guessed from the file extension when omitted
    /// (`.dat`, `.fimi` and `.txt` are FIMI, anything else CXT).
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// lincbo, lincbo1, nc1, nc2, nc3, ncp1, ncp2 or ncp3.
    #[arg(short, long, default_value = "lincbo")]
    pub algorithm: AlgorithmId,

    #[arg(short, long, value_enum, default_value = "text")]
    pub format: OutputFormat,

    /// Leave premise attributes out of the conclusions.
    #[arg(long)]
    pub reduced_rhs: bool,
}

#[derive(Args, Debug)]
pub struct IntentsArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Print only the number of intents.
    #[arg(short, long)]
    pub count: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("kind").required(true))]
pub struct GenArgs {
    /// n×n context with x ≠ y incidence.
    #[arg(long, value_name = "N", group = "kind")]
    pub contranominal: Option<usize>,

    /// Random context with a fixed number of attributes per object.
    #[arg(long, group = "kind", requires_all = ["objects", "attributes", "density"])]
    pub random: bool,

    #[arg(long)]
    pub objects: Option<usize>,

    #[arg(long)]
    pub attributes: Option<usize>,

    /// Attributes per object.
    #[arg(long)]
    pub density: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScaleArgs {
    /// CSV file, or `-` for standard input.
    pub csv: PathBuf,

    /// nom, ord or inter.
    #[arg(short, long)]
    pub method: lincbo::ScalingMethod,

    /// Bins per numeric feature.
    #[arg(short, long)]
    pub k: usize,

    /// The first row holds data, not column names.
    #[arg(long)]
    pub no_header: bool,

    /// Comma-separated column kinds (`n` numeric, `c` categorical);
    /// inferred when omitted.
    #[arg(long, value_delimiter = ',')]
    pub kinds: Option<Vec<lincbo::scaling::ColumnKind>>,

    /// Drop rows containing a missing value (`?` or empty).
    #[arg(long)]
    pub drop_missing: bool,

    /// Drop attributes shared by all objects.
    #[arg(long)]
    pub remove_full_columns: bool,

    #[arg(short, long)]
    pub out: Option<PathBuf>,

    /// Write the cutpoints and attribute names as JSON.
    #[arg(long, value_name = "FILE")]
    pub cutpoints: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Context files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,

    /// Comma-separated algorithm names.
    #[arg(
        short,
        long,
        value_delimiter = ',',
        default_value = "lincbo,lincbo1,ncp2"
    )]
    pub algorithms: Vec<AlgorithmId>,

    /// Runs per (dataset, algorithm); the mean is reported.
    #[arg(short, long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeat: u32,

    #[arg(short, long, value_enum, default_value = "csv")]
    pub format: TableFormat,

    /// Number of (dataset, algorithm) pairs timed concurrently.
    #[arg(short, long, env = "LINCBO_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Corrupt the counts of one algorithm to exercise the agreement check.
    #[arg(long, hide = true)]
    pub inject_fault: Option<AlgorithmId>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Basis in the text or JSON form written by `basis`.
    pub basis: PathBuf,

    /// Largest attribute count for the exhaustive checks (at most 20).
    #[arg(long, default_value_t = 15)]
    pub limit: usize,
}
