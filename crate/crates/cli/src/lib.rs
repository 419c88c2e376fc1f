//! Command-line front end: evolve the system, compute discords along the
//! three routes, run monogamy sweeps and spectra, and emit figure datasets.
//!
//! All numeric output uses 17-significant-digit scientific notation so that
//! identical configurations produce byte-identical files.

use std::path::PathBuf;

pub mod angle;
pub mod commands;
pub mod config;
pub mod figures;
pub mod output;

pub use commands::run;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] jc_gqd::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "jc-gqd",
    version,
    about = "Geometric quantum discord of a Jaynes-Cummings atom, an isolated atom and a cavity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of the four basis populations |x1|²..|x4|²
    Evolve(EvolveArgs),
    /// Discord of the chosen bipartitions along the evolution
    Discord(DiscordArgs),
    /// Monogamy residuals over a parameter grid, with violation checking
    Monogamy(MonogamyArgs),
    /// Power spectrum of the total-system discord plus peak detection
    Spectrum(SpectrumArgs),
    /// Multi-curve datasets for the standard figures F1-F5
    Figure(FigureArgs),
}

/// Flags shared by every subcommand; unset values fall back to the config
/// file (if given) and then to built-in defaults.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Initial mixing angle, in radians or as a fraction like "pi/6"
    #[arg(long)]
    pub alpha: Option<String>,

    /// Initial cavity Fock number
    #[arg(long)]
    pub n: Option<u32>,

    /// Atom-cavity coupling rate (must be positive)
    #[arg(long)]
    pub g: Option<f64>,

    /// Cavity frequency; the atomic frequency is locked to it (resonance)
    #[arg(long)]
    pub nu: Option<f64>,

    /// End of the time window, in units of 1/g
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,

    /// Number of uniformly spaced samples (endpoints included)
    #[arg(long)]
    pub samples: Option<usize>,

    /// Output file path
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Output format for tabular data
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Plain-text key=value configuration file; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Which bipartition(s) to compute
    #[arg(long, value_enum)]
    pub which: Option<WhichArg>,

    /// Which computation route(s) to run
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
}

#[derive(Debug, Args)]
pub struct MonogamyArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Which measured side(s) to evaluate
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,

    /// Sweep the standard grid alpha in {0, pi/12, pi/6, pi/4},
    /// n in {0, 1, 3, 5} instead of the single configured point
    #[arg(long)]
    pub standard_grid: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Peak detection threshold as a fraction of the tallest peak
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure to reproduce
    #[arg(value_enum)]
    pub id: figures::FigureId,

    /// Initial cavity Fock number variant
    #[arg(long, value_enum, default_value = "n3")]
    pub variant: figures::Variant,

    /// Also write a gnuplot script next to the dataset
    #[arg(long)]
    pub gnuplot: bool,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Ab,
    Ac,
    Bc,
    Abc,
    #[value(name = "b-ac", alias = "b_ac")]
    BAc,
    Ba,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Closed,
    Pipeline,
    Minimize,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    A,
    B,
    Both,
}
