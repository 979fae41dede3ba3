// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use impact_bundles::{Spacing, Tail};

#[derive(Debug, Parser)]
#[command(name = "impact-bundles", version, about = "Impact measures, bundle curves and convergence experiments")]
pub struct Cli {
    /// JSON file with default values for any flag (flags take precedence).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one measure on one function.
    Measure(MeasureArgs),
    /// Evaluate a bundle curve over a theta grid.
    Bundle(BundleArgs),
    /// Turn a citation list into a function spec.
    Ingest(IngestArgs),
    /// Run a family against its limit and report error series.
    Converge(ConvergeArgs),
    /// Run the scenario suite and print the bundle classification.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    I,
    Mu,
    P,
    H,
    G,
    Kosmulski,
    R,
    Polar,
    Ped,
    Mf,
    M,
    /// Raw function values (converge only).
    Function,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    PowerComplement,
    Constants,
    Figure1,
    User,
}

#[derive(Debug, Default, Args)]
pub struct KindOpts {
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Exponent of the Kosmulski curve.
    #[arg(long)]
    pub p: Option<f64>,
    /// Step function threshold for the Mf bundle.
    #[arg(long)]
    pub mf_threshold: Option<f64>,
    #[arg(long)]
    pub mf_low: Option<f64>,
    #[arg(long)]
    pub mf_high: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct GridOpts {
    #[arg(long)]
    pub min: Option<f64>,
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_parser = parse_spacing)]
    pub spacing: Option<Spacing>,
}

#[derive(Debug, Default, Args)]
pub struct OutOpts {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct TolOpts {
    #[arg(long)]
    pub eps_u: Option<f64>,
    #[arg(long)]
    pub pointwise_factor: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Function spec: a file path or inline JSON.
    #[arg(long = "fn")]
    pub function: Option<String>,
    #[command(flatten)]
    pub kind: KindOpts,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Polar angle in radians.
    #[arg(long)]
    pub phi: Option<f64>,
    /// Increasing comparison curve for PED measures: a file path or inline JSON.
    #[arg(long)]
    pub ped_fn: Option<String>,
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    #[arg(long = "fn")]
    pub function: Option<String>,
    #[command(flatten)]
    pub kind: KindOpts,
    #[command(flatten)]
    pub grid: GridOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// CSV of citation counts, one per row; a header row is optional.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Zero-based column holding the counts.
    #[arg(long)]
    pub column: Option<usize>,
    #[arg(long, value_parser = parse_tail)]
    pub tail: Option<Tail>,
    /// Where to write the spec; defaults to the CSV path with a .json extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Constant sequence rule such as 1/n or 2+1/n.
    #[arg(long)]
    pub an: Option<String>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// JSON file with "members": [[n, spec], ...] and "limit": spec.
    #[arg(long)]
    pub user_file: Option<PathBuf>,
    #[command(flatten)]
    pub kind: KindOpts,
    /// Probe each member just above its admissibility boundary.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub boundary_probes: Option<bool>,
    /// Comma-separated increasing indices.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<u64>>,
    #[command(flatten)]
    pub grid: GridOpts,
    #[command(flatten)]
    pub tol: TolOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub tol: TolOpts,
    /// Also write the table and scenario results as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    s.parse().map_err(|e: impact_bundles::Error| e.to_string())
}

fn parse_tail(s: &str) -> Result<Tail, String> {
    s.parse().map_err(|e: impact_bundles::Error| e.to_string())
}
