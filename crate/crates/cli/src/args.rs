use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "intmat", version, about = "Exact counts, sampling and limiting densities for random integer matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker count for counters and samplers (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyArg {
    Singular,
    IntegerEig,
    RealEig,
    LambdaEig,
    Always,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts of matrices with a property.
    Count(CountArgs),
    /// Monte Carlo probability estimate.
    Estimate(EstimateArgs),
    /// Rescaled eigenvalue histogram of 2x2 matrices.
    Hist(HistArgs),
    /// Limiting densities U_Z and U_R on a grid.
    Curve(CurveArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Theory-versus-data convergence report (JSON).
    Report(ReportArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub property: PropertyArg,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, conflicts_with = "k_grid", required_unless_present = "k_grid")]
    pub k: Option<u64>,
    /// Comma-separated entry bounds.
    #[arg(long, value_delimiter = ',')]
    pub k_grid: Option<Vec<u64>>,
    /// Eigenvalue for `lambda-eig`.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<i64>,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub property: PropertyArg,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Master seed; required so that every published number is reproducible.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Integer,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceArg {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizerArg {
    /// Half the number of eigenvalue records (area exactly 2).
    HalfMass,
    /// The number of matrices with an integer eigenvalue.
    IntegerCount,
}

#[derive(Debug, Args, Serialize)]
pub struct HistArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long, value_enum)]
    pub source: SourceArg,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Number of bins across [-2, 2].
    #[arg(long, default_value_t = 100, conflicts_with = "bin_width")]
    pub bins: usize,
    #[arg(long)]
    pub bin_width: Option<f64>,
    #[arg(long, value_enum, default_value_t = NormalizerArg::HalfMass)]
    pub normalizer: NormalizerArg,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    /// Grid step in δ; must divide 4.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identity,
    Gershgorin,
    Oracle,
    Curves,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Matrix dimension for the randomized suites.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Entry bound for the randomized suites.
    #[arg(long, default_value_t = 10)]
    pub k: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Required by the randomized suites.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest k for the oracle sweep.
    #[arg(long, default_value_t = 15)]
    pub k_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetArg {
    Singular,
    IntegerEig,
    Histogram,
}

#[derive(Debug, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, value_enum)]
    pub target: TargetArg,
    /// Comma-separated, strictly increasing entry bounds.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k_grid: Vec<u64>,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Histogram target curve: u_z (exact histograms) or u_r (sampled).
    #[arg(long, value_enum, default_value_t = CurveArg::UZ)]
    pub curve: CurveArg,
    /// Samples per k for sampled histograms.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum CurveArg {
    #[value(name = "u_z", alias = "uz")]
    #[serde(rename = "u_z")]
    UZ,
    #[value(name = "u_r", alias = "ur")]
    #[serde(rename = "u_r")]
    UR,
}
