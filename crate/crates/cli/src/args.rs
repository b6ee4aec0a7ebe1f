use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "trajrecon", version, about = "High-order trajectory reconstruction and kinematics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct every track and write the piecewise polynomials as JSON.
    Reconstruct(FileArgs),
    /// Position, velocity and acceleration at Gauss points of every cell.
    Kinematics(FileArgs),
    /// Arc length of every track.
    Length(FileArgs),
    /// Average speed, displacement and mean finite-difference velocities.
    Summary(FileArgs),
    /// Convergence study on a synthetic case.
    Convergence(StudyArgs),
    /// Linear linking against cubic reconstruction on a synthetic case.
    Compare(StudyArgs),
    /// Backward Runge-Kutta integration of the reconstructed velocity.
    Backtrace(BacktraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    #[value(name = "generic_csv", alias = "generic")]
    GenericCsv,
    #[value(name = "trackmate_csv", alias = "trackmate")]
    TrackmateCsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimiterArg {
    None,
    Cweno,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StencilArg {
    Wide,
    Compact,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Polynomial stencil layout.
    #[arg(long, value_enum, default_value = "wide")]
    pub stencil: StencilArg,

    /// Run on a single thread.
    #[arg(long)]
    pub sequential: bool,

    /// CWENO regularization.
    #[arg(long)]
    pub cweno_eps: Option<f64>,

    /// CWENO exponent.
    #[arg(long)]
    pub cweno_r: Option<i32>,

    /// CWENO linear weight of the central polynomial.
    #[arg(long)]
    pub cweno_lambda0: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct FileArgs {
    /// Track file.
    #[arg(short, long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "generic_csv")]
    pub format: FormatArg,

    /// Reconstruction degree.
    #[arg(short = 'n', long, default_value_t = 3)]
    pub degree: usize,

    #[arg(long, value_enum, default_value = "cweno")]
    pub limiter: LimiterArg,

    /// Geometry degree for arc length (capped at 3); defaults to the
    /// reconstruction degree.
    #[arg(long)]
    pub geom_degree: Option<usize>,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct StudyArgs {
    /// Synthetic case: conv3d or tanhcos2d.
    #[arg(long)]
    pub case: Option<String>,

    /// Sample counts per mesh, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub meshes: Option<Vec<usize>>,

    /// Reconstruction degrees, comma separated (convergence only).
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,

    /// Limiter for the high-order reconstructions.
    #[arg(long, value_enum, default_value = "none")]
    pub limiter: LimiterArg,

    /// Apply the acceptance tolerances and exit with status 2 on failure.
    #[arg(long)]
    pub check: bool,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct BacktraceArgs {
    /// Track file; a synthetic case is used when omitted.
    #[arg(short, long, conflicts_with = "case")]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "generic_csv")]
    pub format: FormatArg,

    /// Synthetic case (default tanhcos2d when no input is given).
    #[arg(long)]
    pub case: Option<String>,

    /// Samples of the synthetic case.
    #[arg(long, value_delimiter = ',')]
    pub meshes: Option<Vec<usize>>,

    /// Degree of the high-order reconstruction.
    #[arg(short = 'n', long, default_value_t = 3)]
    pub degree: usize,

    /// Limiter for the high-order reconstruction.
    #[arg(long, value_enum, default_value = "none")]
    pub limiter: LimiterArg,

    /// Backward pseudo-time step.
    #[arg(long, default_value_t = 0.5)]
    pub dtau: f64,

    /// Require RK4 with the high-order reconstruction to beat RK2 with linear
    /// linking in every norm; exit with status 2 otherwise.
    #[arg(long)]
    pub check: bool,

    #[command(flatten)]
    pub common: Common,
}
