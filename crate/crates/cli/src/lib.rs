//! Command-line front end: parameter conversion, evolution traces, distance
//! curves, analysis queries and figure data, all written as CSV.
//!
//! Exit codes: 0 success, 1 runtime or domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

mod commands;
pub mod config;
pub mod csv;
pub mod figure;

pub use commands::CliError;

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "UNRUH_PROBE_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "unruh-probe", version, about = "Inertial vs accelerated two-level detector: dynamics and state discrimination")]
pub struct Cli {
    /// Flat `key = value` file mirroring flag names; flags override it
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between acceleration, temperature and thermal parameter
    Params(ParamsArgs),
    /// Bloch-vector trajectory of a single probe
    Evolve(EvolveArgs),
    /// Trace distance and Helstrom error probability versus time
    Distance(DistanceArgs),
    /// Zero crossings, kinks, maxima and the entanglement threshold
    Analyze(AnalyzeArgs),
    /// Write the data behind figures 1-3
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Decimal digits in CSV values
    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    /// Add a generation timestamp to the header
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
#[command(group(ArgGroup::new("input").required(true).args(["a", "temperature", "n"])))]
pub struct ParamsArgs {
    /// Proper acceleration
    #[arg(long)]
    pub a: Option<f64>,

    /// Unruh temperature
    #[arg(long = "T", id = "temperature", value_name = "T")]
    pub temperature: Option<f64>,

    /// Thermal parameter n = 1 + 2 N_U
    #[arg(long)]
    pub n: Option<f64>,

    /// Level spacing
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,

    /// Inertial spontaneous emission rate
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct EvolveArgs {
    /// Initial state angle, r(0) = (sin θ, 0, cos θ)
    #[arg(long)]
    pub theta: f64,

    #[arg(long)]
    pub n: f64,

    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,

    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,

    /// Final time in units of 1/γ₀
    #[arg(long, default_value_t = 3.0)]
    pub tau_max: f64,

    #[arg(long, default_value_t = 301)]
    pub points: usize,

    /// Append the max deviation from an RK4 integration with this many steps
    #[arg(long, value_name = "STEPS")]
    pub oracle: Option<usize>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Single,
    Bipartite,
}

/// Initial state of the probe (single) or probe plus ancilla (bipartite).
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Single-probe initial angle
    #[arg(long)]
    pub theta: Option<f64>,

    /// Werner parameter, c1 = -c2 = c3 = c
    #[arg(long, conflicts_with_all = ["c1", "c2", "c3"])]
    pub werner: Option<f64>,

    #[arg(long, requires_all = ["c2", "c3"])]
    pub c1: Option<f64>,

    #[arg(long, requires_all = ["c1", "c3"])]
    pub c2: Option<f64>,

    #[arg(long, requires_all = ["c1", "c2"])]
    pub c3: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct DistanceArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,

    #[command(flatten)]
    pub state: StateArgs,

    #[arg(long)]
    pub n: f64,

    /// Final time in units of 1/γ₀
    #[arg(long, default_value_t = 3.0)]
    pub tau_max: f64,

    #[arg(long, default_value_t = 301)]
    pub points: usize,

    /// Require the normalized column (error when n = 1)
    #[arg(long)]
    pub normalized: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Zero,
    Kink,
    Max,
    Threshold,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub what: What,

    #[command(flatten)]
    pub state: StateArgs,

    #[arg(long)]
    pub n: f64,

    /// Lower end of the search interval in γ₀τ
    #[arg(long, default_value_t = 1e-6)]
    pub tau_min: f64,

    /// Upper end of the search interval in γ₀τ
    #[arg(long, default_value_t = 50.0)]
    pub tau_max: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,

    /// Output directory, created if missing
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    #[arg(long, default_value_t = 10.0)]
    pub n: f64,

    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    #[arg(long)]
    pub stamp: bool,
}

/// Builds the clap command, including per-subcommand settings.
pub fn command() -> clap::Command {
    Cli::command()
}

/// Runs the tool on `args` (including the program name). `env_config` is the
/// value of [`CONFIG_ENV`], if set. Returns the process exit code.
pub fn run<I, T>(args: I, env_config: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv = match config::merge_config(argv, env_config) {
        Ok(argv) => argv,
        Err(e) => return report(e, stderr),
    };

    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return 2;
        }
    };

    match commands::dispatch(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => report(e, stderr),
    }
}

fn report(e: CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    e.exit_code()
}
