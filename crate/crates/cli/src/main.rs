//! `nvrange`: data-only CLI over the ranging simulator. Each subcommand
//! mirrors one measurement or analysis and emits CSV or JSON for external
//! plotting.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::InstrumentConfig;

/// Exit codes: 0 success, 2 usage/config, 3 physics domain, 4 ambiguity.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Domain(String),
    Ambiguity(String),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Ambiguity(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Config(m) => format!("config error: {m}"),
            CliError::Domain(m) => format!("physics error: {m}"),
            CliError::Ambiguity(m) => format!("ambiguity error: {m}"),
            CliError::Io(e) => format!("io error: {e}"),
        }
    }
}

impl From<nvrange_core::Error> for CliError {
    fn from(e: nvrange_core::Error) -> Self {
        match e {
            nvrange_core::Error::AmbiguityResolution { .. } => CliError::Ambiguity(e.to_string()),
            nvrange_core::Error::InvalidParams(_) => CliError::Config(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser)]
#[command(name = "nvrange", version, about = "Spin-ensemble RF interferometric ranging simulator")]
struct Cli {
    /// Path to a JSON instrument configuration; defaults apply when omitted.
    #[arg(long = "config", global = true)]
    config: Option<std::path::PathBuf>,

    /// RNG seed; overrides the config value.
    #[arg(long = "seed", global = true)]
    seed: Option<u64>,

    /// Output path for the primary result; stdout when omitted.
    #[arg(long = "out", global = true)]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the ODMR spectrum: CSV (frequency_hz, normalized_fluorescence).
    Odmr(OdmrArgs),
    /// Rabi oscillation trace: CSV (time_s, population, normalized_fluorescence).
    Rabi(RabiArgs),
    /// Distance scan of the ranging signal: CSV (distance_m, normalized_signal).
    Scan(ScanArgs),
    /// Headline metrics per pulse number: JSON report.
    Metrics(MetricsArgs),
    /// Time trace plus Allan deviation table: CSV trace and JSON table.
    Track(TrackArgs),
    /// Dual-frequency integer-ambiguity resolution: JSON report.
    Ambiguity(AmbiguityArgs),
}

#[derive(Args)]
struct OdmrArgs {
    /// Sweep start, Hz.
    #[arg(long = "f_min")]
    f_min: f64,
    /// Sweep end, Hz.
    #[arg(long = "f_max")]
    f_max: f64,
    /// Number of sweep points.
    #[arg(long = "points")]
    points: usize,
}

#[derive(Args)]
struct RabiArgs {
    /// Longest RF duration, s.
    #[arg(long = "t_max")]
    t_max: f64,
    /// Number of trace points.
    #[arg(long = "points")]
    points: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// Pulse number N; 0 uses the configured free-form RF duration.
    #[arg(long = "N")]
    n_pi: u32,
    /// Center of the scanned distance window, m.
    #[arg(long = "L_center")]
    l_center: f64,
    /// Width of the scanned distance window, m.
    #[arg(long = "L_span")]
    l_span: f64,
    /// Number of scan points.
    #[arg(long = "points")]
    points: usize,
    /// Sequence repetitions per point; overrides the config value.
    #[arg(long = "repeats")]
    repeats: Option<u64>,
    /// Emit exact means instead of sampled counts.
    #[arg(long = "noise-free")]
    noise_free: bool,
}

#[derive(Args)]
struct MetricsArgs {
    /// Comma-separated pulse numbers, e.g. 1,2,4.
    #[arg(long = "N_list", value_delimiter = ',')]
    n_list: Vec<u32>,
}

#[derive(Args)]
struct TrackArgs {
    /// Total trace duration, s.
    #[arg(long = "duration")]
    duration: f64,
    /// Spacing between trace samples, s.
    #[arg(long = "sample_interval")]
    sample_interval: f64,
    /// Emit exact means instead of sampled counts.
    #[arg(long = "noise-free")]
    noise_free: bool,
    /// Output path for the JSON Allan table; stdout when omitted.
    #[arg(long = "allan_out")]
    allan_out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct AmbiguityArgs {
    /// True target distance, m.
    #[arg(long = "L_true")]
    l_true: f64,
    /// Gaussian phase noise sigma applied to both phases, rad.
    #[arg(long = "phase_noise", default_value_t = 0.0)]
    phase_noise: f64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(path) => InstrumentConfig::load(path)?,
        None => InstrumentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.validate()?;

    match &cli.command {
        Command::Odmr(args) => commands::odmr(&config, args, cli.out.as_deref()),
        Command::Rabi(args) => commands::rabi(&config, args, cli.out.as_deref()),
        Command::Scan(args) => commands::scan(&config, args, cli.out.as_deref()),
        Command::Metrics(args) => commands::metrics(&config, args, cli.out.as_deref()),
        Command::Track(args) => commands::track(&config, args, cli.out.as_deref()),
        Command::Ambiguity(args) => commands::ambiguity(&config, args, cli.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.message());
            ExitCode::from(err.code())
        }
    }
}
