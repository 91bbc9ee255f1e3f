//! Command-line front end: experiment configs in, machine-readable reports
//! out. Reports go to stdout or `--out`; stderr carries progress. Exit codes
//! are 0 (success), 1 (a check failed), 2 (invalid config or input), and
//! 3 (a resource cap refused the computation).

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

use config::{parse_config, ExperimentConfig, OutputFormat};
use report::Report;

#[derive(Debug)]
pub enum CliError {
    /// A verification or cross-check failed; exit code 1.
    Check(String),
    /// The config or another input is invalid; exit code 2.
    Config(String),
    /// A resource cap refused the computation; exit code 3.
    Cap(String),
    /// Filesystem trouble reading or writing; exit code 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(msg) => write!(f, "check failed: {msg}"),
            CliError::Config(msg) => write!(f, "invalid config: {msg}"),
            CliError::Cap(msg) => write!(f, "resource cap: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<twocopy::Error> for CliError {
    fn from(e: twocopy::Error) -> Self {
        use twocopy::Error as E;
        match e {
            E::CapExceeded { .. } | E::DenseCapExceeded { .. } => CliError::Cap(e.to_string()),
            E::CrossCheckFailed { .. } | E::EigenNoConvergence { .. } => {
                CliError::Check(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twocopy",
    version,
    about = "Multipartite concurrence: exact routes and two-copy measurement simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the concurrence of a pure state by all three routes.
    Compute {
        /// Path to a JSON experiment config.
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report encoding; overrides the config's output_format.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on two-copy amplitude count; refuses larger registers.
        #[arg(long)]
        max_dim_cap: Option<usize>,
    },
    /// Simulate the single-setting two-copy measurement at finite shots.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_dim_cap: Option<usize>,
        /// Worker threads for sampling; results do not depend on this.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the seeded invariant suite and report per-check margins.
    Verify {
        /// Largest number of parties to draw register shapes from.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Random instances to run; 0 passes vacuously.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Harness self-test: corrupt one normalization probe on purpose.
        #[arg(long)]
        negative_control: bool,
    },
}

pub struct Rendered {
    pub text: String,
    pub wrote_file: bool,
    pub exit: u8,
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn pick_format(flag: Option<FormatArg>, config: Option<OutputFormat>) -> OutputFormat {
    match flag {
        Some(FormatArg::Json) => OutputFormat::Json,
        Some(FormatArg::Csv) => OutputFormat::Csv,
        None => config.unwrap_or(OutputFormat::Json),
    }
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

fn deliver(text: String, out: Option<&PathBuf>, exit: u8) -> Result<Rendered, CliError> {
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(Rendered {
        text,
        wrote_file: out.is_some(),
        exit,
    })
}

/// Runs one subcommand to a rendered report. Verification failures render
/// normally but carry exit code 1.
pub fn execute(cli: Cli) -> Result<Rendered, CliError> {
    match cli.command {
        Command::Compute {
            config,
            out,
            format,
            seed,
            max_dim_cap,
        } => {
            let cfg = load_config(&config)?;
            let report = commands::cmd_compute(&cfg, seed, max_dim_cap)?;
            let text = render(&report, pick_format(format, cfg.output_format));
            deliver(text, out.as_ref(), 0)
        }
        Command::Sample {
            config,
            out,
            format,
            seed,
            max_dim_cap,
            threads,
        } => {
            let cfg = load_config(&config)?;
            let report = commands::cmd_sample(&cfg, seed, max_dim_cap, threads)?;
            let text = render(&report, pick_format(format, cfg.output_format));
            deliver(text, out.as_ref(), 0)
        }
        Command::Verify {
            max_n,
            trials,
            seed,
            out,
            format,
            negative_control,
        } => {
            if trials == 0 {
                eprintln!("warning: trials=0, every check passes vacuously");
            }
            let outcome = verify::run_verify(max_n, trials, seed, negative_control)?;
            for check in &outcome.checks {
                eprintln!(
                    "check {}: worst {:.3e} vs tolerance {:.1e} over {} trials -> {}",
                    check.name,
                    check.worst,
                    check.tolerance,
                    check.trials,
                    if check.pass() { "pass" } else { "FAIL" }
                );
            }
            let exit = if outcome.all_pass() { 0 } else { 1 };
            let text = render(&outcome.report(), pick_format(format, None));
            deliver(text, out.as_ref(), exit)
        }
    }
}
