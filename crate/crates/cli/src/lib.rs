//! Batch front-end over `giantscope-core`: subcommands for simulation,
//! exact enumeration, rate-function sweeps, phase diagrams, variational
//! checks and critical-window studies. Emits CSV/JSON (with a full
//! parameter echo in every file) and optional static SVG figures.
//!
//! Exit codes: 0 success, 2 validation error, 1 internal check failure
//! (for example a transcendental solve disagreeing with its grid-scan
//! twin).

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod harness;
pub mod jsonio;
pub mod meta;
pub mod stats;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use error::CliError;

pub const TOOL_NAME: &str = "giantscope";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Worker-count cap honoured by all parallel sections.
pub const THREADS_ENV: &str = "GIANTSCOPE_THREADS";

#[derive(Parser, Debug)]
#[command(name = TOOL_NAME, version, about = "connected components of sparse random graphs: simulation, exact laws, deviation rates")]
pub struct Cli {
    /// Optional key=value defaults file; explicit flags always win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Assert that this invocation consumes no randomness
    #[arg(long, global = true)]
    pub seedless: bool,

    /// Directory for output files
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,

    /// Also render SVG figures next to the data files
    #[arg(long, global = true)]
    pub svg: bool,

    /// Solver tolerance override for transcendental equations
    #[arg(long, global = true, value_name = "TOL")]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monte Carlo over the saturation process (or the direct pair sampler)
    Simulate(commands::simulate::Args),
    /// Exact joint component law for small n, exported as JSON
    Exact(commands::exact::Args),
    /// Evaluate a named rate function over a grid, exported as CSV
    Rates(commands::rates::Args),
    /// Phase points and count-rate curves for a list of intensities
    Phase(commands::phase::Args),
    /// Optimal trajectories with quadrature cross-check reports
    Traj(commands::traj::Args),
    /// Critical-window limit process Monte Carlo plus rate curves
    Critical(commands::critical::Args),
    /// Empirical fluctuation moments against the Gaussian limit parameters
    CltCheck(commands::clt_check::Args),
    /// Largest-component rate curve for one intensity
    BetaLdp(commands::beta_ldp::Args),
}

/// Parse argv (with config-file expansion) and run. Returns the process
/// exit code.
pub fn run<I, T>(argv: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = config::expand_config(argv)?;
    let cli = Cli::try_parse_from(argv).map_err(CliError::Usage)?;
    init_thread_pool();
    dispatch(cli)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    std::fs::create_dir_all(&cli.out)
        .map_err(|e| CliError::validation(format!("cannot create output dir: {e}")))?;
    match &cli.command {
        Command::Simulate(args) => commands::simulate::run(&cli, args),
        Command::Exact(args) => commands::exact::run(&cli, args),
        Command::Rates(args) => commands::rates::run(&cli, args),
        Command::Phase(args) => commands::phase::run(&cli, args),
        Command::Traj(args) => commands::traj::run(&cli, args),
        Command::Critical(args) => commands::critical::run(&cli, args),
        Command::CltCheck(args) => commands::clt_check::run(&cli, args),
        Command::BetaLdp(args) => commands::beta_ldp::run(&cli, args),
    }
}

/// Build the global rayon pool honouring the thread cap; later calls keep
/// the first pool (relevant only when embedding `run` in one process).
fn init_thread_pool() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// Reject `--seedless` on commands that consume randomness.
pub(crate) fn forbid_seedless(cli: &Cli) -> Result<(), CliError> {
    if cli.seedless {
        return Err(CliError::validation(
            "--seedless given, but this subcommand draws random numbers",
        ));
    }
    Ok(())
}
