//! Command-line front end for `quotdeg-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns everything
//! the process should print together with its exit code, so the binary and
//! the tests share one code path.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quotdeg_core::vafa::DEFAULT_TOLERANCE;
use quotdeg_core::{Execution, NumericConfig};

pub mod commands;
pub mod report;
pub mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "quotdeg",
    version,
    about = "Degrees of Quot schemes and their Schubert subvarieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree of a Quot scheme or of one of its Schubert subvarieties.
    Degree(DegreeArgs),
    /// Intersection number of pulled-back Chern classes.
    Correlator(CorrelatorArgs),
    /// Degrees of K^q_{m,p} for q = 0..=max-q.
    Table(TableArgs),
    /// List the maximal chains below an index.
    Chains(ChainsArgs),
    /// Cross-check every method and identity on a range of small cases.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Working precision in bits for the fixed-point sum.
    #[arg(long, env = "QUOTDEG_PRECISION", default_value_t = 53,
          value_parser = clap::value_parser!(u32).range(1..=1 << 16))]
    pub precision: u32,
    /// Largest accepted distance from an integer.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Disable multithreading.
    #[arg(long)]
    pub sequential: bool,
}

impl Common {
    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    pub fn numeric(&self) -> NumericConfig {
        NumericConfig {
            precision: self.precision,
            tolerance: self.tolerance,
            execution: self.execution(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Chain,
    Recurrence,
    Vi,
    All,
}

impl Method {
    pub fn expand(self) -> &'static [Method] {
        match self {
            Method::Chain => &[Method::Chain],
            Method::Recurrence => &[Method::Recurrence],
            Method::Vi => &[Method::Vi],
            Method::All => &[Method::Chain, Method::Recurrence, Method::Vi],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Chain => "chain",
            Method::Recurrence => "recurrence",
            Method::Vi => "vi",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DegreeArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Degree of the maps; without --i this selects the whole Quot scheme.
    #[arg(long)]
    pub q: Option<u32>,
    /// Column set i_1 < ... < i_m, comma separated.
    #[arg(long, requires_all = ["m", "p"])]
    pub i: Option<String>,
    /// Offset of the Schubert symbol (i; d).
    #[arg(long, requires = "i")]
    pub d: Option<u32>,
    /// Modulus n = m + p, for use with --alpha.
    #[arg(long, requires = "alpha")]
    pub n: Option<u32>,
    /// Composite index, comma separated.
    #[arg(long, requires = "n", conflicts_with_all = ["m", "p", "i", "d"])]
    pub alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    /// Include raw numeric values and residuals.
    #[arg(long)]
    pub verbose: bool,
    /// Include wall-clock time per method.
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct CorrelatorArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub p: u32,
    /// Exponents a_1, ..., a_m of the Chern classes X_1, ..., X_m.
    #[arg(long)]
    pub powers: String,
    #[arg(long)]
    pub verbose: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    /// Chain count and recurrence.
    Exact,
    Chain,
    Recurrence,
    Vi,
    /// Exact methods plus the fixed-point sum.
    All,
}

impl TableMethod {
    pub fn expand(self) -> &'static [Method] {
        match self {
            TableMethod::Exact => &[Method::Chain, Method::Recurrence],
            TableMethod::Chain => &[Method::Chain],
            TableMethod::Recurrence => &[Method::Recurrence],
            TableMethod::Vi => &[Method::Vi],
            TableMethod::All => Method::All.expand(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub max_q: u32,
    #[arg(long, value_enum, default_value_t = TableMethod::Exact)]
    pub method: TableMethod,
    /// Also compute deg K^q_{p,m}, which must coincide.
    #[arg(long)]
    pub dual: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ChainsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub alpha: String,
    /// Maximum number of chains to print; the count is always exact.
    #[arg(long, default_value_t = quotdeg_core::chain::DEFAULT_CHAIN_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(2..=12))]
    pub max_n: u32,
    #[arg(long, default_value_t = 14)]
    pub max_dim: u64,
    /// Corrupt one memoised chain count before sweeping.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub common: Common,
}

/// What a finished invocation prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    pub fn failure(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }

    pub fn usage(message: impl std::fmt::Display) -> Self {
        Self::failure(EXIT_USAGE, format!("error: {message}"))
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Outcome::failure(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Degree(args) => commands::degree(&args),
        Command::Correlator(args) => commands::correlator(&args),
        Command::Table(args) => commands::table(&args),
        Command::Chains(args) => commands::chains(&args),
        Command::Verify(args) => commands::verify(&args),
    }
}
