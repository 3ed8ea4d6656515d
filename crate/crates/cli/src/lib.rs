//! Command-line front end: sharded, cached censuses and the verification suites.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on an operational error (bad input, missing cache, I/O).

pub mod cache;
pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use a2count::census::ConjugateNormalization;
use a2count::cohomology::trace::{Binomials, CharacterNormalization, ExponentRule};
use a2count::error::{CensusError, CohomologyError, FieldError, ModformError};
use a2count::modforms::spaces::TraceRule;

use config::{parse_choice, Choice, Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("missing cache: {0}")]
    MissingCache(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Modform(#[from] ModformError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Whether every check of a command passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Mismatch
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Mismatch => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "a2count", version, about = "Point counts and trace verification for genus-2 moduli over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Default, Args)]
pub struct Globals {
    /// TOML file with the same keys as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Field sizes q = p^r, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub q: Vec<u64>,
    /// Largest total degree n1 + 2 n2 tallied.
    #[arg(long, global = true)]
    pub weight: Option<u32>,
    #[arg(long, global = true)]
    pub shards: Option<u64>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Unlocks censuses over fields larger than 13.
    #[arg(long, global = true)]
    pub long_run: bool,
    #[arg(long, global = true, value_parser = parse_choice::<ConjugateNormalization>)]
    pub kappa: Option<Choice<ConjugateNormalization>>,
    #[arg(long, global = true, value_parser = parse_choice::<CharacterNormalization>)]
    pub normalization: Option<Choice<CharacterNormalization>>,
    #[arg(long, global = true, value_parser = parse_choice::<Binomials>)]
    pub binomials: Option<Choice<Binomials>>,
    #[arg(long, global = true, value_parser = parse_choice::<ExponentRule>)]
    pub exponent: Option<Choice<ExponentRule>>,
    #[arg(long, global = true, value_parser = parse_rule)]
    pub elliptic_trace: Option<TraceRule>,
}

fn parse_rule(s: &str) -> Result<TraceRule, String> {
    match s {
        "frobenius" => Ok(TraceRule::Frobenius),
        "hecke-eigenvalue" => Ok(TraceRule::HeckeEigenvalue),
        _ => Err(format!("unknown trace rule {s:?}")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tally the three strata at each q into the cache.
    Census,
    /// Compare table rows with assembled traces at every cached q.
    Verify {
        /// Rows as l,m; repeat the flag for several. Defaults to the whole table.
        #[arg(long = "row")]
        rows: Vec<String>,
    },
    /// Siegel Hecke eigenvalues of one isotypic piece.
    Eigenvalues {
        /// j,k of the space S_{j,k}.
        #[arg(long)]
        space: String,
        /// Parts of the S6 partition, e.g. 3,1,1,1.
        #[arg(long)]
        isotype: String,
    },
    /// Congruences between elliptic and Siegel eigenvalues.
    Congruence {
        /// Case identifier; all cases when omitted.
        #[arg(long = "case")]
        case: Option<String>,
    },
    /// Select the trace variant that reproduces the reference rows.
    Calibrate,
    /// Isotypic decomposition of the trace on one local system.
    Report {
        /// l,m of the local system.
        #[arg(long)]
        row: String,
    },
}

impl Globals {
    /// The config file, if any, overridden by the flags given.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if !self.q.is_empty() {
            c.q = self.q.clone();
        }
        if let Some(w) = self.weight {
            c.weight = w;
        }
        if let Some(s) = self.shards {
            c.shards = s;
        }
        if let Some(d) = &self.cache_dir {
            c.cache_dir = d.clone();
        }
        if let Some(f) = self.format {
            c.format = f;
        }
        c.long_run |= self.long_run;
        if let Some(k) = self.kappa {
            c.kappa = k;
        }
        if let Some(n) = self.normalization {
            c.normalization = n;
        }
        if let Some(b) = self.binomials {
            c.binomials = b;
        }
        if let Some(e) = self.exponent {
            c.exponent = e;
        }
        if let Some(r) = self.elliptic_trace {
            c.elliptic_trace = r;
        }
        if c.shards == 0 {
            return Err(CliError::Config("shards must be positive".into()));
        }
        Ok(c)
    }
}

/// Runs one parsed command, printing its output, and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = cli.globals.resolve().and_then(|config| {
        let mut out = std::io::stdout().lock();
        commands::dispatch(&config, &cli.command, &mut out)
    });
    match result {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Parses `args` and runs; usage errors exit with 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
