//! Batch verification harness behind the `brauer-y02` binary.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cohomology::RepName;

pub use commands::Outcome;

/// Seed for the randomized suites when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 7;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Nonzero,
    Zero,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "brauer-y02", version, about = "Exact checks for elliptic curves with a marked 2-torsion point")]
pub struct Cli {
    /// π-adic precision for witness computations.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of C_2 with coefficients in a built-in representation or a module file.
    Cohomology {
        #[arg(long, conflicts_with = "fixture")]
        rep: Option<RepName>,
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Coefficient group for --rep, e.g. `Z`, `Z/6`, `Z (+) Z/2`.
        #[arg(long, default_value = "Z", conflicts_with = "fixture")]
        coeff: String,
        /// Inclusive range such as `0..4`.
        #[arg(long, default_value = "0..4")]
        degrees: String,
    },
    /// Find and verify Hilbert-symbol witnesses.
    Witness {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        /// Use this m instead of 3/4 mod p for the nonzero kind.
        #[arg(long)]
        m: Option<i64>,
    },
    /// Verify certificates from a JSON file (`-` for stdin).
    VerifyCertificate { path: PathBuf },
    /// Evaluate the Brauer group over a base: `ZP:2`, `ZP:2,3`, `Q`, `algclosed:0`.
    Brauer { base: String },
    /// Check the Legendre-family identities and automorphism counts over finite fields.
    ModuliIdentities {
        /// Largest field size for the identity checks.
        #[arg(long, default_value_t = 49)]
        bound: u64,
        /// Random samples per ring for the discriminant check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest field size for the exhaustive automorphism survey.
        #[arg(long, default_value_t = 27)]
        aut_bound: u64,
    },
    /// Smith normal form of an integer matrix file (`-` for stdin).
    Snf { path: PathBuf },
}

/// Configuration problems; these exit with code 3.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

impl ConfigError {
    pub fn new(e: impl ToString) -> Self {
        Self(e.to_string())
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<u32>,
    passed: bool,
    #[serde(flatten)]
    report: &'a serde_json::Value,
}

/// Runs a parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<(Outcome, String), ConfigError> {
    let outcome = commands::dispatch(cli)?;
    let rendered = match cli.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(seed) = outcome.seed {
                s.push_str(&format!("# seed {seed}\n"));
            }
            s.push_str(&outcome.text);
            s.push_str(if outcome.passed { "PASS\n" } else { "FAIL\n" });
            s
        }
        Format::Json => {
            let env = Envelope {
                command: outcome.command,
                seed: outcome.seed,
                precision: outcome.precision,
                passed: outcome.passed,
                report: &outcome.json,
            };
            let mut s = serde_json::to_string_pretty(&env).map_err(ConfigError::new)?;
            s.push('\n');
            s
        }
    };
    Ok((outcome, rendered))
}

/// Entry point: parses `args`, runs, writes output and maps the result to an
/// exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS });
        }
    };
    let (outcome, rendered) = match execute(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    ExitCode::from(if outcome.passed { EXIT_PASS } else { EXIT_VERIFICATION })
}
