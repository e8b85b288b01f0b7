//! Command-line arguments and their validation into a [`RunConfig`].

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qladder::quadrature::checks::{DEFAULT_PRECISION, MIN_SUITE_PRECISION};
use qladder::scalar::{format_exact, int, parse_rational};
use qladder::weight::WeightFamily;
use qladder::QContext;
use serde::{Deserialize, Serialize};

/// Largest accepted `--nmax`; the exact rationals grow quadratically in `n`.
pub const MAX_NMAX: usize = 64;
pub const DEFAULT_NMAX: usize = 8;
/// Relative tolerance `10^-E`; absolute checks use `10^-(E+5)`.
pub const DEFAULT_TOLERANCE_EXP: u32 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "qladder",
    version,
    about = "Ladder operators and recurrence coefficients for q-weights"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandLine,
}

#[derive(Debug, Subcommand)]
pub enum CommandLine {
    /// Exact alpha_n, beta_n, R_n, r_n, p_1(n), zeta_n/zeta_0 from the closed forms.
    Table(RunArgs),
    /// Run the exact identity suite.
    Verify(RunArgs),
    /// Run the numeric integral checks.
    Quadcheck(RunArgs),
    /// Compare the closed forms with the moment oracle.
    Oracle(RunArgs),
}

impl CommandLine {
    pub fn split(self) -> (Command, RunArgs) {
        match self {
            Self::Table(a) => (Command::Table, a),
            Self::Verify(a) => (Command::Verify, a),
            Self::Quadcheck(a) => (Command::Quadcheck, a),
            Self::Oracle(a) => (Command::Oracle, a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Table,
    Verify,
    Quadcheck,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Sw,
    Qlaguerre,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub family: FamilyTag,
    /// Exact square root of q, as "p/r" with 0 < p/r < 1.
    #[arg(long = "sqrt-q", value_name = "P/R")]
    pub sqrt_q: String,
    /// q-Laguerre parameter (integer >= 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    pub nmax: usize,
    /// Working precision in bits (quadcheck only).
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    /// Relative tolerance 10^-E for quadcheck; absolute checks use 10^-(E+5).
    #[arg(long = "tolerance-exp", default_value_t = DEFAULT_TOLERANCE_EXP)]
    pub tolerance_exp: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the rendered report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A validated invocation. This is the `config` object of the json output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub family: FamilyTag,
    pub sqrt_q: String,
    pub alpha: Option<i64>,
    pub nmax: usize,
    pub precision_bits: usize,
    pub tolerance_exp: u32,
    pub format: Format,
}

/// Bad parameters; the process exits with code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

impl RunConfig {
    pub fn from_args(command: Command, args: &RunArgs) -> Result<Self, UsageError> {
        let s = parse_rational(&args.sqrt_q)
            .map_err(|_| usage(format!("sqrt-q must be an exact rational p/r, got {:?}", args.sqrt_q)))?;
        if s <= int(0) || s >= int(1) {
            return Err(usage(format!("sqrt-q must lie in (0,1), got {}", format_exact(&s))));
        }
        if args.nmax > MAX_NMAX {
            return Err(usage(format!("nmax must be at most {MAX_NMAX}, got {}", args.nmax)));
        }
        match (args.family, args.alpha) {
            (FamilyTag::Sw, Some(_)) => return Err(usage("--alpha applies to the qlaguerre family only")),
            (FamilyTag::Qlaguerre, None) => return Err(usage("--alpha is required for the qlaguerre family")),
            (FamilyTag::Qlaguerre, Some(a)) if a < 1 => {
                return Err(usage(format!(
                    "alpha = {a} violates the integrability restriction: the ladder construction needs \
                     alpha >= 1 so that w(y)/y is integrable at 0"
                )))
            }
            _ => {}
        }
        if command == Command::Quadcheck && args.precision < MIN_SUITE_PRECISION {
            return Err(usage(format!(
                "precision {} bits is below the quadcheck floor of {MIN_SUITE_PRECISION}",
                args.precision
            )));
        }
        if args.tolerance_exp == 0 || args.tolerance_exp > 300 {
            return Err(usage("tolerance-exp must lie in 1..=300"));
        }
        Ok(Self {
            command,
            family: args.family,
            sqrt_q: format_exact(&s),
            alpha: args.alpha,
            nmax: args.nmax,
            precision_bits: args.precision,
            tolerance_exp: args.tolerance_exp,
            format: args.format,
        })
    }

    pub fn family(&self) -> WeightFamily {
        match self.family {
            FamilyTag::Sw => WeightFamily::StieltjesWigert,
            FamilyTag::Qlaguerre => WeightFamily::q_laguerre(self.alpha.expect("validated")).expect("validated alpha"),
        }
    }

    pub fn ctx(&self) -> QContext {
        QContext::from_sqrt_q_str(&self.sqrt_q).expect("validated sqrt-q")
    }

    pub fn tolerances(&self) -> (f64, f64) {
        let e = self.tolerance_exp as i32;
        (10f64.powi(-e), 10f64.powi(-e - 5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(family: FamilyTag, sqrt_q: &str, alpha: Option<i64>) -> RunArgs {
        RunArgs {
            family,
            sqrt_q: sqrt_q.into(),
            alpha,
            nmax: 4,
            precision: 256,
            tolerance_exp: 20,
            format: Format::Text,
            out: None,
        }
    }

    #[test]
    fn base_out_of_range() {
        let err = RunConfig::from_args(Command::Table, &args(FamilyTag::Sw, "3/2", None)).unwrap_err();
        assert!(err.0.contains("sqrt-q must lie in (0,1)"));
        assert!(RunConfig::from_args(Command::Table, &args(FamilyTag::Sw, "0", None)).is_err());
        assert!(RunConfig::from_args(Command::Table, &args(FamilyTag::Sw, "x/2", None)).is_err());
    }

    #[test]
    fn canonical_sqrt_q() {
        let c = RunConfig::from_args(Command::Table, &args(FamilyTag::Sw, "2/4", None)).unwrap();
        assert_eq!(c.sqrt_q, "1/2");
        assert_eq!(c.ctx().q(), &qladder::scalar::ratio(1, 4));
    }

    #[test]
    fn alpha_rules() {
        let zero = RunConfig::from_args(Command::Verify, &args(FamilyTag::Qlaguerre, "1/2", Some(0))).unwrap_err();
        assert!(zero.0.contains("integrability"));
        assert!(RunConfig::from_args(Command::Verify, &args(FamilyTag::Qlaguerre, "1/2", None)).is_err());
        assert!(RunConfig::from_args(Command::Verify, &args(FamilyTag::Sw, "1/2", Some(1))).is_err());
    }

    #[test]
    fn limits() {
        let mut a = args(FamilyTag::Sw, "1/2", None);
        a.nmax = 65;
        assert!(RunConfig::from_args(Command::Table, &a).is_err());
        a.nmax = 4;
        a.precision = 32;
        assert!(RunConfig::from_args(Command::Table, &a).is_ok());
        assert!(RunConfig::from_args(Command::Quadcheck, &a).is_err());
    }
}
