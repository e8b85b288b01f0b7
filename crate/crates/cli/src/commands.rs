//! The four subcommands. Each returns its output document and the exit status it implies.

use qladder::closed_form::{closed_table, recurrence_closed, residues_closed};
use qladder::oracle::chebyshev_recurrence;
use qladder::quadrature::checks::run_numeric_suite;
use qladder::scalar::format_exact;
use qladder::verify::{run_suite, Summary};
use qladder::weight::{MomentLadder, WeightFamily};
use qladder::{ExactScalar, QContext};

use crate::config::{Command, RunConfig};
use crate::report::{OracleOutput, OracleRow, Output, QuadcheckOutput, TableOutput, TableRow, VerifyOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// An identity, tolerance or comparison failed, or a computation did not finish.
    Failure = 1,
    Usage = 2,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub exit: Exit,
}

/// `(alpha_n, beta_n)` for a family, parameter and index.
pub type ClosedFormProvider = dyn Fn(&WeightFamily, &QContext, usize) -> qladder::Result<(ExactScalar, ExactScalar)>;

fn status(ok: bool) -> Exit {
    if ok {
        Exit::Success
    } else {
        Exit::Failure
    }
}

pub fn execute(config: &RunConfig) -> qladder::Result<Outcome> {
    match config.command {
        Command::Table => cmd_table(config),
        Command::Verify => cmd_verify(config),
        Command::Quadcheck => cmd_quadcheck(config),
        Command::Oracle => cmd_oracle(config),
    }
}

pub fn cmd_table(config: &RunConfig) -> qladder::Result<Outcome> {
    let (family, ctx) = (config.family(), config.ctx());
    let table = closed_table(&family, &ctx, config.nmax)?;
    let residues = residues_closed(&family, &ctx, config.nmax)?;
    let rows = (0..=config.nmax)
        .map(|n| TableRow {
            n,
            alpha: format_exact(&table.alpha[n]),
            beta: format_exact(&table.beta[n]),
            big_r: format_exact(&residues.big_r[n]),
            small_r: format_exact(&residues.small_r[n]),
            p1: format_exact(&table.p1[n]),
            zeta_ratio: format_exact(&table.zeta_ratio[n]),
        })
        .collect();
    Ok(Outcome {
        output: Output::Table(TableOutput {
            config: config.clone(),
            rows,
        }),
        exit: Exit::Success,
    })
}

pub fn cmd_verify(config: &RunConfig) -> qladder::Result<Outcome> {
    let report = run_suite(&config.family(), &config.ctx(), config.nmax)?;
    let exit = status(report.success());
    Ok(Outcome {
        output: Output::Verify(VerifyOutput {
            config: config.clone(),
            entries: report.entries,
            summary: report.summary,
        }),
        exit,
    })
}

pub fn cmd_quadcheck(config: &RunConfig) -> qladder::Result<Outcome> {
    let (relative, absolute) = config.tolerances();
    let report = run_numeric_suite(&config.family(), &config.ctx(), config.precision_bits, config.nmax)?
        .regrade(relative, absolute);
    let exit = status(report.success());
    Ok(Outcome {
        output: Output::Quadcheck(QuadcheckOutput {
            config: config.clone(),
            entries: report.checks,
            summary: report.summary,
        }),
        exit,
    })
}

pub fn cmd_oracle(config: &RunConfig) -> qladder::Result<Outcome> {
    cmd_oracle_with(config, &recurrence_closed)
}

/// The oracle comparison against an arbitrary closed-form provider.
pub fn cmd_oracle_with(config: &RunConfig, closed: &ClosedFormProvider) -> qladder::Result<Outcome> {
    let (family, ctx) = (config.family(), config.ctx());
    let moments = MomentLadder::new(&family, &ctx, 2 * config.nmax + 1)?;
    let oracle = chebyshev_recurrence(&moments, config.nmax)?;
    let mut summary = Summary::default();
    let mut rows = Vec::with_capacity(config.nmax + 1);
    for n in 0..=config.nmax {
        let (alpha, beta) = closed(&family, &ctx, n)?;
        let equal = alpha == oracle.alpha[n] && beta == oracle.beta[n];
        if equal {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        rows.push(OracleRow {
            n,
            oracle_alpha: format_exact(&oracle.alpha[n]),
            closed_alpha: format_exact(&alpha),
            oracle_beta: format_exact(&oracle.beta[n]),
            closed_beta: format_exact(&beta),
            equal,
        });
    }
    Ok(Outcome {
        exit: status(summary.failed == 0),
        output: Output::Oracle(OracleOutput {
            config: config.clone(),
            rows,
            summary,
        }),
    })
}
