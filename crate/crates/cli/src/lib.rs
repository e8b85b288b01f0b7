//! Library half of the `qladder` command-line tool.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

pub use commands::{execute, Exit, Outcome};
pub use config::{Cli, Command, RunArgs, RunConfig, UsageError};
pub use report::Output;

/// What the binary prints and where.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub exit: Exit,
    pub body: String,
    pub out: Option<PathBuf>,
    /// For stderr.
    pub message: Option<String>,
}

/// Validates, runs and renders one invocation.
pub fn run(command: Command, args: &RunArgs) -> Rendered {
    let config = match RunConfig::from_args(command, args) {
        Ok(c) => c,
        Err(e) => {
            return Rendered {
                exit: Exit::Usage,
                body: String::new(),
                out: None,
                message: Some(format!("error: {e}")),
            }
        }
    };
    match execute(&config) {
        Ok(outcome) => Rendered {
            exit: outcome.exit,
            body: outcome.output.render(config.format),
            out: args.out.clone(),
            message: args.out.as_ref().map(|_| outcome.output.brief()),
        },
        Err(e) => Rendered {
            exit: Exit::Failure,
            body: String::new(),
            out: None,
            message: Some(format!("error: {e}")),
        },
    }
}
