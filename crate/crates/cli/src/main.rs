use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qladder_cli::{run, Cli, Exit};

fn main() -> ExitCode {
    let (command, args) = Cli::parse().command.split();
    let rendered = run(command, &args);
    match &rendered.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered.body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Exit::Failure.code());
            }
        }
        None => {
            let _ = std::io::stdout().write_all(rendered.body.as_bytes());
        }
    }
    if let Some(msg) = &rendered.message {
        if rendered.exit == Exit::Success || rendered.out.is_some() {
            println!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    }
    ExitCode::from(rendered.exit.code())
}
