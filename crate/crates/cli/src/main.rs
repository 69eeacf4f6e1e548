mod commands;
mod config;
mod source;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{config_hash, Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, files or parameters: exit 2.
    Config(String),
    /// Quadrature or solver failure: exit 3.
    Numeric(String),
}

impl From<bergmanlab::Error> for CliError {
    fn from(e: bergmanlab::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("BERGMANLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("BERGMANLAB_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let name = cli.command.name();
    let args = cli.command.args();
    args.validate(name)?;
    let hash = config_hash(name, args)?;
    let outcome = match &cli.command {
        Command::Norm(a) => commands::norm(a, &hash)?,
        Command::Profile(a) => commands::profile(a, &hash)?,
        Command::Verify(a) => commands::verify(a, &hash)?,
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &args.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
    }
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
