//! Command-line front end: `solve`, `verify`, `scan` and `plot` driven by a
//! JSON run-config. Exit codes are 0 on success, 1 when a verification check
//! fails and 2 for usage or config errors.

mod commands;
pub mod config;
pub mod format;
pub mod plot;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use commands::{scan_rows, ScanRow, SCAN_COLUMNS};
pub use config::{Channel, Command, ConfigError, RunConfig};
pub use plot::{plot_data, PlotData, PlotRow};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "octic",
    version,
    about = "Exact octic-potential ground states and their numerical verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Solve the constraints and print the closed-form parameters as JSON.
    Solve(RunArgs),
    /// Run every numerical oracle and print the verification report as JSON.
    Verify(RunArgs),
    /// Tabulate solutions over channels and parameter lists as CSV.
    Scan(RunArgs),
    /// Sample the radial wavefunction and effective potential as CSV.
    Plot(RunArgs),
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Run-config JSON file, or `-` for standard input.
    #[arg(long)]
    pub config: String,
    /// Output file; overrides `output_path` from the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also run the verification oracles (solve, scan).
    #[arg(long)]
    pub verify: bool,
}

impl Sub {
    fn parts(&self) -> (Command, &RunArgs) {
        match self {
            Sub::Solve(a) => (Command::Solve, a),
            Sub::Verify(a) => (Command::Verify, a),
            Sub::Scan(a) => (Command::Scan, a),
            Sub::Plot(a) => (Command::Plot, a),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Solve(#[from] crate::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },

    #[error("--verify does not apply to {0}")]
    VerifyFlag(Command),
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(passed) => {
            if passed {
                EXIT_OK
            } else {
                let _ = writeln!(stderr, "verification failed");
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let (command, args) = cli.command.parts();
    if args.verify && matches!(command, Command::Plot) {
        return Err(CliError::VerifyFlag(command));
    }
    let config = load_config(&args.config, stdin)?;
    config.validate(command)?;

    let (body, passed) = match command {
        Command::Solve => commands::solve(&config, args.verify)?,
        Command::Verify => commands::verify(&config)?,
        Command::Scan => commands::scan(&config, args.verify)?,
        Command::Plot => (commands::plot(&config)?, true),
    };

    match args.out.as_ref().or(config.output_path.as_ref()) {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?,
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(passed)
}

fn load_config(source: &str, stdin: &mut dyn Read) -> Result<RunConfig, ConfigError> {
    let mut text = String::new();
    let read = if source == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(source).map(|t| text = t)
    };
    read.map_err(|source_err| ConfigError::Read {
        path: source.to_string(),
        source: source_err,
    })?;
    RunConfig::from_json(&text)
}
