//! Argument parsing and command dispatch, kept out of `main` for testing.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use e3core::fixtures::Fixtures;

use crate::dsl;
use crate::error::{CliError, Result, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use crate::report::Report;
use crate::suites::{run_verify, select_suites, DEFAULT_TORSION_LEVEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "e3verify",
    version,
    about = "Exact verification of the Hesse-pencil, symmetric-cube and double-cover computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run check suites and emit a report.
    Verify {
        /// field, curves, heisenberg, torsion, ring, lattice, cover, exclusion or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Torsion level M; must be a positive multiple of 6.
        #[arg(long, default_value_t = DEFAULT_TORSION_LEVEL)]
        torsion_level: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory with replacement fixture tables.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Evaluate one statement, e.g. "chi E(3): 4D-F".
    Eval { statement: String },
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => report.to_json(),
        Format::Markdown => Ok(report.to_markdown()),
    }
}

/// Writes the rendered report to `path`, or to `stdout` when `path` is `None`.
pub fn emit_report(
    report: &Report,
    format: Format,
    path: Option<&std::path::Path>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Verify { suite, torsion_level, format, out: path, fixtures } => {
            let suites = select_suites(&suite)?;
            let fx = match fixtures {
                Some(dir) => Fixtures::load_dir(&dir).map_err(|e| CliError::Usage(e.to_string()))?,
                None => Fixtures::embedded(),
            };
            let report = run_verify(&suites, torsion_level, &fx)?;
            emit_report(&report, format, path.as_deref(), out)?;
            let s = report.summary;
            writeln!(err, "pass {} fail {} skip {}", s.pass, s.fail, s.skip)?;
            Ok(if s.fail == 0 { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Eval { statement } => {
            let v = dsl::eval_source(&statement)?;
            writeln!(out, "{v}")?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code: 0 clean, 1 some check failed, 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
