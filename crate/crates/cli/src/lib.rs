//! Command-line front end: deterministic JSON (or CSV) reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 a check failed, 3 the form is
//! not smooth, 4 a `--max-degree` limit was exceeded.

mod args;
mod commands;
pub mod report;

use clap::Parser;
use jacring_core::{FieldMode, PrimeField, Rationals};

pub use args::Cli;
use commands::{execute, Ctx, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_NOT_SMOOTH: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    NotSmooth(String),
    Limit(String),
}

/// Everything one invocation writes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = FieldMode::parse(&cli.field)
        .map_err(|e| CliError::Usage(e.to_string()))
        .and_then(|mode| match mode {
            FieldMode::Rational => execute(&cli.command, Ctx::new(Rationals, cli.seed, cli.max_degree)),
            FieldMode::Prime(p) => {
                let field = PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
                execute(&cli.command, Ctx::new(field, cli.seed, cli.max_degree))
            }
        });
    match result {
        Ok(out) => render(&cli, out),
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (EXIT_USAGE, m),
                CliError::NotSmooth(m) => (EXIT_NOT_SMOOTH, m),
                CliError::Limit(m) => (EXIT_LIMIT, m),
            };
            RunOutput { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn render(cli: &Cli, out: Output) -> RunOutput {
    let stdout = if cli.csv {
        match &out.table {
            Some(t) => t.to_csv(),
            None => {
                return RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: "error: --csv applies only to table outputs\n".into(),
                }
            }
        }
    } else {
        out.report.to_json()
    };
    let (code, stderr) = if out.not_smooth {
        (EXIT_NOT_SMOOTH, "error: the form is not smooth\n".to_string())
    } else if !out.report.all_pass() {
        let failed: Vec<&str> = out.report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        (EXIT_CHECK_FAILED, format!("failed checks: {}\n", failed.join("; ")))
    } else {
        (EXIT_OK, String::new())
    };
    RunOutput { code, stdout, stderr }
}
