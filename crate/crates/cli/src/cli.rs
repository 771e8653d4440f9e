use std::fs;
use std::path::PathBuf;

use clap::Parser;

use curvedg::graded::DEFAULT_WINDOW_CAP;
use curvedg::linalg::Field;

use crate::command::{Invocation, Session};
use crate::error::{exit, CliError};
use crate::manifest::{parse_manifest, Manifest, ParseOptions};

/// Exact computations with curved DG-modules over small graded algebras.
///
/// With a COMMAND, runs it against the manifest (if any) and the built-in
/// registry; without one, runs the manifest's `run` lines in order.
#[derive(Debug, Parser)]
#[command(name = "curvedg", version)]
pub struct Cli {
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Manifest file declaring rings, modules, morphisms and commands.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Width cap for supports of ℤ-graded objects.
    #[arg(long)]
    pub window: Option<u32>,
    /// Command and arguments, e.g. `h0 K k k[1]`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub command: Vec<String>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: curvedg::Error| e.to_string())
}

/// The outcome of one driver run.
pub struct Execution {
    pub report: String,
    pub errors: String,
    pub code: i32,
}

fn load(cli: &Cli) -> Result<Manifest, CliError> {
    let options = ParseOptions {
        field: cli.field.unwrap_or(Field::Rational),
        window: cli.window.unwrap_or(DEFAULT_WINDOW_CAP),
    };
    let Some(path) = &cli.manifest else { return Ok(Manifest::empty(options)) };
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let m = parse_manifest(&text, options)?;
    if let (Some(a), Some(b)) = (cli.field, m.field) {
        if a != b {
            return Err(CliError::Usage(format!("--field {a} conflicts with the manifest field {b}")));
        }
    }
    if let (Some(a), Some(b)) = (cli.window, m.window) {
        if a != b {
            return Err(CliError::Usage(format!("--window {a} conflicts with the manifest window {b}")));
        }
    }
    Ok(m)
}

pub fn execute(cli: &Cli) -> Execution {
    let mut run = Execution { report: String::new(), errors: String::new(), code: exit::SUCCESS };
    let fail = |mut run: Execution, e: CliError| {
        run.errors.push_str(&format!("error: {e}\n"));
        run.code = run.code.max(e.exit_code());
        run
    };
    let manifest = match load(cli) {
        Ok(m) => m,
        Err(e) => return fail(run, e),
    };
    let invocations = if cli.command.is_empty() {
        manifest.commands.clone()
    } else {
        match Invocation::parse(&cli.command) {
            Ok(inv) => vec![inv],
            Err(msg) => return fail(run, CliError::Usage(msg)),
        }
    };
    let session = match Session::new(manifest, cli.seed) {
        Ok(s) => s,
        Err(e) => return fail(run, e),
    };
    for inv in &invocations {
        match session.run(inv) {
            Ok(r) => {
                run.report.push_str(&r.text);
                run.code = run.code.max(r.status.exit_code());
            }
            Err(e) => {
                run.report.push_str(&format!("== {inv}\nerror: {e}\n"));
                run = fail(run, e);
            }
        }
    }
    if let Some(path) = &cli.report {
        if let Err(source) = fs::write(path, &run.report) {
            return fail(run, CliError::Io { path: path.display().to_string(), source });
        }
    }
    run
}
