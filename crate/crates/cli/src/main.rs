//! `lhverify`: batch verification suites and a small calculator for local harmonic analysis.

mod eval;
mod script;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use local_harmonic::suites::{run_suite, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "lhverify", version, about = "Verify local harmonic analysis identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(value_name = "SUITE")]
        suite: String,
        /// Comma-separated primes.
        #[arg(long = "p", value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Random cases per configuration.
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for numeric suites.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate the requests in a script file.
    Compute {
        file: PathBuf,
    },
}

const USAGE_ERROR: u8 = 2;

fn verify(
    suite: &str,
    options: SuiteOptions,
    out: Option<PathBuf>,
    format: Format,
) -> ExitCode {
    let report = match run_suite(suite, &options) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            if !SUITES.contains(&suite) {
                eprintln!("available suites: {}", SUITES.join(", "));
            }
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let text = match format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} passed, {} failed, {} skipped in {:.2}s",
        report.suite,
        s.passed,
        s.failed,
        s.skipped,
        report.wall_time.as_secs_f64()
    );
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn compute(file: PathBuf) -> ExitCode {
    let src = match fs::read_to_string(&file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let lines = match script::parse_script(&src) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{}: parse error at {e}", file.display());
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let mut failed = false;
    for outcome in eval::run(&lines) {
        match outcome.result {
            Ok(Some(text)) => println!("{text}"),
            Ok(None) => {}
            Err(e) => {
                failed = true;
                eprintln!("{}: line {}: {e}", file.display(), outcome.line);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            primes,
            cases,
            seed,
            tol,
            out,
            format,
        } => verify(
            &suite,
            SuiteOptions {
                primes,
                cases,
                seed,
                tol,
            },
            out,
            format,
        ),
        Command::Compute { file } => compute(file),
    }
}
