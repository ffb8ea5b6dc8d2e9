mod commands;
mod config;
mod error;
mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{Outcome, Progress, VerifyArgs, ZerosArgs};
use crate::config::{parse_count, ConfigFile, Format, Overrides, Points, Settings};
use crate::error::{CliError, EXIT_CHECK_FAILED};

/// Exact integrals of the prime counting functions, certified constants and
/// checks of effective bounds.
#[derive(Parser, Debug)]
#[command(name = "primint", version, about)]
struct Cli {
    /// key = value file with defaults for the options below
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest x the sieve may reach (e.g. 1e9)
    #[arg(long, global = true, value_parser = parse_count)]
    max_x: Option<u64>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write results here instead of standard output
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Evaluation points: `2,10,1e6`, `geom:LO:HI:N`, `lin:LO:HI:N` or `ratio:LO:HI:R`
    #[arg(long, global = true)]
    points: Option<Points>,

    /// No progress messages on standard error
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of the constants with certified error bounds
    Constants,
    /// The step integrals and counting functions at each point
    Integrals,
    /// Residuals of the integral identities
    Identities {
        /// Comma-separated identity ids (default: all)
        #[arg(long)]
        id: Option<String>,
        /// Largest acceptable relative residual
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Check bounds against the exact integrals
    Verify {
        /// Bound id such as `thm102.upper`, a comma list, or `all`
        #[arg(long)]
        spec: String,
        /// Upper bound for the zero sum omega (default: lambda0)
        #[arg(long)]
        delta: Option<f64>,
        /// Table of zeta zeros, to check delta against its partial sum
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// One row per evaluated point instead of one per check
        #[arg(long)]
        detail: bool,
    },
    /// Sums over zeta zeros and the explicit formula
    Zeros {
        /// Table of zero ordinates, one per line
        #[arg(long)]
        file: Option<PathBuf>,
        /// Use only the first N zeros
        #[arg(long)]
        count: Option<usize>,
        /// Only the sum omega and its tail
        #[arg(long)]
        omega: bool,
        /// Residual of the explicit formula for psi at each point
        #[arg(long)]
        explicit_formula: bool,
    },
    /// Integrals next to their brackets, for plotting
    Export,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let (delta, zeros) = match &cli.command {
        Command::Verify { delta, zeros, .. } => (*delta, zeros.clone()),
        Command::Zeros { file, .. } => (None, file.clone()),
        _ => (None, None),
    };
    let settings = Settings::merge(
        Overrides {
            max_x: cli.max_x,
            format: cli.format,
            output: cli.output,
            threads: cli.threads,
            zeros,
            delta,
            points: cli.points,
            quiet: cli.quiet,
        },
        &file,
    )?;
    let progress = Progress::new(settings.quiet);

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = settings.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;

    let outcome: Outcome = pool.install(|| match &cli.command {
        Command::Constants => Ok(commands::constants()),
        Command::Integrals => commands::integrals(&settings, &progress),
        Command::Identities { id, tolerance } => commands::identities(&settings, id.as_deref(), *tolerance, &progress),
        Command::Verify { spec, detail, .. } => {
            commands::verify(&settings, &VerifyArgs { spec, detail: *detail }, &progress)
        }
        Command::Zeros { count, omega, explicit_formula, .. } => commands::zeros(
            &settings,
            &ZerosArgs { count: *count, omega: *omega, explicit_formula: *explicit_formula },
            &progress,
        ),
        Command::Export => commands::export(&settings, &progress),
    })?;

    match &settings.output {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            let mut w = BufWriter::new(f);
            outcome.table.write(settings.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            outcome.table.write(settings.format, &mut w)?;
            w.flush()?;
        }
    }
    if !outcome.passed {
        progress.note("some asserted checks failed");
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("primint: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
