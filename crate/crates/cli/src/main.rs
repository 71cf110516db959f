//! `ipset`: search, verify and construct planar integral point sets.
//!
//! Exit status: 0 success, 1 a check failed, 2 bad input, 3 search budget exhausted.

mod cache;
mod commands;
mod error;
mod setfile;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ipset_core::bounds::{CollinearForm, LogBase};
use ipset_core::PositionClass;

use crate::commands::Check;
use crate::error::{CliError, EXIT_BAD_INPUT};

#[derive(Parser, Debug)]
#[command(
    name = "ipset",
    version,
    about = "Exact tools for planar integral point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find the minimal diameter of an n-point set and write witnesses.
    Search(SearchArgs),
    /// Validate a set file and run the lemma checks on it.
    Verify(VerifyArgs),
    /// Build a facher or circular set.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Tabulate the diameter bounds.
    Bounds(BoundsArgs),
    /// List the candidate points for one diameter.
    Candidates(CandidatesArgs),
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Position::Semi)]
    position: Position,
    #[arg(long, default_value_t = 100)]
    max_diameter: u64,
    /// Write every witness at the minimal diameter, not only the first.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "ipset-out")]
    out_dir: PathBuf,
    /// Result log; defaults to results.tsv inside the output directory.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Position {
    Any,
    #[value(alias = "semi-general")]
    Semi,
    General,
}

impl From<Position> for PositionClass {
    fn from(p: Position) -> Self {
        match p {
            Position::Any => PositionClass::Any,
            Position::Semi => PositionClass::SemiGeneral,
            Position::General => PositionClass::General,
        }
    }
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    path: PathBuf,
    /// Comma-separated subset of the checks; all applicable ones by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Apex (0, h) over the integer points of the base line at integral distance.
    Facher {
        #[arg(long)]
        height: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// n points on one circle.
    Circular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    from: u64,
    #[arg(long, default_value_t = 20)]
    to: u64,
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    #[arg(long, default_value_t = 1.0)]
    c3: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = Base::Natural)]
    log_base: Base,
    #[arg(long, value_enum, default_value_t = Form::LogTwoOnePlusEps)]
    collinear_form: Form,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Base {
    Natural,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    /// delta / (4 log(2(1+eps)))
    LogTwoOnePlusEps,
    /// delta / (4 log2(1+eps))
    Log2OnePlusEps,
}

#[derive(clap::Args, Debug)]
struct CandidatesArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    csv: bool,
}

fn configure_threads() -> Result<(), CliError> {
    let Some(raw) = std::env::var_os("IPSET_THREADS") else {
        return Ok(());
    };
    let threads = raw
        .to_str()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Input(format!(
                "IPSET_THREADS must be a positive integer, got {raw:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot start {threads} worker threads: {e}")))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<error::Status, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Search(a) => {
            let cache = a.cache.unwrap_or_else(|| a.out_dir.join("results.tsv"));
            commands::search(
                out,
                a.n,
                a.position.into(),
                a.max_diameter,
                a.all,
                &a.out_dir,
                &cache,
            )
        }
        Command::Verify(a) => commands::verify(out, &a.path, &a.checks),
        Command::Construct { family } => match family {
            Family::Facher {
                height,
                out: target,
            } => commands::construct_facher(out, height, target),
            Family::Circular { n, out: target } => commands::construct_circular(out, n, target),
        },
        Command::Bounds(a) => {
            let params = ipset_core::bounds::BoundParams {
                c2: a.c2,
                c3: a.c3,
                delta: a.delta,
                epsilon: a.epsilon,
                log_base: match a.log_base {
                    Base::Natural => LogBase::Natural,
                    Base::Binary => LogBase::Binary,
                },
                collinear_form: match a.collinear_form {
                    Form::LogTwoOnePlusEps => CollinearForm::LogOfTwoOnePlusEps,
                    Form::Log2OnePlusEps => CollinearForm::Log2OfOnePlusEps,
                },
            };
            commands::bounds(out, a.from, a.to, &params, a.csv)
        }
        Command::Candidates(a) => commands::candidates(out, a.d, a.csv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::BufWriter::new(io::stdout().lock());
    let result =
        run(cli, &mut out).and_then(|status| out.flush().map(|()| status).map_err(CliError::from));
    match result {
        Ok(status) => status.into(),
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
    }
}
