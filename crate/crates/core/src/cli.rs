//! The `ternary` command line.
//!
//! Exit codes: 0 success, 1 sequence failed verification, 2 invalid input,
//! 3 no ternary permutation exists (n = 3, 4), 4 parse error, 5 node budget
//! exhausted, 6 I/O error. Data goes to stdout (or `--out`), errors to
//! stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{self, BaseCaseStore};
use crate::error::Error;
use crate::format::{write_sequence, Format};
use crate::search::{self, SearchConfig, SearchMode, SearchResult, MAX_SEARCH_DIM};
use crate::verify::TernarySequence;
use crate::MAX_DIM;

/// Environment variable naming a fixture directory to use instead of the
/// bundled base cases.
pub const FIXTURES_ENV: &str = "TERNARY_FIXTURES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    VerifyFailed = 1,
    InvalidInput = 2,
    Nonexistent = 3,
    ParseError = 4,
    BudgetExhausted = 5,
    Io = 6,
}

impl ExitCode {
    fn for_error(err: &Error) -> Self {
        match err {
            Error::Nonexistent { .. } => ExitCode::Nonexistent,
            Error::Parse { .. } => ExitCode::ParseError,
            Error::BudgetExhausted { .. } => ExitCode::BudgetExhausted,
            Error::Io { .. } => ExitCode::Io,
            Error::InvalidSequence(_) => ExitCode::VerifyFailed,
            Error::DimensionMismatch { .. }
            | Error::DimensionOutOfRange { .. }
            | Error::ValueOutOfRange { .. }
            | Error::InvalidArgument(_) => ExitCode::InvalidInput,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ternary",
    version,
    about = "Ternary permutations of the nonzero vectors of GF(2)^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a ternary permutation of GF(2)^dim.
    Gen {
        #[arg(long)]
        dim: u32,
        #[command(flatten)]
        output: OutputArgs,
        /// Directory with dim-5.txt / dim-6.txt base cases (overrides $TERNARY_FIXTURES).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Check that a listing is a ternary permutation.
    Verify {
        path: PathBuf,
        /// Force the input format instead of detecting it.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Backtracking search (dim 2 to 6).
    Search {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::First)]
        mode: ModeArg,
        /// Pin v_1 = 1, v_2 = 2.
        #[arg(long)]
        reduce: bool,
        /// Node budget; defaults to 10^9 for first mode at dim 5 and 6, else unlimited.
        #[arg(long)]
        budget: Option<u64>,
        /// Split count / prove-none across threads.
        #[arg(long)]
        parallel: bool,
        /// Print node statistics to stderr.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive nonexistence certificate for dim 3 or 4.
    Prove {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Existence, length and construction route for a dimension.
    Info {
        #[arg(long)]
        dim: u32,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Decimal)]
    pub format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Decimal,
    Binary,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Decimal => Format::Decimal,
            FormatArg::Binary => Format::Binary,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    First,
    Count,
    ProveNone,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::First => SearchMode::First,
            ModeArg::Count => SearchMode::Count,
            ModeArg::ProveNone => SearchMode::ProveNone,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                ExitCode::InvalidInput
            } else {
                let _ = stdout.write_all(text.as_bytes());
                ExitCode::Success
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            ExitCode::for_error(&err)
        }
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<ExitCode, Error> {
    match command {
        Command::Gen {
            dim,
            output,
            fixtures,
        } => {
            check_range(dim, 2, MAX_DIM)?;
            let dir = fixtures.or_else(|| std::env::var_os(FIXTURES_ENV).map(PathBuf::from));
            let mut store = match dir {
                Some(dir) => BaseCaseStore::from_dir(&dir)?,
                None => BaseCaseStore::bundled(),
            };
            let seq = store.generate(dim)?;
            emit(
                &write_sequence(&seq, output.format.into()),
                output.out.as_deref(),
                stdout,
            )?;
            Ok(ExitCode::Success)
        }
        Command::Verify { path, format } => {
            let text = fs::read_to_string(&path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let loaded = match catalog::load_str(&text, format.map(Format::from)) {
                Ok(loaded) => loaded,
                Err(Error::Parse { line, message }) => {
                    let _ = writeln!(stderr, "error: {}:{line}: {message}", path.display());
                    return Ok(ExitCode::ParseError);
                }
                Err(e) => return Err(e),
            };
            if loaded.report.valid() {
                emit("valid\n", None, stdout)?;
                Ok(ExitCode::Success)
            } else {
                emit(&format!("invalid: {}\n", loaded.report), None, stdout)?;
                Ok(ExitCode::VerifyFailed)
            }
        }
        Command::Search {
            dim,
            mode,
            reduce,
            budget,
            parallel,
            stats,
            output,
        } => {
            check_range(dim, 2, MAX_SEARCH_DIM)?;
            let mut config = SearchConfig::new(dim, mode.into()).reduced(reduce);
            if budget.is_some() {
                config = config.budget(budget);
            }
            let outcome = if parallel {
                search::search_parallel(&config)?
            } else {
                search::search(&config)?
            };
            if stats {
                let _ = writeln!(
                    stderr,
                    "nodes_explored={}\nsymmetry_reduction={}",
                    outcome.nodes_explored, outcome.symmetry_reduction
                );
            }
            match outcome.result {
                SearchResult::First(Some(seq)) => {
                    emit(
                        &write_sequence(&seq, output.format.into()),
                        output.out.as_deref(),
                        stdout,
                    )?;
                    Ok(ExitCode::Success)
                }
                SearchResult::First(None) => Err(Error::Nonexistent { dim }),
                SearchResult::Count(n) => {
                    emit(&format!("{n}\n"), output.out.as_deref(), stdout)?;
                    Ok(ExitCode::Success)
                }
                SearchResult::Nonexistent(none) => {
                    emit(
                        &format!("nonexistence={none}\n"),
                        output.out.as_deref(),
                        stdout,
                    )?;
                    Ok(ExitCode::Success)
                }
            }
        }
        Command::Prove { dim, out } => {
            check_range(dim, 3, 4)?;
            let certificate = search::prove_impossibility(dim)?;
            emit(&certificate.to_string(), out.as_deref(), stdout)?;
            Ok(ExitCode::Success)
        }
        Command::Info { dim } => {
            check_range(dim, 2, MAX_DIM)?;
            let exists = catalog::exists(dim)?;
            let route = if exists {
                catalog::format_route(&catalog::route(dim)?)
            } else {
                "none".to_string()
            };
            let text = format!(
                "n={dim}\nexists={exists}\nlength={}\nroute={route}\n",
                TernarySequence::expected_len(dim)
            );
            emit(&text, None, stdout)?;
            Ok(ExitCode::Success)
        }
    }
}

fn check_range(dim: u32, min: u32, max: u32) -> Result<(), Error> {
    if (min..=max).contains(&dim) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange { dim, min, max })
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}
