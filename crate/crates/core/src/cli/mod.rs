//! The `cremona` command line: document formats, the census cache and the
//! subcommands. Exit codes: 0 success, 1 a mathematical check failed, 2
//! malformed input.

pub mod cache;
mod commands;
pub mod doc;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_adm, cmd_census, cmd_compose, cmd_factor, cmd_fixtures, cmd_invert, cmd_mults,
    cmd_verify_pair, CensusFormat,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn with_code(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cremona",
    version,
    about = "Classify and compute plane Cremona maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hudson's test on an H-type `ν_1 … ν_{d-1}`: prints 1 when admissible.
    Adm {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        nu: Vec<i64>,
    },
    /// Components of the pure maps of degree `d`.
    Census {
        d: u32,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Recompute without reading or writing the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Checks that two maps are mutually inverse.
    VerifyPair { a: PathBuf, b: PathBuf },
    /// `A ∘ B`, optionally with the common factor removed.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        strip: bool,
    },
    /// Inverse through a factorization into quadratic maps.
    Invert {
        file: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Factorization into quadratic maps and a projectivity.
    Factor {
        file: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Multiplicities of a map at the given points.
    Mults {
        file: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// The bundled example maps.
    Fixtures {
        /// Run every check on every bundled map.
        #[arg(long)]
        run_all: bool,
        /// Write the bundled documents to a directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Adm { nu } => cmd_adm(&nu),
        Command::Census {
            d,
            json,
            table: _,
            cache_dir,
            no_cache,
        } => {
            let format = if json {
                CensusFormat::Json
            } else {
                CensusFormat::Table
            };
            let dir = if no_cache {
                None
            } else {
                cache::resolve_cache_dir(cache_dir.as_deref())
            };
            cmd_census(d, format, dir.as_deref())
        }
        Command::VerifyPair { a, b } => cmd_verify_pair(&a, &b),
        Command::Compose { a, b, strip } => cmd_compose(&a, &b, strip),
        Command::Invert { file, points } => cmd_invert(&file, points.as_deref()),
        Command::Factor { file, points } => cmd_factor(&file, points.as_deref()),
        Command::Mults { file, points } => cmd_mults(&file, points.as_deref()),
        Command::Fixtures { run_all, export } => cmd_fixtures(run_all, export.as_deref()),
    }
}
