//! Command-line interface: every capability as a reproducible report.
//!
//! Exit codes: 0 success, 2 usage error, 3 capacity error, 4 data error.

mod commands;
mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use commands::run_command;
pub use record::{format_float, Cell, ReportRecord};

use crate::error::Error;
use crate::weights::ModelId;

#[derive(Debug, Parser)]
#[command(
    name = "ancestral",
    version,
    about = "Ancestral configurations of matching gene trees and species trees"
)]
pub struct Cli {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Uniform,
    Yule,
}

impl From<ModelArg> for ModelId {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Uniform => ModelId::Uniform,
            ModelArg::Yule => ModelId::Yule,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    S1,
    S2,
    S3,
    Coeffs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (and optionally list) unlabeled shapes of size N.
    Shapes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
    /// Root, total and per-node configuration counts of given trees.
    Configs(ConfigsArgs),
    /// Labeling, ordering and ranking counts and induced probabilities.
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Moment sequences of root and total counts.
    #[command(group(ArgGroup::new("mode").args(["exact", "float"])))]
    Moments {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n_max: usize,
        /// Exact rationals (default).
        #[arg(long)]
        exact: bool,
        /// Double precision, reported as natural logs.
        #[arg(long)]
        float: bool,
    },
    /// Check generating-function identities against the recurrences.
    SeriesCheck {
        #[arg(long, value_enum, ignore_case = true)]
        which: SystemArg,
        #[arg(long)]
        order: usize,
    },
    /// Exact distribution of (T, R) over shapes, or the standardized log-T CDF.
    Distribution {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Grid `a:b:step` of standardized values.
        #[arg(long, value_name = "A:B:STEP", allow_hyphen_values = true)]
        cdf_grid: Option<String>,
    },
    /// Shapes maximizing root and total counts.
    Extremal {
        #[arg(long)]
        n: usize,
    },
    /// Seeded Monte Carlo estimates of log-moments of T.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// One row per sample instead of the summary.
        #[arg(long)]
        per_sample: bool,
    },
    /// Data behind one of the standard figures (2 to 8).
    Report {
        #[arg(long)]
        figure: u8,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").args(["tree", "file"]).required(true)))]
pub struct ConfigsArgs {
    /// A tree in Newick form.
    #[arg(long)]
    pub tree: Option<String>,
    /// File with one tree per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// One row per node.
    #[arg(long)]
    pub per_node: bool,
    /// Cross-check against the explicit configuration oracles.
    #[arg(long)]
    pub oracle: bool,
}

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => 2,
            Error::Capacity { .. } => 3,
            _ => 4,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Command line as recorded in report headers; `--threads` and `--out` are
/// left out so that output is identical across them.
pub fn normalized_command(args: &[String]) -> String {
    let mut kept = vec!["ancestral".to_string()];
    let mut skip_next = false;
    for a in args.iter().skip(1) {
        if skip_next {
            skip_next = false;
            continue;
        }
        if a == "--threads" || a == "--out" {
            skip_next = true;
            continue;
        }
        if a.starts_with("--threads=") || a.starts_with("--out=") {
            continue;
        }
        kept.push(if a.contains(char::is_whitespace) || a.is_empty() {
            format!("'{a}'")
        } else {
            a.clone()
        });
    }
    kept.join(" ")
}

/// Parses arguments and renders the report, without touching stdout.
pub fn render<I, T>(args: I) -> Result<(Cli, String), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(|e| CliError {
        code: if e.use_stderr() { 2 } else { 0 },
        message: e.to_string(),
    })?;
    if cli.threads == 0 {
        return Err(CliError::usage("--threads must be at least 1"));
    }
    let strings: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::data(e.to_string()))?;
    let mut record = pool.install(|| run_command(&cli.command))?;
    record.command = normalized_command(&strings);
    let text = if cli.json {
        record.to_json()
    } else {
        record.to_csv()
    };
    Ok((cli, text))
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match render(args) {
        Ok((cli, text)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(message) => {
                    eprintln!("error: {message}");
                    4
                }
            }
        }
        Err(e) if e.code == 0 => {
            print!("{}", e.message);
            0
        }
        Err(e) => {
            eprint!("{}", e.message.trim_end());
            eprintln!();
            e.code
        }
    }
}
