//! The `groupcode` command-line tool.
//!
//! Exit codes: 0 success, 1 negative answer (not isomorphic, failed
//! selftest), 2 unreadable or invalid input, 3 resource limit reached (a
//! partial report is still printed), 70 internal consistency failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decompose::{DecomposeOptions, DEFAULT_MAX_PARTITION_BITS};
use crate::error::Error;
use crate::isomorphy::{SearchOptions, DEFAULT_MAX_SEARCH_NODES};
use crate::json::{parse_code, LoadedCode};
use crate::report::{self, Outcome, ReportOptions};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "groupcode", version, about = "Analyze codes and group codes under the Hamming metric")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest block (in coordinates) searched exhaustively for a split.
    #[arg(long, default_value_t = DEFAULT_MAX_PARTITION_BITS, global = true)]
    pub max_partition_bits: usize,

    /// Node budget for isomorphism and automorphism searches.
    #[arg(long, default_value_t = DEFAULT_MAX_SEARCH_NODES, global = true)]
    pub max_search: u64,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,

    /// Cross-check results against brute-force computations.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Worker threads for the split search (0: one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    /// Include per-stage wall-clock times in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameters, classification, decomposition and cyclic structure.
    Analyze { file: PathBuf },
    /// Finest direct-sum decomposition.
    Decompose { file: PathBuf },
    /// Automorphism group.
    Aut {
        file: PathBuf,
        /// Compare the order with the one predicted from the decomposition.
        #[arg(long)]
        structure: bool,
    },
    /// Isomorphism test with a witness.
    Iso { first: PathBuf, second: PathBuf },
    /// Interleave copies of a cyclic group code.
    Interleave {
        file: PathBuf,
        #[arg(long)]
        copies: usize,
    },
    /// Coordinatewise product of cyclic group codes of equal length.
    Join {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::TheoremViolation(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn load(path: &Path) -> Result<LoadedCode, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_code(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report::to_text(value),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    code,
                    stderr: text,
                    ..Default::default()
                }
            } else {
                RunOutput {
                    code,
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            return RunOutput {
                code: EXIT_INPUT,
                stderr: format!("error: {e}\n"),
                ..Default::default()
            }
        }
    };
    pool.install(|| execute(&cli))
}

fn execute(cli: &Cli) -> RunOutput {
    let opts = ReportOptions {
        decompose: DecomposeOptions {
            max_partition_bits: cli.max_partition_bits,
            search: SearchOptions {
                max_nodes: cli.max_search,
            },
            parallel: true,
        },
        timing: cli.timing,
        oracle: cli.oracle,
    };
    let fail = |code: i32, msg: String| RunOutput {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    };
    let outcome = |o: Outcome| {
        let mut out = RunOutput {
            code: EXIT_OK,
            stdout: render(&o.value, cli.format),
            stderr: String::new(),
        };
        if let Some(p) = o.partial {
            out.code = EXIT_RESOURCE;
            out.stderr = format!("warning: incomplete: {p}\n");
        }
        out
    };
    macro_rules! load_or_fail {
        ($path:expr) => {
            match load($path) {
                Ok(c) => c,
                Err(msg) => return fail(EXIT_INPUT, msg),
            }
        };
    }
    macro_rules! try_run {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return fail(exit_code(&e), e.to_string()),
            }
        };
    }
    match &cli.command {
        Command::Analyze { file } => {
            let c = load_or_fail!(file);
            outcome(try_run!(report::analyze(&c, &opts)))
        }
        Command::Decompose { file } => {
            let c = load_or_fail!(file);
            outcome(try_run!(report::decomposition_report(&c, &opts)))
        }
        Command::Aut { file, structure } => {
            let c = load_or_fail!(file);
            outcome(try_run!(report::aut_report(&c, *structure, &opts)))
        }
        Command::Iso { first, second } => {
            let a = load_or_fail!(first);
            let b = load_or_fail!(second);
            let (value, iso) = try_run!(report::iso_report(&a, &b, &opts));
            RunOutput {
                code: if iso { EXIT_OK } else { EXIT_NEGATIVE },
                stdout: render(&value, cli.format),
                stderr: String::new(),
            }
        }
        Command::Interleave { file, copies } => {
            let c = load_or_fail!(file);
            let value = try_run!(report::interleave_report(&c, *copies));
            RunOutput {
                code: EXIT_OK,
                stdout: render(&value, cli.format),
                stderr: String::new(),
            }
        }
        Command::Join { files } => {
            let mut codes = Vec::new();
            for f in files {
                codes.push(load_or_fail!(f));
            }
            let value = try_run!(report::join_report(&codes));
            RunOutput {
                code: EXIT_OK,
                stdout: render(&value, cli.format),
                stderr: String::new(),
            }
        }
        Command::Selftest => {
            let results = selftest::run(cli.seed);
            let passed = results.iter().all(|r| r.passed);
            let stdout = match cli.format {
                Format::Text => results
                    .iter()
                    .map(|r| {
                        let mut line = format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                        if cli.timing {
                            line.push_str(&format!(" ({:.1} ms)", r.millis));
                        }
                        line + "\n"
                    })
                    .collect(),
                Format::Json => render(
                    &json!({
                        "passed": passed,
                        "checks": results.iter().map(|r| {
                            let mut v = json!({"name": r.name, "passed": r.passed, "detail": r.detail});
                            if cli.timing {
                                v["millis"] = json!(r.millis);
                            }
                            v
                        }).collect::<Vec<_>>(),
                    }),
                    Format::Json,
                ),
            };
            RunOutput {
                code: if passed { EXIT_OK } else { EXIT_NEGATIVE },
                stdout,
                stderr: String::new(),
            }
        }
    }
}
