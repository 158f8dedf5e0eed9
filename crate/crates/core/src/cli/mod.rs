//! The `cameral-cubic` command line.
//!
//! Exit codes: 0 success, 1 identity failure (`verify`), 2 usage or config
//! error, 3 non-generic instance, 4 oracle disagreement or failure
//! (`crosscheck`), 5 generation budget exhausted (`gen`).

pub mod config;
pub mod gen;
mod report;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::rootsys::{self, AlgebraId};
pub use config::{ConfigError, InstanceConfig, OracleSettings, TangentConfig, SCHEMA_VERSION};
pub use report::{CrosscheckReport, EvalReport, PointRow, RamRow, TauReport, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;
pub const EXIT_GENERATION: i32 = 5;

/// Environment variable capping the worker-thread count (0 or unset = all cores).
pub const THREADS_ENV: &str = "CAMERAL_CUBIC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "cameral-cubic", version, about = "Donagi-Markman cubic for A2/B2/G2 Hitchin systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fault {
    Killing,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the exact root-system identities.
    Verify {
        /// A2, B2, G2 or all.
        target: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Evaluate the cubic in closed form.
    Eval {
        /// Instance config (JSON); `-` reads standard input.
        #[arg(long)]
        config: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the cubic and compare against the residue oracle.
    Crosscheck {
        /// Instance config (JSON); `-` or omitted reads standard input.
        #[arg(long)]
        config: Option<String>,
        /// Overrides the config's `oracle.tol`.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print a random generic instance config.
    Gen {
        #[arg(long)]
        algebra: AlgebraId,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        deg1: usize,
        #[arg(long, default_value_t = 3)]
        deg2: usize,
        #[arg(long, default_value_t = gen::DEFAULT_BUDGET)]
        budget: usize,
    },
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`]; later calls are no-ops.
pub fn configure_threads() -> Result<(), String> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(s) => s.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {s:?}"))?,
        Err(_) => 0,
    };
    // an already-initialized pool is fine
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    if let Err(e) = configure_threads() {
        return Outcome::fail(EXIT_PARSE, e);
    }
    match cli.command {
        Command::Verify { target, format, inject_fault } => cmd_verify(&target, format, inject_fault),
        Command::Eval { config, format } => match load_config(config.as_deref(), stdin) {
            Ok(cfg) => report::cmd_eval(&cfg, format),
            Err(o) => o,
        },
        Command::Crosscheck { config, tol, format } => match load_config(config.as_deref(), stdin) {
            Ok(mut cfg) => {
                if let Some(t) = tol {
                    if !(t > 0.0 && t.is_finite()) {
                        return Outcome::fail(EXIT_PARSE, format!("--tol must be positive, got {t}"));
                    }
                    cfg.oracle.tol = t;
                }
                report::cmd_crosscheck(&cfg, format)
            }
            Err(o) => o,
        },
        Command::Gen { algebra, seed, deg1, deg2, budget } => match gen::generate(algebra, seed, deg1, deg2, budget) {
            Ok(cfg) => Outcome::ok(EXIT_OK, cfg.to_json() + "\n"),
            Err(e @ gen::GenError::Degree(..)) => Outcome::fail(EXIT_PARSE, e),
            Err(e) => Outcome::fail(EXIT_GENERATION, e),
        },
    }
}

fn load_config(path: Option<&str>, stdin: &mut dyn Read) -> Result<InstanceConfig, Outcome> {
    let text = match path {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Outcome::fail(EXIT_PARSE, format!("reading stdin: {e}")))?;
            s
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{p}: {e}")))?,
    };
    InstanceConfig::from_json(&text).map_err(|e| Outcome::fail(EXIT_PARSE, e))
}

fn cmd_verify(target: &str, format: Format, fault: Option<Fault>) -> Outcome {
    let ids: Vec<AlgebraId> = if target.eq_ignore_ascii_case("all") {
        AlgebraId::ALL.to_vec()
    } else {
        match target.parse() {
            Ok(id) => vec![id],
            Err(e) => return Outcome::fail(EXIT_PARSE, e),
        }
    };
    let reports = ids
        .into_iter()
        .map(|id| {
            let mut data = rootsys::build(id);
            if fault == Some(Fault::Killing) {
                data.killing[0][0] += crate::exactpoly::qi(1);
            }
            rootsys::verify_algebra(&data)
        })
        .collect();
    let rep = VerifyReport::new(reports);
    let code = if rep.passed { EXIT_OK } else { EXIT_VERIFY };
    Outcome::ok(code, report::render(&rep, format))
}

/// Process entry point: real arguments, real stdin, prints and returns the exit code.
pub fn main_entry() -> i32 {
    let out = run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
