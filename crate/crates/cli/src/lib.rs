//! The `ars` command-line tool.
//!
//! [`run`] parses arguments and returns the exit code and output instead of
//! printing, so tests can drive the tool in-process.

mod commands;
mod render;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use ars_core::analysis::AnalysisConfig;
use ars_core::lambda::LambdaSystem;
use ars_core::serial::InstanceJson;
use ars_core::trs::TrsSystem;
use ars_core::{ArsError, OrientationPolicy, RewritingSystem};

pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_EQUIVALENT: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const BUDGET_EXHAUSTED: i32 = 3;
    pub const ORACLE_DISAGREEMENT: i32 = 4;
    pub const FACTORISATION_FAILURE: i32 = 5;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    Lambda,
    Trs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Standardisation, equivalence, factorisation and head-rewriting cones for
/// the λ-calculus and for term rewriting systems.
///
/// Paths are given as a start term and a script of redexes separated by
/// commas or spaces: λ positions such as `R.B.L` (root `ε`), or TRS
/// occurrences `position/rule` such as `1/r3` or `ε/r1`.
#[derive(Debug, Parser)]
#[command(name = "ars", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = InstanceKind::Lambda, global = true)]
    pub instance: InstanceKind,
    /// Rule file for the TRS instance (default: the built-in parallel-or rules).
    #[arg(long, global = true)]
    pub rules: Option<PathBuf>,
    /// Head values for the TRS instance, overriding `@head` lines.
    #[arg(long, global = true, value_delimiter = ',')]
    pub head: Vec<String>,
    #[arg(long, default_value = "symmetric", global = true)]
    pub policy: OrientationPolicy,
    /// Maximum tile applications per standardisation.
    #[arg(long, global = true)]
    pub fuel: Option<usize>,
    /// Continuation length used by the externality check.
    #[arg(long, global = true)]
    pub ext_bound: Option<usize>,
    /// Cross-check `equiv` with a zig-zag search of at most N tile moves.
    #[arg(long, global = true)]
    pub zigzag: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Re-check a JSON document produced by `--format json`.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rewrite a path to its canonical standard form.
    Standardize {
        term: String,
        #[arg(default_value = "")]
        script: String,
    },
    /// Decide whether two coinitial, cofinal paths are permutation equivalent.
    Equiv { term: String, left: String, right: String },
    /// Split a path into an external part and an internal part.
    Factorize {
        term: String,
        #[arg(default_value = "")]
        script: String,
    },
    /// Compute the cone of head-rewriting paths from a term.
    Cone {
        term: String,
        /// Longest path to a head value that is enumerated.
        #[arg(long, default_value_t = 4)]
        path_bound: usize,
        /// Check that every path to a head value of length at most N factors
        /// uniquely through the cone.
        #[arg(long)]
        check_universal: Option<usize>,
    },
    /// Graph of the paths reachable from a path by tiles in either direction.
    Statespace {
        term: String,
        #[arg(default_value = "")]
        script: String,
        /// Maximum number of nodes.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Show the tile whose source contracts FIRST and then SECOND.
    Tile {
        term: String,
        first: String,
        second: String,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn error_code(e: &ArsError) -> i32 {
    match e {
        ArsError::FuelExhausted { .. }
        | ArsError::ClosureBudgetExceeded { .. }
        | ArsError::EnumerationBudgetExceeded { .. } => exit::BUDGET_EXHAUSTED,
        ArsError::FactorisationCheckFailed(_) | ArsError::NoFactorisation | ArsError::MultipleFactorisations(_) => {
            exit::FACTORISATION_FAILURE
        }
        _ => exit::INVALID_INPUT,
    }
}

/// A loaded rewriting system.
#[derive(Debug, Clone)]
pub enum Instance {
    Lambda(LambdaSystem),
    Trs(TrsSystem),
}

impl Instance {
    pub fn describe(&self) -> InstanceJson {
        match self {
            Instance::Lambda(s) => InstanceJson {
                kind: "lambda".into(),
                policy: s.policy(),
                rules: None,
            },
            Instance::Trs(s) => InstanceJson {
                kind: "trs".into(),
                policy: s.policy(),
                rules: Some(s.to_rule_text()),
            },
        }
    }

    pub fn from_description(d: &InstanceJson) -> Result<Self, String> {
        match d.kind.as_str() {
            "lambda" => Ok(Instance::Lambda(LambdaSystem::new(d.policy))),
            "trs" => {
                let rules = d.rules.as_deref().ok_or("trs instance without rules")?;
                TrsSystem::parse(rules, d.policy)
                    .map(Instance::Trs)
                    .map_err(|e| e.to_string())
            }
            other => Err(format!("unknown instance kind `{other}`")),
        }
    }
}

/// Everything a command needs besides its own arguments.
#[derive(Debug, Clone)]
pub struct Session {
    pub instance: Instance,
    pub config: AnalysisConfig,
    pub zigzag: Option<usize>,
    pub format: Format,
}

impl Session {
    fn load(cli: &Cli) -> Result<Self, String> {
        let instance = match cli.instance {
            InstanceKind::Lambda => {
                if cli.rules.is_some() || !cli.head.is_empty() {
                    return Err("--rules and --head apply to the trs instance".into());
                }
                Instance::Lambda(LambdaSystem::new(cli.policy))
            }
            InstanceKind::Trs => {
                let mut sys = match &cli.rules {
                    None => TrsSystem::parallel_or().with_policy(cli.policy),
                    Some(file) => {
                        let text = std::fs::read_to_string(file)
                            .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
                        TrsSystem::parse(&text, cli.policy).map_err(|e| format!("{}: {e}", file.display()))?
                    }
                };
                if !cli.head.is_empty() {
                    let names: Vec<&str> = cli.head.iter().map(String::as_str).collect();
                    let heads = sys.head_values_from(&names).map_err(|e| e.to_string())?;
                    sys.set_head_values(heads);
                }
                Instance::Trs(sys)
            }
        };
        let mut config = AnalysisConfig::default();
        if let Some(fuel) = cli.fuel {
            config.engine.fuel = fuel;
        }
        if let Some(bound) = cli.ext_bound {
            config.ext_bound = bound;
        }
        Ok(Session {
            instance,
            config,
            zigzag: cli.zigzag,
            format: cli.format,
        })
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    if let Some(file) = &cli.verify {
        if cli.command.is_some() {
            return Outcome::fail(exit::INVALID_INPUT, "--verify takes no command");
        }
        return verify::verify_file(file);
    }
    let Some(command) = cli.command.clone() else {
        return Outcome::fail(exit::INVALID_INPUT, "missing command (try --help)");
    };
    let session = match Session::load(&cli) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(exit::INVALID_INPUT, e),
    };
    commands::execute(&session, &command)
}
