//! Command-line front end: argument parsing, report envelope, exit codes.

mod commands;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use companion_core::poly::is_param_name;
use companion_core::{parse_expr, Indeterminate, Polynomial, SymMatrix};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ulh",
    version,
    about = "Companion and PB-companion tests for unit lower Hessenberg matrices"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Bind a parameter to a rational value before analysis (repeatable).
    #[arg(long, global = true, value_name = "NAME=RATIONAL")]
    pub assume: Vec<String>,

    /// Worker threads for search commands.
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial.
    Charpoly(FileArg),
    /// Pattern families, tilde and hat membership.
    Classify(FileArg),
    /// Companion test.
    Check {
        #[arg(long, value_enum, default_value_t = CheckMethod::Direct)]
        method: CheckMethod,
        file: PathBuf,
    },
    /// Subdiagonal-sum test for the hat sets, or for superpatterns of a Fiedler base.
    Ghat {
        file: PathBuf,
        /// Rows i_1,...,i_n of the base Fiedler pattern.
        #[arg(long, value_delimiter = ',', value_name = "ROWS")]
        fiedler_base: Option<Vec<usize>>,
    },
    /// Solve the checkpoint rows so the leading blocks become nilpotent.
    NilpotentComplete {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        checkpoints: Vec<usize>,
    },
    /// Parameterized companion family of a pattern.
    Parameterize {
        #[arg(long, default_value = "G")]
        set: String,
        /// Rows i_1,...,i_n of the variables.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
    },
    /// PB-companion analysis.
    Pb {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PbReportKind::Full)]
        report: PbReportKind,
    },
    /// Patterns of one family.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "emit")]
        count: bool,
        #[arg(long)]
        emit: bool,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Digraph of a matrix, optionally compared with another.
    Digraph {
        file: PathBuf,
        #[arg(long, value_name = "FILE2")]
        compare: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FileArg {
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SearchKind {
    /// Mixed superpatterns of Fiedler companion matrices.
    FiedlerMixed {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMethod {
    Direct,
    Structural,
    Ghat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PbReportKind {
    Full,
    Ma,
    Concat,
    Criterion,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<companion_core::Error> for CliError {
    fn from(e: companion_core::Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// A command's result in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
}

/// Files read, bindings and worker count shared by all commands.
pub struct Context {
    bindings: BTreeMap<Indeterminate, Polynomial>,
    jobs: usize,
    digest: Option<Sha256>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Context, CliError> {
        let jobs = match cli.jobs {
            Some(0) => return Err(CliError::Input("--jobs must be at least 1".into())),
            Some(k) => k,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Context {
            bindings: parse_assumptions(&cli.assume)?,
            jobs,
            digest: None,
        })
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Reads and parses a matrix file, applying `--assume` bindings.
    pub fn load(&mut self, path: &Path) -> Result<SymMatrix, CliError> {
        let bytes =
            std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.digest.get_or_insert_with(Sha256::new).update(&bytes);
        let text = String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
        let m = SymMatrix::parse(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(self.bind(&m))
    }

    pub fn bind(&self, m: &SymMatrix) -> SymMatrix {
        if self.bindings.is_empty() {
            m.clone()
        } else {
            m.substitute(&self.bindings)
        }
    }

    fn digest(&self) -> Value {
        match &self.digest {
            Some(h) => {
                let hex: String = h
                    .clone()
                    .finalize()
                    .iter()
                    .map(|b| format!("{b:02x}"))
                    .collect();
                Value::String(format!("sha256:{hex}"))
            }
            None => Value::Null,
        }
    }
}

fn parse_assumptions(items: &[String]) -> Result<BTreeMap<Indeterminate, Polynomial>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--assume {item:?}: expected NAME=RATIONAL")))?;
        let name = name.trim();
        if !is_param_name(name) {
            return Err(CliError::Input(format!(
                "--assume {item:?}: {name:?} is not a parameter name"
            )));
        }
        let v = parse_expr(value.trim(), 0)
            .map_err(|e| CliError::Input(format!("--assume {item:?}: {e}")))?;
        if !v.is_constant() {
            return Err(CliError::Input(format!(
                "--assume {item:?}: value must be a rational constant"
            )));
        }
        out.insert(Indeterminate::param(name), v);
    }
    Ok(out)
}

/// Runs one invocation; `argv` includes the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let result = Context::new(&cli).and_then(|mut ctx| {
        let output = commands::dispatch(&cli.command, &mut ctx)?;
        Ok((output, ctx.digest()))
    });
    match result {
        Ok((output, digest)) => {
            if cli.json {
                let report = json!({
                    "command": echo,
                    "input_digest": digest,
                    "result": output.json,
                    "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
                });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                );
            } else {
                let _ = write!(out, "{}", output.text);
                if !output.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            EXIT_OK
        }
        Err(e) => {
            if cli.json {
                let kind = if e.code() == EXIT_INTERNAL {
                    "internal"
                } else {
                    "input"
                };
                let report =
                    json!({ "command": echo, "error": { "kind": kind, "message": e.message() } });
                let _ = writeln!(
                    err,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                );
            } else {
                let _ = writeln!(err, "error: {}", e.message());
            }
            e.code()
        }
    }
}
