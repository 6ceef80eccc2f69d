//! The `cfst` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use cfst_core::equiv::{decide_traced, SearchConfig, Verdict};
use cfst_core::grammar::{show_word, Grammar};
use cfst_core::kinds::{synth_kind, KindEnv};
use cfst_core::typecheck::check_program_env;
use cfst_core::{parse_program, parse_type, Diagnostic, Kind, Program, Type};
use clap::{Parser, Subcommand};

use crate::runtime::{run, RunConfig, RunError};

pub mod exit {
    pub const OK: i32 = 0;
    /// Diagnostics, runtime errors, or "not equivalent".
    pub const FAILURE: i32 = 1;
    /// The equivalence search ran out of budget.
    pub const INCONCLUSIVE: i32 = 2;
    pub const DEADLOCK: i32 = 3;
    pub const USAGE: i32 = 64;
}

#[derive(Debug, Parser)]
#[command(
    name = "cfst",
    version,
    about = "Type checker and interpreter for a language with context-free session types"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type check a program.
    Check {
        file: PathBuf,
        /// Also print the resolved signature of every top-level name.
        #[arg(long)]
        dump_types: bool,
    },
    /// Type check and run a program, printing the value of `main`.
    Run {
        file: PathBuf,
        /// Randomise thread interleavings reproducibly.
        #[arg(long)]
        seed: Option<u64>,
        /// Milliseconds all threads must stay blocked before reporting a deadlock.
        #[arg(long, default_value_t = 2000)]
        watchdog_ms: u64,
    },
    /// Decide whether two types are equivalent.
    Equiv {
        left: String,
        right: String,
        /// Maximum number of expansion-tree nodes to process.
        #[arg(long, default_value_t = SearchConfig::DEFAULT_BUDGET)]
        budget: usize,
        /// Print one line per processed node.
        #[arg(long)]
        trace: bool,
    },
    /// Print the dual of a session type.
    Dual { ty: String },
    /// Print the grammar a session type translates to.
    DumpGrammar { ty: String },
    /// Print the resolved signature of every top-level name.
    DumpTypes { file: PathBuf },
}

/// Runs the command line on `args` (including the program name) and
/// returns the exit code.
pub fn main_entry<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let r = match cli.command {
        Command::Check { file, dump_types } => check(&file, dump_types, out, err),
        Command::DumpTypes { file } => check(&file, true, out, err),
        Command::Run {
            file,
            seed,
            watchdog_ms,
        } => run_file(
            &file,
            &RunConfig {
                seed,
                quiescence: Duration::from_millis(watchdog_ms),
            },
            out,
            err,
        ),
        Command::Equiv {
            left,
            right,
            budget,
            trace,
        } => equiv(&left, &right, budget, trace, out, err),
        Command::Dual { ty } => dual(&ty, out, err),
        Command::DumpGrammar { ty } => dump_grammar(&ty, out, err),
    };
    r.unwrap_or(exit::FAILURE)
}

type Io = std::io::Result<i32>;

fn report(err: &mut dyn Write, file: &str, diags: &[Diagnostic]) -> Io {
    for d in diags {
        writeln!(err, "{}", d.render(file))?;
    }
    Ok(exit::FAILURE)
}

/// Reads, parses and checks a program, reporting any diagnostics.
fn load(path: &Path, err: &mut dyn Write) -> std::io::Result<Result<(Program, String), i32>> {
    let name = path.display().to_string();
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "{name}: error: cannot read file: {e}")?;
            return Ok(Err(exit::FAILURE));
        }
    };
    match parse_program(&src) {
        Ok(p) => Ok(Ok((p, name))),
        Err(diags) => Ok(Err(report(err, &name, &diags)?)),
    }
}

fn check(path: &Path, dump_types: bool, out: &mut dyn Write, err: &mut dyn Write) -> Io {
    let (p, name) = match load(path, err)? {
        Ok(x) => x,
        Err(code) => return Ok(code),
    };
    let (env, diags) = check_program_env(&p);
    if dump_types {
        write!(out, "{}", env.dump())?;
    }
    if !diags.is_empty() {
        return report(err, &name, &diags);
    }
    Ok(exit::OK)
}

fn run_file(path: &Path, config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Io {
    let (p, name) = match load(path, err)? {
        Ok(x) => x,
        Err(code) => return Ok(code),
    };
    let (_, diags) = check_program_env(&p);
    if !diags.is_empty() {
        return report(err, &name, &diags);
    }
    match run(&p, config) {
        Ok(v) => {
            writeln!(out, "{v}")?;
            Ok(exit::OK)
        }
        Err(e @ RunError::Deadlock(_)) => {
            writeln!(err, "{name}: {e}")?;
            Ok(exit::DEADLOCK)
        }
        Err(e) => {
            writeln!(err, "{name}: {e}")?;
            Ok(exit::FAILURE)
        }
    }
}

/// Parses a standalone type; its free variables are taken to be of kind SL.
fn standalone(
    src: &str,
    what: &str,
    err: &mut dyn Write,
) -> std::io::Result<Option<(Type, KindEnv)>> {
    let t = match parse_type(src) {
        Ok(t) => t,
        Err(d) => {
            writeln!(err, "{}", d.render(what))?;
            return Ok(None);
        }
    };
    let mut env = KindEnv::new();
    for x in t.free_vars() {
        env.bind(x, Kind::SL);
    }
    if let Err(e) = synth_kind(&mut env, &t) {
        writeln!(err, "{what}: error: {e}")?;
        return Ok(None);
    }
    Ok(Some((t, env)))
}

fn equiv(
    left: &str,
    right: &str,
    budget: usize,
    trace: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Io {
    let Some((t1, mut env)) = standalone(left, "<left>", err)? else {
        return Ok(exit::FAILURE);
    };
    let Some((t2, env2)) = standalone(right, "<right>", err)? else {
        return Ok(exit::FAILURE);
    };
    for x in t2.free_vars() {
        if let Some(k) = env2.var(&x) {
            env.bind(x, k);
        }
    }
    let config = SearchConfig {
        budget,
        ..SearchConfig::default()
    };
    let mut lines = Vec::new();
    let outcome = decide_traced(&t1, &t2, &mut env, &config, &mut |ev| {
        if trace {
            lines.push(ev.to_string());
        }
    });
    for l in lines {
        writeln!(out, "{l}")?;
    }
    writeln!(out, "{}", outcome.verdict)?;
    Ok(match outcome.verdict {
        Verdict::Equivalent => exit::OK,
        Verdict::NotEquivalent => exit::FAILURE,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
    })
}

fn session(src: &str, err: &mut dyn Write) -> std::io::Result<Option<Type>> {
    let Some((t, mut env)) = standalone(src, "<type>", err)? else {
        return Ok(None);
    };
    if !synth_kind(&mut env, &t).is_ok_and(|k| k.is_session()) {
        writeln!(err, "<type>: error: `{t}` is not a session type")?;
        return Ok(None);
    }
    Ok(Some(t))
}

fn dual(src: &str, out: &mut dyn Write, err: &mut dyn Write) -> Io {
    let Some(t) = session(src, err)? else {
        return Ok(exit::FAILURE);
    };
    writeln!(out, "{}", cfst_core::dual::dual(&t))?;
    Ok(exit::OK)
}

fn dump_grammar(src: &str, out: &mut dyn Write, err: &mut dyn Write) -> Io {
    let Some(t) = session(src, err)? else {
        return Ok(exit::FAILURE);
    };
    match Grammar::from_types(&[&t]) {
        Ok((g, starts)) => {
            writeln!(out, "start: {}", show_word(&starts[0]))?;
            write!(out, "{g}")?;
            Ok(exit::OK)
        }
        Err(e) => {
            writeln!(err, "<type>: error: {e}")?;
            Ok(exit::FAILURE)
        }
    }
}
