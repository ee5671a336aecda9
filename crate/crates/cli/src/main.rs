use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod check;
mod gen;
mod input;
mod reduce;
mod verify;

/// Print a line on stdout; a closed pipe is not an error.
#[macro_export]
macro_rules! emit {
    ($($arg:tt)*) => {
        $crate::emit_raw(&format!("{}\n", format_args!($($arg)*)))
    };
}

pub fn emit_raw(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

/// Exit statuses shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    InputError = 2,
}

#[derive(Parser)]
#[command(name = "esc", version, about = "Check, reduce, generate and verify exponential substitution calculus terms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term file, check properness and clashes, and synthesize its formula.
    Check {
        file: PathBuf,
        /// Typing context such as "e:!X, m:X*Y"; overrides a `# ctx:` header.
        #[arg(long)]
        ctx: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Normalize a term and report the reduction.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = reduce::StrategyArg::Good)]
        strategy: reduce::StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Write the step trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print the summary as JSON on stdout instead of the normal form.
        #[arg(long)]
        stats: bool,
    },
    /// Run a metatheory check over generated terms.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// Maximum size of generated terms.
        #[arg(long, default_value_t = 20)]
        size: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw untyped proper terms instead of typed ones.
        #[arg(long)]
        untyped: bool,
        /// Directory receiving counterexample files.
        #[arg(long, default_value = "esc-failures")]
        out: PathBuf,
    },
    /// Write a term in surface syntax.
    Gen {
        #[command(subcommand)]
        what: gen::GenCommand,
        /// Output file; stdout when absent.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Spindle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, ctx, json } => check::run(&file, ctx.as_deref(), json),
        Command::Reduce { file, strategy, seed, max_steps, trace, stats } => {
            reduce::run(&file, strategy, seed, max_steps, trace.as_deref(), stats)
        }
        Command::Verify { suite, size, count, seed, untyped, out } => {
            verify::run(suite, size, count, seed, untyped, &out)
        }
        Command::Gen { what, output } => gen::run(what, output.as_deref()),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::InputError as u8)
        }
    }
}
