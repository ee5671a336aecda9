use std::fs;
use std::path::Path;

use anyhow::{Context as _, Result};
use clap::Subcommand;
use esc_core::oracle::{gen_omega, gen_spindle, gen_typed_sized, gen_untyped_sized};
use esc_core::TypingContext;

use crate::{input, Family, Status};

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// The looping combinator.
    Omega,
    /// A parametrized family.
    Family {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// A random proper term.
    Random {
        #[arg(long)]
        typed: bool,
        #[arg(long, default_value_t = 20)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run(what: GenCommand, output: Option<&Path>) -> Result<Status> {
    let (ctx, t) = match what {
        GenCommand::Omega => (TypingContext::new(), gen_omega()),
        GenCommand::Family { family: Family::Spindle, n } => gen_spindle(n)?,
        GenCommand::Random { typed: true, size, seed } => gen_typed_sized(seed, size),
        GenCommand::Random { typed: false, size, seed } => (TypingContext::new(), gen_untyped_sized(seed, size)),
    };
    let text = input::render(&t, &ctx);
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => crate::emit_raw(&text),
    }
    Ok(Status::Pass)
}
