use std::fs;
use std::path::Path;

use anyhow::{Context as _, Result};
use esc_core::{parse_term, Term, TypingContext};

pub const CTX_HEADER: &str = "# ctx:";

/// A term file: the term and the context from its header, if any.
pub struct TermFile {
    pub term: Term,
    pub ctx: Option<TypingContext>,
}

pub fn read(path: &Path) -> Result<TermFile> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&src).with_context(|| format!("in {}", path.display()))
}

pub fn parse(src: &str) -> Result<TermFile> {
    let ctx = match src.lines().find_map(|l| l.trim().strip_prefix(CTX_HEADER)) {
        Some(c) => Some(TypingContext::parse(c.trim()).context("typing context header")?),
        None => None,
    };
    let term = parse_term(src)?;
    Ok(TermFile { term, ctx })
}

/// Surface syntax with a context header when the context is nonempty.
pub fn render(term: &Term, ctx: &TypingContext) -> String {
    if ctx.is_empty() {
        format!("{term}\n")
    } else {
        format!("{CTX_HEADER} {ctx}\n{term}\n")
    }
}
