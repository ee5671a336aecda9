use std::path::Path;

use anyhow::{Context as _, Result};
use esc_core::typing::find_clashes;
use esc_core::{synth, TypingContext};
use serde_json::json;

use crate::{input, Status};

pub fn run(file: &Path, ctx: Option<&str>, json: bool) -> Result<Status> {
    let parsed = input::read(file)?;
    let ctx = match ctx {
        Some(c) => TypingContext::parse(c).context("--ctx")?,
        None => parsed.ctx.unwrap_or_default(),
    };
    let t = parsed.term;
    let proper = t.check_proper();
    let clashes = find_clashes(&t);
    let typed = match (&proper, clashes.is_empty()) {
        (Ok(()), true) => Some(synth(&ctx, &t)),
        _ => None,
    };
    let status = match &typed {
        Some(Ok(_)) => Status::Pass,
        _ => Status::Fail,
    };
    if json {
        let out = json!({
            "term": t.to_string(),
            "context": ctx.to_string(),
            "proper": proper.is_ok(),
            "properness_error": proper.as_ref().err().map(ToString::to_string),
            "clashes": clashes,
            "formula": typed.as_ref().and_then(|r| r.as_ref().ok()).map(ToString::to_string),
            "type_error": typed.as_ref().and_then(|r| r.as_ref().err()).map(ToString::to_string),
        });
        crate::emit!("{out}");
        return Ok(status);
    }
    match (proper, typed) {
        (Err(e), _) => crate::emit!("improper: {e}"),
        (Ok(()), None) => {
            let c = &clashes[0];
            crate::emit!("proper, clash at {}: {}", c.path, c.shape);
        }
        (Ok(()), Some(Ok(a))) => crate::emit!("{a}"),
        (Ok(()), Some(Err(e))) => crate::emit!("proper, untypable: {e}"),
    }
    Ok(status)
}
