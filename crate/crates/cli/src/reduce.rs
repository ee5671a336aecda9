use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use anyhow::{bail, Context as _, Result};
use clap::ValueEnum;
use esc_core::measure;
use esc_core::strategy::{normalize, subterm_report, Strategy};
use serde_json::json;

use crate::{input, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Good,
    GoodRandom,
    Leftmost,
    Random,
    Small,
}

impl StrategyArg {
    fn with_seed(self, seed: u64) -> Strategy {
        match self {
            StrategyArg::Good => Strategy::Good,
            StrategyArg::GoodRandom => Strategy::GoodRandom(seed),
            StrategyArg::Leftmost => Strategy::LeftmostAny,
            StrategyArg::Random => Strategy::RandomAny(seed),
            StrategyArg::Small => Strategy::SmallStep,
        }
    }
}

pub fn run(
    file: &Path,
    strategy: StrategyArg,
    seed: u64,
    max_steps: usize,
    trace_out: Option<&Path>,
    stats: bool,
) -> Result<Status> {
    let t = input::read(file)?.term;
    if let Err(e) = t.check_proper() {
        bail!("improper term: {e}");
    }
    let trace = normalize(&t, strategy.with_seed(seed), max_steps);
    if let Some(p) = trace_out {
        let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
        trace.write_jsonl(BufWriter::new(f))?;
    }
    let kinds: serde_json::Map<String, serde_json::Value> =
        trace.count_by_kind().into_iter().map(|(k, n)| (k.to_string(), n.into())).collect();
    let trajectory: Vec<Option<u64>> =
        std::iter::once(measure(&t).ok()).chain(trace.steps.iter().map(|s| s.measure_after)).collect();
    let report = subterm_report(&trace);
    let summary = json!({
        "strategy": trace.strategy.name(),
        "seed": trace.strategy.seed(),
        "verdict": trace.verdict,
        "steps": trace.steps.len(),
        "steps_by_kind": kinds,
        "initial_size": t.size(),
        "final_size": trace.final_term.size(),
        "cut_free": trace.final_term.is_cut_free(),
        "max_duplicated_size": trace.max_duplicated_size(),
        "max_bad_value_size": report.max_bad_value_size,
        "subterm_violations": report.violations.len(),
        "measure_trajectory": trajectory,
        "final_term": trace.final_term.to_string(),
    });
    eprintln!(
        "{} steps ({}), verdict {:?}, final size {}, cut-free {}, max duplicated {}, sub-term violations {}",
        trace.steps.len(),
        trace.count_by_kind().iter().map(|(k, n)| format!("{k} {n}")).collect::<Vec<_>>().join(", "),
        trace.verdict,
        trace.final_term.size(),
        trace.final_term.is_cut_free(),
        trace.max_duplicated_size(),
        report.violations.len(),
    );
    if stats {
        crate::emit!("{summary}");
    } else {
        crate::emit!("{}", trace.final_term);
    }
    Ok(Status::Pass)
}
