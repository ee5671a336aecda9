use std::fs;
use std::path::Path;

use anyhow::{Context as _, Result};
use clap::ValueEnum;
use esc_core::oracle::{
    check_confluence, check_cuteq_bisim, check_diamond, check_full_composition, check_fullness, check_gc,
    check_local_termination, check_measure_decrease, check_psn, check_sn, check_subject_reduction, gen_typed_sized,
    gen_untyped_sized, Bounds, Failure, Report, SnVerdict,
};
use esc_core::{apply, redexes, Mode, Term, TypingContext};
use rayon::prelude::*;
use serde_json::json;

use crate::{input, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Diamond,
    Confluence,
    Fullness,
    FullComposition,
    Measure,
    Psn,
    Sn,
    Bisim,
    SubjectReduction,
    LocalTermination,
    Gc,
}

/// Terms along the leftmost reduction of `t`, `t` included.
fn leftmost_path(t: &Term, mode: Mode, max: usize) -> Vec<Term> {
    let mut out = vec![t.clone()];
    while out.len() <= max {
        let cur = out.last().expect("nonempty");
        let Some(r) = redexes(cur, mode).into_iter().next() else { break };
        let next = apply(cur, &r).expect("fresh redex");
        out.push(next);
    }
    out
}

fn merged(check: &'static str, reports: impl IntoIterator<Item = Report>) -> Report {
    let mut total = Report { check, cases: 0, inconclusive: 0, failures: Vec::new() };
    for r in reports {
        total.absorb(r);
    }
    total
}

/// Outcome on one term; `cycles` counts untyped divergence witnesses.
struct Outcome {
    report: Report,
    cycles: usize,
}

fn check_one(suite: Suite, ctx: &TypingContext, t: &Term, typed: bool) -> Outcome {
    let bounds = Bounds::default();
    let plain = |report| Outcome { report, cycles: 0 };
    match suite {
        Suite::Diamond => plain(check_diamond(t, bounds)),
        Suite::Confluence => plain(check_confluence(t, Mode::Micro, bounds)),
        Suite::Fullness => plain(check_fullness(t)),
        Suite::FullComposition => {
            plain(merged("full-composition", leftmost_path(t, Mode::Micro, 20).iter().map(check_full_composition)))
        }
        Suite::Measure => plain(merged(
            "measure-decrease",
            leftmost_path(t, Mode::NonLolliMicro, 40).iter().map(check_measure_decrease),
        )),
        Suite::Psn => plain(check_psn(t, bounds)),
        Suite::Sn => {
            let mut report = Report { check: "sn", cases: 1, inconclusive: 0, failures: Vec::new() };
            let mut cycles = 0;
            match check_sn(t, Mode::Micro, bounds) {
                SnVerdict::Sn(_) => {}
                SnVerdict::Truncated => report.inconclusive += 1,
                SnVerdict::Cycle { prefix, cycle } if typed => report.failures.push(Failure {
                    term: t.to_string(),
                    detail: format!("typed term loops after {} steps through {} steps", prefix.len(), cycle.len()),
                }),
                SnVerdict::Cycle { .. } => cycles += 1,
            }
            Outcome { report, cycles }
        }
        Suite::Bisim => plain(check_cuteq_bisim(t)),
        Suite::SubjectReduction => plain(merged(
            "subject-reduction",
            leftmost_path(t, Mode::Micro, 20).iter().map(|s| check_subject_reduction(ctx, s)),
        )),
        Suite::LocalTermination => plain(check_local_termination(t)),
        Suite::Gc => plain(merged("gc-postponement", leftmost_path(t, Mode::Micro, 20).iter().map(check_gc))),
    }
}

pub fn run(suite: Suite, size: usize, count: usize, seed: u64, untyped: bool, out: &Path) -> Result<Status> {
    let typed = !untyped && suite != Suite::Psn;
    let results: Vec<(TypingContext, Outcome)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let (ctx, t) =
                if typed { gen_typed_sized(s, size) } else { (TypingContext::new(), gen_untyped_sized(s, size)) };
            let outcome = check_one(suite, &ctx, &t, typed);
            (ctx, outcome)
        })
        .collect();
    let mut total = Report { check: "", cases: 0, inconclusive: 0, failures: Vec::new() };
    let mut cycles = 0;
    let mut dumped = Vec::new();
    for (k, (ctx, outcome)) in results.into_iter().enumerate() {
        total.check = outcome.report.check;
        cycles += outcome.cycles;
        for (j, f) in outcome.report.failures.iter().enumerate() {
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join(format!("{}-{k}-{j}.esc", total.check));
            let body = format!("# {}\n{}", f.detail.replace('\n', " "), input::render(&parse_or_raw(&f.term), &ctx));
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
            dumped.push(path.display().to_string());
        }
        total.absorb(outcome.report);
    }
    let passed = total.passed();
    eprintln!(
        "{}: {} terms, {} cases, {} inconclusive, {} failures{}",
        total.check,
        count,
        total.cases,
        total.inconclusive,
        total.failures.len(),
        if cycles > 0 { format!(", {cycles} divergent untyped samples") } else { String::new() }
    );
    for d in &dumped {
        eprintln!("counterexample written to {d}");
    }
    let summary = json!({
        "suite": total.check,
        "typed": typed,
        "terms": count,
        "cases": total.cases,
        "inconclusive": total.inconclusive,
        "failures": total.failures.len(),
        "divergent": cycles,
        "passed": passed,
        "counterexamples": dumped,
    });
    crate::emit!("{summary}");
    Ok(if passed { Status::Pass } else { Status::Fail })
}

fn parse_or_raw(src: &str) -> Term {
    esc_core::parse_term(src).unwrap_or_else(|_| Term::named("unparsable"))
}
