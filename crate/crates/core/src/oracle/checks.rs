//! Bounded replays of the metatheory on a single term.

use std::collections::HashSet;

use serde::Serialize;

use super::graph::{
    build_graph, check_sn, longest_paths_pub, shortest_to_sink, sn_of_graph, Bounds, Relation, SnVerdict,
};
use crate::measures::measure;
use crate::rewriting::{
    apply, check_gc_local_postponement, cut_equiv, cut_moves, redexes, redexes_at, Mode, Redex, RuleKind,
};
use crate::strategy::good_redexes;
use crate::syntax::Term;
use crate::typing::{find_clashes, synth, TypingContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub term: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: &'static str,
    /// Individual statements checked.
    pub cases: usize,
    /// Cases the bounds left undecided.
    pub inconclusive: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    fn new(check: &'static str) -> Report {
        Report { check, cases: 0, inconclusive: 0, failures: Vec::new() }
    }

    fn fail(&mut self, t: &Term, detail: impl Into<String>) {
        self.failures.push(Failure { term: t.to_string(), detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Fold another report of the same check into this one.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.inconclusive += other.inconclusive;
        self.failures.extend(other.failures);
    }
}

/// Unique normal form on terminating graphs; joinable local peaks otherwise.
pub fn check_confluence(t: &Term, mode: Mode, bounds: Bounds) -> Report {
    let mut r = Report::new("confluence");
    let g = build_graph(t, mode, bounds);
    match sn_of_graph(&g) {
        SnVerdict::Sn(_) => {
            r.cases += 1;
            let sinks = g.sinks();
            if sinks.len() > 1 {
                let forms: Vec<String> = sinks.iter().map(|&i| g.nodes[i].to_string()).collect();
                r.fail(t, format!("{} distinct normal forms: {}", sinks.len(), forms.join(" | ")));
            }
        }
        _ => {
            // local confluence inside the explored part
            let reach = |from: usize| {
                let mut seen = HashSet::from([from]);
                let mut stack = vec![from];
                while let Some(u) = stack.pop() {
                    for &(_, w) in &g.succ[u] {
                        if seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
                seen
            };
            for u in 0..g.len().min(200) {
                let succ: Vec<usize> = g.succ[u].iter().map(|&(_, w)| w).collect();
                for (a, &j) in succ.iter().enumerate() {
                    for &k in &succ[a + 1..] {
                        if j == k {
                            continue;
                        }
                        r.cases += 1;
                        if reach(j).is_disjoint(&reach(k)) {
                            if g.truncated {
                                r.inconclusive += 1;
                            } else {
                                r.fail(&g.nodes[u], format!("peak {} / {} not joinable", g.nodes[j], g.nodes[k]));
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// If the small-step graph is finite and acyclic, so is the micro-step one.
pub fn check_psn(t: &Term, bounds: Bounds) -> Report {
    let mut r = Report::new("psn");
    if !check_sn(t, Mode::Small, bounds).is_sn() {
        return r;
    }
    r.cases += 1;
    match check_sn(t, Mode::Micro, bounds) {
        SnVerdict::Sn(_) => {}
        SnVerdict::Truncated => r.inconclusive += 1,
        SnVerdict::Cycle { cycle, .. } => r.fail(t, format!("micro-step loop {cycle:?} from a small-step SN term")),
    }
    r
}

/// Every small-step exponential step is matched by the micro steps of the
/// same cut: occurrences one at a time, then garbage collection.
pub fn check_full_composition(t: &Term) -> Report {
    let mut r = Report::new("full-composition");
    for rx in redexes(t, Mode::Small).into_iter().filter(|rx| rx.kind == RuleKind::ESmall) {
        r.cases += 1;
        let target = apply(t, &rx).expect("fresh redex");
        let mut cur = t.clone();
        let mut steps = 0;
        loop {
            let rs = redexes_at(&cur, &rx.cut_path, Mode::ExpMicroOnly);
            let Some(next) = rs.iter().find(|s| s.kind != RuleKind::Weak).or_else(|| rs.first()).cloned() else {
                break;
            };
            cur = apply(&cur, &next).expect("fresh redex");
            steps += 1;
            if next.kind == RuleKind::Weak {
                break;
            }
        }
        if steps == 0 || !cur.alpha_eq(&target) {
            r.fail(t, format!("{rx}: micro steps reach {cur}, small step gives {target}"));
        }
    }
    r
}

/// Every micro and small step preserves the synthesized formula.
pub fn check_subject_reduction(ctx: &TypingContext, t: &Term) -> Report {
    let mut r = Report::new("subject-reduction");
    let Ok(a) = synth(ctx, t) else {
        r.fail(t, "input is not typable");
        return r;
    };
    let steps = redexes(t, Mode::Micro)
        .into_iter()
        .chain(redexes(t, Mode::Small).into_iter().filter(|x| x.kind == RuleKind::ESmall));
    for rx in steps {
        r.cases += 1;
        let s = apply(t, &rx).expect("fresh redex");
        match synth(ctx, &s) {
            Ok(b) if b == a => {}
            Ok(b) => r.fail(t, format!("{rx}: {a} became {b} in {s}")),
            Err(e) => r.fail(t, format!("{rx}: reduct {s} untypable: {e}")),
        }
    }
    r
}

fn step_kinds(t: &Term, mode: Mode) -> Vec<(Redex, Term)> {
    redexes(t, mode)
        .into_iter()
        .map(|rx| {
            let s = apply(t, &rx).expect("fresh redex");
            (rx, s)
        })
        .collect()
}

fn simulates(r: &mut Report, t: &Term, s: &Term, mode: Mode) {
    let theirs = step_kinds(s, mode);
    for (rx, u) in step_kinds(t, mode) {
        r.cases += 1;
        if !theirs.iter().any(|(ry, v)| ry.kind == rx.kind && cut_equiv(&u, v)) {
            r.fail(t, format!("{rx} to {u} has no {} match from {s}", rx.kind));
        }
    }
}

/// Each single cut move is a strong bisimulation that keeps the step kind.
pub fn check_cuteq_bisim(t: &Term) -> Report {
    let mut r = Report::new("cut-bisimulation");
    for s in cut_moves(t) {
        for mode in [Mode::Micro, Mode::Small] {
            simulates(&mut r, t, &s, mode);
            simulates(&mut r, &s, t, mode);
        }
    }
    r
}

/// Good diamond on the whole good graph, plus equal length of all maximal
/// good reductions.
pub fn check_diamond(t: &Term, bounds: Bounds) -> Report {
    let mut r = Report::new("good-diamond");
    let g = build_graph(t, Relation::Good, bounds);
    for u in 0..g.len() {
        let succ: Vec<usize> = g.succ[u].iter().map(|&(_, w)| w).collect();
        for (a, &j) in succ.iter().enumerate() {
            for &k in &succ[a + 1..] {
                if j == k {
                    continue;
                }
                r.cases += 1;
                let sj: HashSet<usize> = g.succ[j].iter().map(|&(_, w)| w).collect();
                if g.succ[k].iter().any(|&(_, w)| sj.contains(&w)) {
                    continue;
                }
                if g.truncated {
                    r.inconclusive += 1;
                } else {
                    r.fail(&g.nodes[u], format!("peak {} / {} does not close in one step", g.nodes[j], g.nodes[k]));
                }
            }
        }
    }
    match longest_paths_pub(&g) {
        Some(longest) if !g.truncated => {
            r.cases += 1;
            let shortest = shortest_to_sink(&g);
            if longest[0] != shortest[0] {
                r.fail(t, format!("maximal good reductions of lengths {} and {}", shortest[0], longest[0]));
            }
        }
        Some(_) => r.inconclusive += 1,
        None => r.fail(t, "good reduction loops"),
    }
    r
}

/// Clash-free terms that are not micro-normal have a good redex; checked
/// on `t` and its one-step reducts.
pub fn check_fullness(t: &Term) -> Report {
    let mut r = Report::new("fullness");
    let mut terms = vec![t.clone()];
    terms.extend(step_kinds(t, Mode::Micro).into_iter().map(|(_, s)| s));
    for u in &terms {
        if !find_clashes(u).is_empty() || redexes(u, Mode::Micro).is_empty() {
            continue;
        }
        r.cases += 1;
        if good_redexes(u).is_empty() {
            r.fail(u, "redexes exist but none is good");
        }
    }
    r
}

/// Every non-lolli micro step strictly decreases the measure.
pub fn check_measure_decrease(t: &Term) -> Report {
    let mut r = Report::new("measure-decrease");
    let Ok(before) = measure(t) else {
        r.inconclusive += 1;
        return r;
    };
    for (rx, s) in step_kinds(t, Mode::NonLolliMicro) {
        r.cases += 1;
        match measure(&s) {
            Ok(after) if after < before => {}
            Ok(after) => r.fail(t, format!("{rx}: measure {before} to {after}")),
            Err(_) => r.inconclusive += 1,
        }
    }
    r
}

/// Leftmost non-lolli micro normalization ends within `measure(t)` steps.
pub fn check_local_termination(t: &Term) -> Report {
    let mut r = Report::new("local-termination");
    let Ok(bound) = measure(t) else {
        r.inconclusive += 1;
        return r;
    };
    r.cases += 1;
    let mut cur = t.clone();
    for _ in 0..bound {
        match redexes(&cur, Mode::NonLolliMicro).into_iter().next() {
            Some(rx) => cur = apply(&cur, &rx).expect("fresh redex"),
            None => return r,
        }
    }
    if !redexes(&cur, Mode::NonLolliMicro).is_empty() {
        r.fail(t, format!("still reducible after {bound} steps"));
    }
    r
}

/// Garbage collection steps postpone locally.
pub fn check_gc(t: &Term) -> Report {
    let mut r = Report::new("gc-postponement");
    let gc = check_gc_local_postponement(t);
    r.cases = gc.pairs_checked;
    for w in gc.failures {
        r.fail(t, format!("{} then {} reaching {} cannot be swapped", w.weak, w.step, w.target));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_omega, gen_typed_sized};
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn fixtures() {
        let r = check_full_composition(&t("cut{!e>f} der{f>m} m"));
        assert_eq!((r.cases, r.passed()), (1, true));
        let ctx = TypingContext::parse("f:!X").unwrap();
        let r = check_subject_reduction(&ctx, &t("cut{\\e. der{e>m} m > n} sub{n; !der{f>p} p > o} o"));
        assert!(r.cases > 0 && r.passed(), "{r:?}");
        let r = check_cuteq_bisim(&t("cut{n>m}(o, m)"));
        assert!(r.cases > 0 && r.passed(), "{r:?}");
        let r = check_confluence(&t("m"), Mode::Micro, Bounds::default());
        assert!(r.passed());
        let r = check_gc(&t("cut{!e>f} cut{n>m} m"));
        assert!(r.cases == 1 && r.passed());
    }

    #[test]
    fn omega_psn_is_vacuous() {
        let r = check_psn(&gen_omega(), Bounds { max_nodes: 2000, max_depth: 30 });
        assert_eq!((r.cases, r.passed()), (0, true));
    }

    #[test]
    fn typed_samples() {
        for seed in 0..40 {
            let (ctx, s) = gen_typed_sized(seed, 14);
            for r in [
                check_subject_reduction(&ctx, &s),
                check_confluence(&s, Mode::Micro, Bounds::default()),
                check_full_composition(&s),
                check_diamond(&s, Bounds::default()),
                check_fullness(&s),
                check_measure_decrease(&s),
                check_local_termination(&s),
                check_gc(&s),
                check_cuteq_bisim(&s),
            ] {
                assert!(r.passed(), "{ctx} ⊢ {s}: {r:?}");
                assert_eq!(r.inconclusive, 0, "{r:?}");
            }
        }
    }
}
