use std::collections::HashSet;

use serde::Serialize;

use super::{apply, redexes, Mode, Redex, RuleKind};
use crate::syntax::Term;

#[derive(Debug, Clone, Serialize)]
pub struct GcWitness {
    pub weak: Redex,
    pub step: Redex,
    pub target: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GcReport {
    pub pairs_checked: usize,
    pub failures: Vec<GcWitness>,
}

impl GcReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn steps_of(t: &Term, weak: bool) -> Vec<(Redex, Term)> {
    redexes(t, Mode::Micro)
        .into_iter()
        .filter(|r| (r.kind == RuleKind::Weak) == weak)
        .map(|r| {
            let s = apply(t, &r).expect("fresh redex");
            (r, s)
        })
        .collect()
}

/// Canonical forms reachable from `t` by one or more `Weak` steps.
fn weak_plus(t: &Term) -> HashSet<Term> {
    let mut seen = HashSet::new();
    let mut frontier: Vec<Term> = steps_of(t, true).into_iter().map(|(_, s)| s).collect();
    while let Some(s) = frontier.pop() {
        if seen.insert(s.canonical()) {
            frontier.extend(steps_of(&s, true).into_iter().map(|(_, u)| u));
        }
    }
    seen
}

/// For every `Weak` step followed by a non-`Weak` micro step, look for a
/// non-`Weak` step followed by at least one `Weak` step reaching the same term.
pub fn check_gc_local_postponement(t: &Term) -> GcReport {
    let mut report = GcReport::default();
    let weak_steps = steps_of(t, true);
    if weak_steps.is_empty() {
        return report;
    }
    let swapped: Vec<HashSet<Term>> = steps_of(t, false).into_iter().map(|(_, s)| weak_plus(&s)).collect();
    for (w, t1) in weak_steps {
        for (r, s) in steps_of(&t1, false) {
            report.pairs_checked += 1;
            let target = s.canonical();
            if !swapped.iter().any(|set| set.contains(&target)) {
                report.failures.push(GcWitness { weak: w.clone(), step: r, target: s.to_string() });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    #[test]
    fn examples() {
        let r = check_gc_local_postponement(&parse_term("cut{n>m} m").unwrap());
        assert_eq!(r.pairs_checked, 0);
        assert!(r.passed());
        let r = check_gc_local_postponement(&parse_term("cut{!e>f} cut{n>m} m").unwrap());
        assert_eq!(r.pairs_checked, 1);
        assert!(r.passed());
    }
}
