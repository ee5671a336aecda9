//! Good steps, normalization drivers and cost instrumentation.

use std::fmt;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::contexts::{classify_at, Goodness, Path};
use crate::measures::measure;
use crate::rewriting::{apply, apply_with_effect, redexes, Mode, Redex, RuleKind};
use crate::syntax::Term;

/// Micro redexes whose position is a good context.
pub fn good_redexes(t: &Term) -> Vec<Redex> {
    redexes(t, Mode::Micro).into_iter().filter(|r| classify_at(t, r.position().as_slice()) == Goodness::Good).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoodPolicy {
    LeftmostGood,
    RandomGood(u64),
}

/// Pick a good redex per `policy` and contract it.
pub fn good_step(t: &Term, policy: GoodPolicy) -> Option<(Redex, Term)> {
    let rs = good_redexes(t);
    let r = match policy {
        GoodPolicy::LeftmostGood => rs.into_iter().next()?,
        GoodPolicy::RandomGood(seed) => rs.choose(&mut ChaCha8Rng::seed_from_u64(seed))?.clone(),
    };
    let s = apply(t, &r).expect("fresh redex");
    Some((r, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost good redex.
    Good,
    /// A uniformly random good redex at every step.
    GoodRandom(u64),
    /// Leftmost micro redex.
    LeftmostAny,
    /// A random micro redex among those with the deepest cut.
    RandomAny(u64),
    /// Leftmost redex of the small-step system.
    SmallStep,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Good => "good",
            Strategy::GoodRandom(_) => "good-random",
            Strategy::LeftmostAny => "leftmost",
            Strategy::RandomAny(_) => "random",
            Strategy::SmallStep => "small",
        }
    }

    pub fn seed(self) -> Option<u64> {
        match self {
            Strategy::GoodRandom(s) | Strategy::RandomAny(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub kind: RuleKind,
    pub cut_path: Path,
    pub occ_path: Option<Path>,
    /// Size of the copied value and number of copies.
    pub duplicated_value: Option<(usize, usize)>,
    pub erased_value: Option<usize>,
    pub size_after: usize,
    /// `None` when the measure overflows 64 bits.
    pub measure_after: Option<u64>,
}

impl StepRecord {
    pub fn redex(&self) -> Redex {
        Redex { cut_path: self.cut_path.clone(), occ_path: self.occ_path.clone(), kind: self.kind }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Normal,
    StepLimit,
    ClashStuck,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub strategy: Strategy,
    pub initial: Term,
    pub steps: Vec<StepRecord>,
    pub final_term: Term,
    pub verdict: Verdict,
}

impl Trace {
    /// Replay the recorded steps from the initial term.
    pub fn replay(&self) -> Vec<Term> {
        let mut terms = vec![self.initial.clone()];
        for s in &self.steps {
            let next = apply(terms.last().expect("nonempty"), &s.redex()).expect("recorded redex");
            terms.push(next);
        }
        terms
    }

    pub fn count_by_kind(&self) -> Vec<(RuleKind, usize)> {
        RuleKind::ALL
            .iter()
            .map(|&k| (k, self.steps.iter().filter(|s| s.kind == k).count()))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    pub fn max_duplicated_size(&self) -> usize {
        self.steps.iter().filter_map(|s| s.duplicated_value.map(|d| d.0)).max().unwrap_or(0)
    }

    /// JSON lines: a header, then one record per step.
    pub fn write_jsonl(&self, mut out: impl Write) -> io::Result<()> {
        let header = json!({
            "initial_term": self.initial.to_string(),
            "strategy": self.strategy.name(),
            "seed": self.strategy.seed(),
        });
        writeln!(out, "{header}")?;
        for s in &self.steps {
            writeln!(out, "{}", serde_json::to_string(s).map_err(io::Error::other)?)?;
        }
        Ok(())
    }
}

fn choose(t: &Term, strategy: Strategy, rng: &mut ChaCha8Rng) -> Option<Redex> {
    match strategy {
        Strategy::Good => good_redexes(t).into_iter().next(),
        Strategy::GoodRandom(_) => good_redexes(t).choose(rng).cloned(),
        Strategy::LeftmostAny => redexes(t, Mode::Micro).into_iter().next(),
        Strategy::SmallStep => redexes(t, Mode::Small).into_iter().next(),
        Strategy::RandomAny(_) => {
            let rs = redexes(t, Mode::Micro);
            let deepest = rs.iter().map(|r| r.cut_path.len()).max()?;
            let deep: Vec<Redex> = rs.into_iter().filter(|r| r.cut_path.len() == deepest).collect();
            deep.choose(rng).cloned()
        }
    }
}

/// Run `strategy` from `t` for at most `max_steps` steps.
pub fn normalize(t: &Term, strategy: Strategy, max_steps: usize) -> Trace {
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed().unwrap_or(0));
    let mut cur = t.clone();
    let mut steps = Vec::new();
    let verdict = loop {
        let Some(r) = choose(&cur, strategy, &mut rng) else {
            break if cur.is_cut_free() { Verdict::Normal } else { Verdict::ClashStuck };
        };
        if steps.len() == max_steps {
            break Verdict::StepLimit;
        }
        let (next, effect) = apply_with_effect(&cur, &r).expect("fresh redex");
        steps.push(StepRecord {
            index: steps.len(),
            kind: r.kind,
            cut_path: r.cut_path,
            occ_path: r.occ_path,
            duplicated_value: effect.duplicated,
            erased_value: effect.erased,
            size_after: next.size(),
            measure_after: measure(&next).ok(),
        });
        cur = next;
    };
    Trace { strategy, initial: t.clone(), steps, final_term: cur, verdict }
}

/// Value sub-terms sitting in bad positions, with their sizes.
pub fn bad_values(t: &Term) -> Vec<(Path, usize)> {
    let mut out = Vec::new();
    t.walk(&mut |p, n| {
        if n.is_value() && classify_at(t, p) == Goodness::Bad {
            out.push((Path::from(p), n.size()));
        }
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    BadValue,
    Duplicated,
    Erased,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Number of steps taken before the offending term or step.
    pub step: usize,
    pub kind: ViolationKind,
    pub size: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SubTermReport {
    pub initial_size: usize,
    pub max_bad_value_size: usize,
    pub max_duplicated_size: usize,
    pub violations: Vec<Violation>,
}

/// Check the sub-term property along every term of `trace`.
pub fn subterm_report(trace: &Trace) -> SubTermReport {
    let initial_size = trace.initial.size();
    let mut report = SubTermReport { initial_size, ..SubTermReport::default() };
    for (i, t) in trace.replay().iter().enumerate() {
        for (_, size) in bad_values(t) {
            report.max_bad_value_size = report.max_bad_value_size.max(size);
            if size > initial_size {
                report.violations.push(Violation { step: i, kind: ViolationKind::BadValue, size });
            }
        }
    }
    for s in &trace.steps {
        if let Some((size, _)) = s.duplicated_value {
            report.max_duplicated_size = report.max_duplicated_size.max(size);
            if size > initial_size {
                report.violations.push(Violation { step: s.index, kind: ViolationKind::Duplicated, size });
            }
        }
        if let Some(size) = s.erased_value {
            if size > initial_size {
                report.violations.push(Violation { step: s.index, kind: ViolationKind::Erased, size });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    const OMEGA: &str = "cut{\\e. der{e>m} sub{m; e>n} n > o} sub{o; !\\e. der{e>m} sub{m; e>n} n > o'} o'";

    #[test]
    fn good_redex_examples() {
        let s = t("cut{f>e} der{e>g} cut{o>m} sub{m; e>n} n");
        // of the two redexes of the root cut, only the dereliction one is good
        let good: Vec<Redex> = good_redexes(&s).into_iter().filter(|r| r.cut_path.is_empty()).collect();
        assert_eq!(good.len(), 1);
        assert_eq!(good[0].kind, RuleKind::AxE2);
        let s = t("cut{f>e} der{e>m} sub{m; e>n} n");
        assert_eq!(redexes(&s, Mode::Micro).len(), 2);
        let good = good_redexes(&s);
        assert_eq!(good.len(), 1);
        assert_eq!(good[0].kind, RuleKind::AxE2);
        assert_eq!(good_redexes(&t("cut{n>m} m"))[0].kind, RuleKind::AxM1);
        // the only redex lives inside a cut value
        assert!(good_redexes(&t("cut{\\p. cut{n>m} (m, p) > o} par{o > x, y} (x, y)")).is_empty());
        assert!(!redexes(&t("cut{\\p. cut{n>m} (m, p) > o} par{o > x, y} (x, y)"), Mode::Micro).is_empty());
    }

    #[test]
    fn drivers() {
        for st in [Strategy::Good, Strategy::LeftmostAny, Strategy::RandomAny(3), Strategy::SmallStep] {
            let tr = normalize(&t("m"), st, 10);
            assert_eq!((tr.steps.len(), tr.verdict), (0, Verdict::Normal));
        }
        assert_eq!(normalize(&t(OMEGA), Strategy::Good, 100).verdict, Verdict::StepLimit);
        let tr = normalize(&t("cut{(e, f) > g} g"), Strategy::Good, 10);
        assert_eq!(tr.verdict, Verdict::ClashStuck);
        let s = t("cut{\\e. der{e>m} m > n} sub{n; !der{f>p} p > o} o");
        for st in [Strategy::Good, Strategy::LeftmostAny, Strategy::RandomAny(1), Strategy::SmallStep] {
            let tr = normalize(&s, st, 100);
            assert_eq!(tr.verdict, Verdict::Normal, "{st}");
            assert!(tr.final_term.alpha_eq(&t("der{f>p} p")), "{st}: {}", tr.final_term);
            assert!(tr.replay().last().unwrap().alpha_eq(&tr.final_term));
        }
        assert_eq!(normalize(&s, Strategy::Good, 100).steps[0].kind, RuleKind::Lolli);
    }

    #[test]
    fn jsonl() {
        let tr = normalize(&t("cut{!e>f} der{f>m} m"), Strategy::RandomAny(9), 10);
        let mut buf = Vec::new();
        tr.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), tr.steps.len() + 1);
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["strategy"], "random");
        assert_eq!(header["seed"], 9);
        let first: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(first["kind"], "BangDer");
        assert_eq!(first["cut_path"], "ε");
    }

    #[test]
    fn bad_value_examples() {
        let s = t("cut{(m, n) > o} o");
        let bad = bad_values(&s);
        assert!(bad.contains(&(Path(vec![0]), 3)));
        assert!(bad_values(&t("m")).is_empty());
        for (p, _) in bad_values(&t("cut{f>e} der{e>g} cut{o>m} sub{m; e>n} n")) {
            assert_eq!(classify_at(&t("cut{f>e} der{e>g} cut{o>m} sub{m; e>n} n"), p.as_slice()), Goodness::Bad);
        }
    }

    #[test]
    fn subterm_reports() {
        let tr = normalize(&t("m"), Strategy::Good, 10);
        let r = subterm_report(&tr);
        assert_eq!((r.max_bad_value_size, r.max_duplicated_size), (0, 0));
        assert!(r.violations.is_empty());
        let tr = normalize(
            &t("cut{!(der{e>m} der{e>n} (m, n)) > f} cut{!(der{f>m} der{f>n} (m, n)) > g} der{g>x} der{g>y} (x, y)"),
            Strategy::Good,
            1000,
        );
        assert_eq!(tr.verdict, Verdict::Normal);
        let r = subterm_report(&tr);
        assert!(r.violations.is_empty(), "{r:?}");
        assert!(r.max_duplicated_size > 0);
    }
}
