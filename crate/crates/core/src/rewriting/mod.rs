//! Root rules at a distance, redex enumeration and step application.
//!
//! A redex is a cut together with the free occurrence of its variable it
//! interacts with. Rewriting happens in place: the cut node and the
//! occurrence node are edited, the context between them is left alone.

mod cut_equiv;
mod gc;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contexts::{is_mul_position, Path};
use crate::substitution::subst_exp;
use crate::syntax::{plug_spine, NameSupply, Term};

pub use cut_equiv::{cut_class, cut_equiv, cut_moves, CUT_CLASS_LIMIT};
pub use gc::{check_gc_local_postponement, GcReport, GcWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    AxM1,
    AxM2,
    Tens,
    Lolli,
    AxE1,
    AxE2,
    BangDer,
    Weak,
    ESmall,
}

impl RuleKind {
    pub const ALL: [RuleKind; 9] = [
        RuleKind::AxM1,
        RuleKind::AxM2,
        RuleKind::Tens,
        RuleKind::Lolli,
        RuleKind::AxE1,
        RuleKind::AxE2,
        RuleKind::BangDer,
        RuleKind::Weak,
        RuleKind::ESmall,
    ];

    pub fn is_micro(self) -> bool {
        self != RuleKind::ESmall
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, RuleKind::AxM1 | RuleKind::AxM2 | RuleKind::Tens | RuleKind::Lolli)
    }

    pub fn is_exp_micro(self) -> bool {
        matches!(self, RuleKind::AxE1 | RuleKind::AxE2 | RuleKind::BangDer | RuleKind::Weak)
    }

    /// Rules with an interacting occurrence; the others act on the cut alone.
    pub fn has_occurrence(self) -> bool {
        !matches!(self, RuleKind::Weak | RuleKind::ESmall)
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which root rules are enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// All micro-step rules.
    Micro,
    /// Multiplicative rules plus the small-step exponential rule.
    Small,
    /// Micro-step rules except `Lolli`.
    NonLolliMicro,
    MulOnly,
    ExpMicroOnly,
}

impl Mode {
    pub fn admits(self, k: RuleKind) -> bool {
        match self {
            Mode::Micro => k.is_micro(),
            Mode::Small => k.is_multiplicative() || k == RuleKind::ESmall,
            Mode::NonLolliMicro => k.is_micro() && k != RuleKind::Lolli,
            Mode::MulOnly => k.is_multiplicative(),
            Mode::ExpMicroOnly => k.is_exp_micro(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Redex {
    pub cut_path: Path,
    /// Relative to the cut body.
    pub occ_path: Option<Path>,
    pub kind: RuleKind,
}

impl Redex {
    /// The position of the step: the occurrence for rules that have one,
    /// the cut itself for `Weak` and `ESmall`.
    pub fn position(&self) -> Path {
        match &self.occ_path {
            Some(q) => self.cut_path.child(1).join(q),
            None => self.cut_path.clone(),
        }
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.cut_path)?;
        if let Some(q) = &self.occ_path {
            write!(f, " / {q}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("stale redex: {0} does not match the term")]
    Stale(Redex),
    #[error("{0} is not a small-step exponential redex")]
    NotSmallStep(Redex),
}

/// The rule fired by the cut at `cut` against its occurrence at `occ`.
fn occurrence_kind(value: &Term, binder_is_mul: bool, occ: &Term) -> Option<RuleKind> {
    if binder_is_mul {
        match (value, occ) {
            (v, Term::Var(_)) if v.is_mul_value() => Some(RuleKind::AxM1),
            (Term::Var(n), Term::Par { .. } | Term::Sub { .. }) if n.is_mul() => Some(RuleKind::AxM2),
            (Term::Pair(..), Term::Par { .. }) => Some(RuleKind::Tens),
            (Term::Lam { .. }, Term::Sub { .. }) => Some(RuleKind::Lolli),
            _ => None,
        }
    } else {
        match (value, occ) {
            (v, Term::Var(_)) if v.is_exp_value() => Some(RuleKind::AxE1),
            (Term::Var(f), Term::Der { .. }) if f.is_exp() => Some(RuleKind::AxE2),
            (Term::Bang(_), Term::Der { .. }) => Some(RuleKind::BangDer),
            _ => None,
        }
    }
}

fn redexes_of_cut(t: &Term, cut_path: &[u8], mode: Mode, out: &mut Vec<Redex>) {
    let Some(Term::Cut { value, binder, body }) = t.subterm(cut_path) else {
        return;
    };
    let cut_path = Path::from(cut_path);
    let exp_ok = binder.is_exp() && value.is_exp_value();
    if exp_ok && mode.admits(RuleKind::ESmall) {
        out.push(Redex { cut_path: cut_path.clone(), occ_path: None, kind: RuleKind::ESmall });
    }
    let occs = body.free_occurrences(binder);
    if exp_ok && occs.is_empty() && mode.admits(RuleKind::Weak) {
        out.push(Redex { cut_path: cut_path.clone(), occ_path: None, kind: RuleKind::Weak });
    }
    for q in occs {
        if binder.is_mul() && !is_mul_position(body, &q) {
            continue;
        }
        let occ = body.subterm(&q).expect("occurrence path");
        if let Some(kind) = occurrence_kind(value, binder.is_mul(), occ) {
            if mode.admits(kind) {
                out.push(Redex { cut_path: cut_path.clone(), occ_path: Some(Path(q)), kind });
            }
        }
    }
}

/// Every redex of the enabled rules, ordered by cut path, then occurrence path.
pub fn redexes(t: &Term, mode: Mode) -> Vec<Redex> {
    let mut cuts = Vec::new();
    t.walk(&mut |p, n| {
        if matches!(n, Term::Cut { .. }) {
            cuts.push(p.to_vec());
        }
    });
    let mut out = Vec::new();
    for c in cuts {
        redexes_of_cut(t, &c, mode, &mut out);
    }
    out.sort();
    out
}

/// Redexes of the enabled rules for the cut at `cut_path` only.
pub fn redexes_at(t: &Term, cut_path: &Path, mode: Mode) -> Vec<Redex> {
    let mut out = Vec::new();
    redexes_of_cut(t, cut_path.as_slice(), mode, &mut out);
    out
}

pub fn is_normal(t: &Term, mode: Mode) -> bool {
    redexes(t, mode).is_empty()
}

pub fn is_cut_free(t: &Term) -> bool {
    t.is_cut_free()
}

/// Whether `r` still describes a redex of `t`.
pub fn matches(t: &Term, r: &Redex) -> bool {
    let mode = match r.kind {
        RuleKind::ESmall => Mode::Small,
        _ => Mode::Micro,
    };
    redexes_at(t, &r.cut_path, mode).contains(r)
}

/// What a step copied or dropped, for cost accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEffect {
    /// Size of the value copied and how many copies were made.
    pub duplicated: Option<(usize, usize)>,
    /// Size of the value erased by garbage collection.
    pub erased: Option<usize>,
}

/// Contract `r` in `t`.
pub fn apply(t: &Term, r: &Redex) -> Result<Term, RewriteError> {
    apply_with_effect(t, r).map(|(s, _)| s)
}

/// Contract a small-step exponential redex.
pub fn step_ess(t: &Term, r: &Redex) -> Result<Term, RewriteError> {
    if r.kind != RuleKind::ESmall {
        return Err(RewriteError::NotSmallStep(r.clone()));
    }
    apply(t, r)
}

pub fn apply_with_effect(t: &Term, r: &Redex) -> Result<(Term, StepEffect), RewriteError> {
    if !matches(t, r) {
        return Err(RewriteError::Stale(r.clone()));
    }
    // distinct binders: nothing in the body can capture the cut value
    let mut t = t.barendregt(&[]);
    let mut supply = NameSupply::for_term(&t);
    let slot = t.subterm_mut(r.cut_path.as_slice()).expect("matched");
    let Term::Cut { value, binder, mut body } = std::mem::replace(slot, Term::Var(binder_placeholder())) else {
        unreachable!("matched a cut");
    };
    let mut effect = StepEffect::default();
    let occ = r.occ_path.as_ref().map(|q| q.as_slice()).unwrap_or(&[]);
    let result = match r.kind {
        RuleKind::AxM1 => {
            *body.subterm_mut(occ).expect("matched") = *value;
            *body
        }
        RuleKind::AxM2 => {
            let Term::Var(n) = *value else { unreachable!() };
            match body.subterm_mut(occ).expect("matched") {
                Term::Par { conclusion, .. } | Term::Sub { conclusion, .. } => *conclusion = n,
                _ => unreachable!(),
            }
            *body
        }
        RuleKind::Tens => {
            let Term::Pair(s, u) = *value else { unreachable!() };
            let node = body.subterm_mut(occ).expect("matched");
            let Term::Par { left, right, body: inner, .. } = std::mem::replace(node, Term::Var(binder_placeholder()))
            else {
                unreachable!()
            };
            let (s, u) = (s.into_split(), u.into_split());
            let inner = plug_spine(u.spine, Term::cut(u.head, right, *inner));
            *node = plug_spine(s.spine, Term::cut(s.head, left, inner));
            *body
        }
        RuleKind::Lolli => {
            let Term::Lam { binder: y, body: s, .. } = *value else { unreachable!() };
            let node = body.subterm_mut(occ).expect("matched");
            let Term::Sub { value: arg, binder: x, body: inner, .. } =
                std::mem::replace(node, Term::Var(binder_placeholder()))
            else {
                unreachable!()
            };
            let s = s.into_split();
            *node = Term::cut(*arg, y, plug_spine(s.spine, Term::cut(s.head, x, *inner)));
            *body
        }
        RuleKind::AxE1 => {
            effect.duplicated = Some((value.size(), 1));
            *body.subterm_mut(occ).expect("matched") = supply.rename_all_binders(&value);
            Term::Cut { value, binder, body }
        }
        RuleKind::AxE2 => {
            let Term::Var(f) = &*value else { unreachable!() };
            match body.subterm_mut(occ).expect("matched") {
                Term::Der { conclusion, .. } => *conclusion = f.clone(),
                _ => unreachable!(),
            }
            Term::Cut { value, binder, body }
        }
        RuleKind::BangDer => {
            let Term::Bang(boxed) = &*value else { unreachable!() };
            effect.duplicated = Some((boxed.size(), 1));
            let copy = supply.rename_all_binders(boxed).into_split();
            let node = body.subterm_mut(occ).expect("matched");
            let Term::Der { binder: x, body: inner, .. } = std::mem::replace(node, Term::Var(binder_placeholder()))
            else {
                unreachable!()
            };
            *node = plug_spine(copy.spine, Term::cut(copy.head, x, *inner));
            Term::Cut { value, binder, body }
        }
        RuleKind::Weak => {
            effect.erased = Some(value.size());
            *body
        }
        RuleKind::ESmall => {
            let copies = body.occ_count(&binder);
            if copies == 0 {
                effect.erased = Some(value.size());
            } else {
                effect.duplicated = Some((value.size(), copies));
            }
            subst_exp(&body, &binder, &value).expect("exponential cut")
        }
    };
    *t.subterm_mut(r.cut_path.as_slice()).expect("matched") = result;
    Ok((t, effect))
}

fn binder_placeholder() -> crate::syntax::Var {
    crate::contexts::Context::hole_var()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn kinds(rs: &[Redex]) -> Vec<RuleKind> {
        rs.iter().map(|r| r.kind).collect()
    }

    fn only(s: &Term, mode: Mode) -> Redex {
        let rs = redexes(s, mode);
        assert_eq!(rs.len(), 1, "{s}: {rs:?}");
        rs.into_iter().next().unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(kinds(&redexes(&t("cut{n>m} m"), Mode::Micro)), [RuleKind::AxM1]);
        let rs = redexes(&t("cut{f>e} der{e>g} cut{o>m} sub{m; e>n} n"), Mode::Micro);
        assert_eq!(kinds(&rs), [RuleKind::AxE2, RuleKind::AxE1, RuleKind::AxM2]);
        assert_eq!(kinds(&redexes(&t("cut{!e>f} m"), Mode::Micro)), [RuleKind::Weak]);
        assert_eq!(kinds(&redexes(&t("cut{!e>f} m"), Mode::Small)), [RuleKind::ESmall]);
        assert!(redexes(&t("m"), Mode::Micro).is_empty());
        // clashes are not redexes
        assert!(redexes(&t("cut{(e,f)>g} g"), Mode::Micro).is_empty());
        assert!(redexes(&t("cut{!e>m} m"), Mode::Micro).is_empty());
        assert!(redexes(&t("cut{(o,p)>m} sub{m; q>x} x"), Mode::Micro).is_empty());
    }

    #[test]
    fn lolli_example() {
        let s = t("cut{\\e. der{e>m} m > n} sub{n; !f > o} o");
        let r = only(&s, Mode::Micro);
        assert_eq!(r.kind, RuleKind::Lolli);
        assert!(apply(&s, &r).unwrap().alpha_eq(&t("cut{!f > e} der{e>m} cut{m>o} o")));
    }

    #[test]
    fn exponential_examples() {
        let s = t("cut{!e>f} der{f>m} m");
        let r = only(&s, Mode::Micro);
        assert_eq!(r.kind, RuleKind::BangDer);
        assert!(apply(&s, &r).unwrap().alpha_eq(&t("cut{!e>f} cut{e>m} m")));

        let s = t("cut{!e>f} cut{e>m} m");
        let r = redexes(&s, Mode::Micro).into_iter().find(|r| r.kind == RuleKind::Weak).unwrap();
        assert!(apply(&s, &r).unwrap().alpha_eq(&t("cut{e>m} m")));

        let s = t("cut{!e>f} der{f>m} m");
        let r = only(&s, Mode::Small);
        assert!(step_ess(&s, &r).unwrap().alpha_eq(&t("cut{e>m} m")));
        let s = t("cut{f>e} der{e>m} m");
        assert!(step_ess(&s, &only(&s, Mode::Small)).unwrap().alpha_eq(&t("der{f>m} m")));
        let s = t("cut{!der{g>x}x > e} e");
        assert!(step_ess(&s, &only(&s, Mode::Small)).unwrap().alpha_eq(&t("!der{g>x} x")));
    }

    #[test]
    fn multiplicative_examples() {
        let s = t("cut{(der{e>a} a, b) > m} par{m>x,y} (y, x)");
        let r = only(&s, Mode::Micro);
        assert_eq!(r.kind, RuleKind::Tens);
        let out = apply(&s, &r).unwrap();
        assert!(out.alpha_eq(&t("der{e>a} cut{a > x} cut{b > y} (y, x)")), "{out}");
        assert!(out.is_proper());

        let s = t("cut{n>m} par{m>x,y} (x,y)");
        let r = only(&s, Mode::Micro);
        assert_eq!(r.kind, RuleKind::AxM2);
        assert_eq!(apply(&s, &r).unwrap(), t("par{n>x,y} (x,y)"));
    }

    #[test]
    fn superposition_readings_agree() {
        // AxM1 on a bare variable gives what renaming would give
        let s = t("cut{n>m} (m, o)");
        let r = only(&s, Mode::Micro);
        assert_eq!(r.kind, RuleKind::AxM1);
        let via_rename = t("(m, o)").rename_mul(&crate::syntax::Var::mul("m"), &crate::syntax::Var::mul("n")).unwrap();
        assert!(apply(&s, &r).unwrap().alpha_eq(&via_rename));
    }

    #[test]
    fn stale_redexes_are_rejected() {
        let s = t("cut{n>m} m");
        let r = only(&s, Mode::Micro);
        let out = apply(&s, &r).unwrap();
        assert_eq!(apply(&out, &r), Err(RewriteError::Stale(r.clone())));
        let wrong = Redex { kind: RuleKind::AxM2, ..r };
        assert!(apply(&s, &wrong).is_err());
    }

    #[test]
    fn omega_loops_in_five_steps() {
        let delta = "\\e. der{e>m} sub{m; e>n} n";
        let omega = t(&format!("cut{{{delta} > o}} sub{{o; !{delta} > o'}} o'"));
        let mut cur = omega.clone();
        let plan = [RuleKind::Lolli, RuleKind::AxE1, RuleKind::BangDer, RuleKind::Weak, RuleKind::AxM1];
        for k in plan {
            let rs: Vec<_> = redexes(&cur, Mode::Micro).into_iter().filter(|r| r.kind == k).collect();
            assert_eq!(rs.len(), 1, "{k} in {cur}");
            cur = apply(&cur, &rs[0]).unwrap();
            assert!(cur.is_proper());
        }
        assert!(cur.alpha_eq(&omega), "{cur}");
    }

    #[test]
    fn copies_are_freshened() {
        let s = t("cut{!\\m. m > e} (e, e)");
        let r = redexes(&s, Mode::Micro).into_iter().next().unwrap();
        let (out, effect) = apply_with_effect(&s, &r).unwrap();
        assert_eq!(effect.duplicated, Some((3, 1)));
        let mut names = std::collections::BTreeSet::new();
        out.all_names(&mut names);
        // the copy does not reuse the binder m
        assert!(names.len() > 2);
    }
}
