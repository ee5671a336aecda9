use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::contexts::{is_mul_position, Path};
use crate::rewriting::{apply, redexes, Mode, Redex};
use crate::syntax::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClashShape {
    /// A multiplicative value cut on an exponential variable.
    MulValueOnExp,
    /// An exponential value cut on a multiplicative variable.
    ExpValueOnMul,
    /// A pair cut against a subtraction.
    PairAgainstSub,
    /// An abstraction cut against a par.
    LambdaAgainstPar,
}

impl fmt::Display for ClashShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClashShape::MulValueOnExp => "multiplicative value cut on an exponential variable",
            ClashShape::ExpValueOnMul => "exponential value cut on a multiplicative variable",
            ClashShape::PairAgainstSub => "pair cut against a subtraction",
            ClashShape::LambdaAgainstPar => "abstraction cut against a par",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clash {
    /// Position of the clashing cut.
    pub path: Path,
    pub shape: ClashShape,
}

fn clash_of_cut(value: &Term, binder: &crate::syntax::Var, body: &Term) -> Option<ClashShape> {
    if binder.is_exp() && value.is_mul_value() {
        return Some(ClashShape::MulValueOnExp);
    }
    if binder.is_mul() && value.is_exp_value() {
        return Some(ClashShape::ExpValueOnMul);
    }
    if binder.is_exp() {
        return None;
    }
    for q in body.free_occurrences(binder) {
        if !is_mul_position(body, &q) {
            continue;
        }
        match (value, body.subterm(&q)) {
            (Term::Pair(..), Some(Term::Sub { .. })) => return Some(ClashShape::PairAgainstSub),
            (Term::Lam { .. }, Some(Term::Par { .. })) => return Some(ClashShape::LambdaAgainstPar),
            _ => {}
        }
    }
    None
}

/// Every clashing cut of `t`, in pre-order.
pub fn find_clashes(t: &Term) -> Vec<Clash> {
    let mut out = Vec::new();
    t.walk(&mut |p, n| {
        if let Term::Cut { value, binder, body } = n {
            if let Some(shape) = clash_of_cut(value, binder, body) {
                out.push(Clash { path: Path::from(p), shape });
            }
        }
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClashVerdict {
    /// A reduct reached by `witness` has a clash at `path`.
    ClashFound {
        path: Path,
        witness: Vec<Redex>,
    },
    NoClashWithin(usize),
}

/// Breadth-first search over micro-step reducts up to `depth` steps.
pub fn is_clash_free_bounded(t: &Term, depth: usize) -> ClashVerdict {
    let mut seen = HashSet::from([t.canonical()]);
    let mut queue = VecDeque::from([(t.clone(), Vec::<Redex>::new())]);
    while let Some((cur, witness)) = queue.pop_front() {
        if let Some(c) = find_clashes(&cur).into_iter().next() {
            return ClashVerdict::ClashFound { path: c.path, witness };
        }
        if witness.len() == depth {
            continue;
        }
        for r in redexes(&cur, Mode::Micro) {
            let next = apply(&cur, &r).expect("fresh redex");
            if seen.insert(next.canonical()) {
                let mut w = witness.clone();
                w.push(r);
                queue.push_back((next, w));
            }
        }
    }
    ClashVerdict::NoClashWithin(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn shapes() {
        let c = find_clashes(&t("cut{(e, f) > g} g"));
        assert_eq!(c, vec![Clash { path: Path::root(), shape: ClashShape::MulValueOnExp }]);
        assert_eq!(find_clashes(&t("cut{!e > m} m"))[0].shape, ClashShape::ExpValueOnMul);
        assert_eq!(find_clashes(&t("cut{(n, o) > m} sub{m; p > x} x"))[0].shape, ClashShape::PairAgainstSub);
        assert_eq!(find_clashes(&t("cut{\\x. x > m} par{m > x, y} (x, y)"))[0].shape, ClashShape::LambdaAgainstPar);
        assert!(find_clashes(&t("cut{n > m} m")).is_empty());
        assert!(find_clashes(&t("(o, cut{(n, p) > m} par{m > x, y} (x, y))")).is_empty());
        let c = find_clashes(&t("(o, cut{!e > m} m)"));
        assert_eq!(c[0].path, Path(vec![1]));
    }

    #[test]
    fn bounded_search() {
        assert_eq!(
            is_clash_free_bounded(&t("cut{(e, f) > g} g"), 0),
            ClashVerdict::ClashFound { path: Path::root(), witness: vec![] }
        );
        assert_eq!(is_clash_free_bounded(&t("cut{n > m} m"), 5), ClashVerdict::NoClashWithin(5));
        // the pair only meets the subtraction after the axiom step
        let s = t("cut{(n, o) > m} cut{m > p} sub{p; q > x} x");
        assert!(find_clashes(&s).is_empty());
        match is_clash_free_bounded(&s, 1) {
            ClashVerdict::ClashFound { witness, .. } => assert_eq!(witness.len(), 1),
            v => panic!("{v:?}"),
        }
        assert_eq!(is_clash_free_bounded(&s, 0), ClashVerdict::NoClashWithin(0));
    }
}
