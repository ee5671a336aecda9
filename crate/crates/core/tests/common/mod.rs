//! Test-side oracles shared by the integration suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use esc_core::syntax::{Term, Var};
use esc_core::Context;

pub fn has_hole(t: &Term) -> bool {
    let mut found = false;
    t.walk(&mut |_, n| found |= Context::is_hole(n));
    found
}

fn without(mut s: BTreeSet<Var>, xs: &[&Var]) -> BTreeSet<Var> {
    for x in xs {
        s.remove(*x);
    }
    s
}

/// Dominating free variables, written clause by clause from the table.
pub fn grammar_dfv(c: &Term) -> BTreeSet<Var> {
    if Context::is_hole(c) {
        return BTreeSet::new();
    }
    match c {
        Term::Var(_) => panic!("no hole"),
        Term::Pair(a, b) => {
            if has_hole(a) {
                grammar_dfv(a)
            } else {
                grammar_dfv(b)
            }
        }
        Term::Bang(b) => grammar_dfv(b),
        Term::Lam { binder, body, .. } => without(grammar_dfv(body), &[binder]),
        Term::Cut { value, binder, body } => {
            if has_hole(value) {
                grammar_dfv(value)
            } else {
                without(grammar_dfv(body), &[binder])
            }
        }
        Term::Par { conclusion, left, right, body } => {
            let d = grammar_dfv(body);
            if d.contains(left) || d.contains(right) {
                let mut d = without(d, &[left, right]);
                d.insert(conclusion.clone());
                d
            } else {
                d
            }
        }
        Term::Sub { conclusion, value, binder, body } => {
            if has_hole(value) {
                let mut d = grammar_dfv(value);
                d.insert(conclusion.clone());
                d
            } else {
                let d = grammar_dfv(body);
                if d.contains(binder) {
                    let mut d = without(d, &[binder]);
                    d.insert(conclusion.clone());
                    d
                } else {
                    d
                }
            }
        }
        Term::Der { conclusion, binder, body } => {
            let d = grammar_dfv(body);
            if d.contains(binder) {
                let mut d = without(d, &[binder]);
                d.insert(conclusion.clone());
                d
            } else {
                d
            }
        }
    }
}

/// Membership in the value-context production.
fn in_value_good(c: &Term) -> bool {
    if Context::is_hole(c) {
        return true;
    }
    match c {
        Term::Pair(a, b) => {
            if has_hole(a) {
                in_good(a)
            } else {
                in_good(b)
            }
        }
        Term::Lam { body, .. } | Term::Bang(body) => in_good(body),
        _ => false,
    }
}

/// Membership in the good-context production.
pub fn in_good(c: &Term) -> bool {
    if in_value_good(c) {
        return true;
    }
    match c {
        Term::Par { body, .. } | Term::Der { body, .. } => in_good(body),
        Term::Sub { value, body, .. } => {
            if has_hole(value) {
                in_value_good(value)
            } else {
                in_good(body)
            }
        }
        Term::Cut { value, binder, body } => !has_hole(value) && in_good(body) && !grammar_dfv(body).contains(binder),
        _ => false,
    }
}

/// Membership in the bad-context production: a bad cut somewhere along the
/// way to the hole.
pub fn in_bad(c: &Term) -> bool {
    if Context::is_hole(c) {
        return false;
    }
    if let Term::Cut { value, binder, body } = c {
        if has_hole(value) || grammar_dfv(body).contains(binder) {
            return true;
        }
    }
    (0..c.arity()).filter_map(|i| c.child(i)).filter(|k| has_hole(k)).any(in_bad)
}

fn hole() -> Term {
    Term::Var(Context::hole_var())
}

/// Hole-free terms of exactly `k` nodes with one fixed naming, for every
/// `k` up to `max`.
fn closed_terms(max: usize) -> Vec<Vec<Term>> {
    let o = Var::mul("o");
    let e = Var::exp("e");
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(), vec![Term::Var(o.clone())]];
    for k in 2..=max {
        let mut out = Vec::new();
        for c in &by_size[k - 1] {
            out.push(Term::lam(o.clone(), None, c.clone()));
            out.push(Term::bang(c.clone()));
            out.push(Term::par(o.clone(), o.clone(), Var::mul("p"), c.clone()));
            out.push(Term::der(e.clone(), o.clone(), c.clone()));
        }
        for a in 1..k - 1 {
            for l in &by_size[a] {
                for r in &by_size[k - 1 - a] {
                    out.push(Term::pair(l.clone(), r.clone()));
                    if l.is_value() {
                        out.push(Term::cut(l.clone(), o.clone(), r.clone()));
                        out.push(Term::sub(o.clone(), l.clone(), o.clone(), r.clone()));
                    }
                }
            }
        }
        by_size.push(out);
    }
    by_size
}

/// Streams every context of at most `max` nodes. Names off the hole path
/// are fixed since they cannot influence dfv; binders and conclusions on
/// the path range over a pool that lets every clause fire.
pub struct ContextEnumerator {
    closed: Vec<Vec<Term>>,
}

impl ContextEnumerator {
    pub fn new(max: usize) -> ContextEnumerator {
        ContextEnumerator { closed: closed_terms(max.saturating_sub(2).max(1)) }
    }

    pub fn for_each(&self, max: usize, f: &mut dyn FnMut(&Term)) {
        for k in 1..=max {
            self.exactly(k, f);
        }
    }

    pub fn exactly(&self, k: usize, f: &mut dyn FnMut(&Term)) {
        let (m, n, e) = (Var::mul("m"), Var::mul("n"), Var::exp("e"));
        if k == 1 {
            f(&hole());
            return;
        }
        self.exactly(k - 1, &mut |c| {
            f(&Term::lam(m.clone(), None, c.clone()));
            f(&Term::bang(c.clone()));
            for z in [&m, &n] {
                f(&Term::par(z.clone(), m.clone(), n.clone(), c.clone()));
            }
            f(&Term::der(e.clone(), m.clone(), c.clone()));
        });
        let valued = |v: &Term| v.is_value() || Context::is_hole(v);
        for a in 1..k - 1 {
            let b = k - 1 - a;
            let emit = |l: &Term, r: &Term, left_valued: bool, f: &mut dyn FnMut(&Term)| {
                f(&Term::pair(l.clone(), r.clone()));
                if left_valued {
                    for x in [&m, &n, &e] {
                        f(&Term::cut(l.clone(), x.clone(), r.clone()));
                    }
                    for z in [&m, &n] {
                        f(&Term::sub(z.clone(), l.clone(), m.clone(), r.clone()));
                    }
                }
            };
            self.exactly(a, &mut |l| {
                for r in &self.closed[b] {
                    emit(l, r, valued(l), f);
                }
            });
            for l in &self.closed[a] {
                self.exactly(b, &mut |r| emit(l, r, l.is_value(), f));
            }
        }
    }
}
