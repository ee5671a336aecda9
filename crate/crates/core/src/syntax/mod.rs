//! Proof terms of the exponential substitution calculus.
//!
//! Terms come in two syntactic classes. *Values* are the decorations of
//! axioms and right rules (variables, tensor pairs, abstractions and
//! promotions); the remaining constructors decorate left rules (cut, par,
//! subtraction, dereliction) and carry a body in which they bind.
//!
//! Cuts and subtractions are *split*: their left slot always holds a value.
//! Every term therefore decomposes uniquely as a stack of left
//! constructors around a value, see [`Term::split`].

mod fresh;
mod parse;
mod print;
mod proper;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::typing::Formula;

pub use fresh::NameSupply;
pub use parse::{parse_context, parse_term, ParseError, ParseErrorKind};
pub(crate) use parse::{parse_formula, Parser};
pub use proper::ProperError;

/// The two disjoint kinds of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    Multiplicative,
    Exponential,
}

impl VarKind {
    /// Surface convention: identifiers starting with `e`, `f` or `g` are
    /// exponential, everything else is multiplicative.
    pub fn of_name(name: &str) -> VarKind {
        match name.chars().next() {
            Some('e' | 'f' | 'g') => VarKind::Exponential,
            _ => VarKind::Multiplicative,
        }
    }
}

/// A named variable with a fixed kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    kind: VarKind,
}

impl Var {
    pub fn new(name: impl Into<Arc<str>>, kind: VarKind) -> Var {
        Var { name: name.into(), kind }
    }

    /// Variable whose kind follows the first-letter convention.
    pub fn named(name: &str) -> Var {
        Var::new(name, VarKind::of_name(name))
    }

    pub fn mul(name: &str) -> Var {
        Var::new(name, VarKind::Multiplicative)
    }

    pub fn exp(name: &str) -> Var {
        Var::new(name, VarKind::Exponential)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn is_mul(&self) -> bool {
        self.kind == VarKind::Multiplicative
    }

    pub fn is_exp(&self) -> bool {
        self.kind == VarKind::Exponential
    }

    pub(crate) fn with_name(&self, name: impl Into<Arc<str>>) -> Var {
        Var { name: name.into(), kind: self.kind }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A proof term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Pair(Box<Term>, Box<Term>),
    Lam { binder: Var, annot: Option<Formula>, body: Box<Term> },
    Bang(Box<Term>),
    Cut { value: Box<Term>, binder: Var, body: Box<Term> },
    Par { conclusion: Var, left: Var, right: Var, body: Box<Term> },
    Sub { conclusion: Var, value: Box<Term>, binder: Var, body: Box<Term> },
    Der { conclusion: Var, binder: Var, body: Box<Term> },
}

/// Free variables of a term, split by kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub all: BTreeSet<Var>,
    pub mul: BTreeSet<Var>,
    pub exp: BTreeSet<Var>,
}

/// One left-constructor layer of a split term, without its body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layer {
    Cut { value: Term, binder: Var },
    Par { conclusion: Var, left: Var, right: Var },
    Sub { conclusion: Var, value: Term, binder: Var },
    Der { conclusion: Var, binder: Var },
}

impl Layer {
    /// Close the layer around `body`.
    pub fn wrap(self, body: Term) -> Term {
        let body = Box::new(body);
        match self {
            Layer::Cut { value, binder } => Term::Cut { value: Box::new(value), binder, body },
            Layer::Par { conclusion, left, right } => Term::Par { conclusion, left, right, body },
            Layer::Sub { conclusion, value, binder } => Term::Sub { conclusion, value: Box::new(value), binder, body },
            Layer::Der { conclusion, binder } => Term::Der { conclusion, binder, body },
        }
    }
}

/// The unique decomposition of a term into a left context and a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// Outermost layer first.
    pub spine: Vec<Layer>,
    pub head: Term,
}

impl Split {
    pub fn replug(self) -> Term {
        plug_spine(self.spine, self.head)
    }
}

/// Wrap `head` in `spine`, outermost layer first.
pub fn plug_spine(spine: Vec<Layer>, head: Term) -> Term {
    spine.into_iter().rev().fold(head, |acc, layer| layer.wrap(acc))
}

impl Term {
    pub fn var(x: Var) -> Term {
        Term::Var(x)
    }

    /// Variable term named by the surface convention.
    pub fn named(name: &str) -> Term {
        Term::Var(Var::named(name))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn lam(binder: Var, annot: Option<Formula>, body: Term) -> Term {
        Term::Lam { binder, annot, body: Box::new(body) }
    }

    pub fn bang(body: Term) -> Term {
        Term::Bang(Box::new(body))
    }

    pub fn cut(value: Term, binder: Var, body: Term) -> Term {
        Term::Cut { value: Box::new(value), binder, body: Box::new(body) }
    }

    pub fn par(conclusion: Var, left: Var, right: Var, body: Term) -> Term {
        Term::Par { conclusion, left, right, body: Box::new(body) }
    }

    pub fn sub(conclusion: Var, value: Term, binder: Var, body: Term) -> Term {
        Term::Sub { conclusion, value: Box::new(value), binder, body: Box::new(body) }
    }

    pub fn der(conclusion: Var, binder: Var, body: Term) -> Term {
        Term::Der { conclusion, binder, body: Box::new(body) }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Pair(..) | Term::Lam { .. } | Term::Bang(_))
    }

    /// Exponential values are exponential variables and promotions.
    pub fn is_exp_value(&self) -> bool {
        match self {
            Term::Var(x) => x.is_exp(),
            Term::Bang(_) => true,
            _ => false,
        }
    }

    /// Multiplicative values are multiplicative variables, pairs and abstractions.
    pub fn is_mul_value(&self) -> bool {
        match self {
            Term::Var(x) => x.is_mul(),
            Term::Pair(..) | Term::Lam { .. } => true,
            _ => false,
        }
    }

    pub fn is_left(&self) -> bool {
        !self.is_value()
    }

    /// Number of children addressable by a path.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Lam { .. } | Term::Bang(_) | Term::Par { .. } | Term::Der { .. } => 1,
            Term::Pair(..) | Term::Cut { .. } | Term::Sub { .. } => 2,
        }
    }

    /// Child `i` in path numbering: pairs 0/1, cut and sub 0 = value and
    /// 1 = body, unary constructors 0 = body.
    pub fn child(&self, i: usize) -> Option<&Term> {
        match (self, i) {
            (Term::Pair(a, _), 0) => Some(a),
            (Term::Pair(_, b), 1) => Some(b),
            (Term::Lam { body, .. }, 0)
            | (Term::Bang(body), 0)
            | (Term::Par { body, .. }, 0)
            | (Term::Der { body, .. }, 0) => Some(body),
            (Term::Cut { value, .. }, 0) | (Term::Sub { value, .. }, 0) => Some(value),
            (Term::Cut { body, .. }, 1) | (Term::Sub { body, .. }, 1) => Some(body),
            _ => None,
        }
    }

    pub fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        match (self, i) {
            (Term::Pair(a, _), 0) => Some(a),
            (Term::Pair(_, b), 1) => Some(b),
            (Term::Lam { body, .. }, 0)
            | (Term::Bang(body), 0)
            | (Term::Par { body, .. }, 0)
            | (Term::Der { body, .. }, 0) => Some(body),
            (Term::Cut { value, .. }, 0) | (Term::Sub { value, .. }, 0) => Some(value),
            (Term::Cut { body, .. }, 1) | (Term::Sub { body, .. }, 1) => Some(body),
            _ => None,
        }
    }

    /// Variables bound by this node in child `i`.
    pub fn binders_for_child(&self, i: usize) -> Vec<&Var> {
        match (self, i) {
            (Term::Lam { binder, .. }, 0) | (Term::Der { binder, .. }, 0) => vec![binder],
            (Term::Cut { binder, .. }, 1) | (Term::Sub { binder, .. }, 1) => vec![binder],
            (Term::Par { left, right, .. }, 0) => vec![left, right],
            _ => vec![],
        }
    }

    /// The free occurrence this node contributes itself, if any: a
    /// variable, or the conclusion of a par, subtraction or dereliction.
    pub fn own_occurrence(&self) -> Option<&Var> {
        match self {
            Term::Var(x) => Some(x),
            Term::Par { conclusion, .. } | Term::Sub { conclusion, .. } | Term::Der { conclusion, .. } => {
                Some(conclusion)
            }
            _ => None,
        }
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut all = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut all);
        let (mul, exp) = all.iter().cloned().partition(|x: &Var| x.is_mul());
        FreeVars { all, mul, exp }
    }

    pub fn fv(&self) -> BTreeSet<Var> {
        self.free_vars().all
    }

    pub fn mfv(&self) -> BTreeSet<Var> {
        self.free_vars().mul
    }

    pub fn efv(&self) -> BTreeSet<Var> {
        self.free_vars().exp
    }

    pub fn is_free(&self, x: &Var) -> bool {
        self.occ_count(x) > 0
    }

    /// Number of free occurrences of `x`, conclusions included.
    pub fn occ_count(&self, x: &Var) -> usize {
        let own = usize::from(self.own_occurrence() == Some(x));
        own + (0..self.arity())
            .map(
                |i| {
                    if self.binders_for_child(i).contains(&x) {
                        0
                    } else {
                        self.child(i).map_or(0, |c| c.occ_count(x))
                    }
                },
            )
            .sum::<usize>()
    }

    /// Constructor count. Variable occurrences count one each, including
    /// the conclusions of par, subtraction and dereliction; binders do not.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Pair(a, b) => 1 + a.size() + b.size(),
            Term::Lam { body, .. } | Term::Bang(body) => 1 + body.size(),
            Term::Cut { value, body, .. } => 1 + value.size() + body.size(),
            Term::Par { body, .. } | Term::Der { body, .. } => 2 + body.size(),
            Term::Sub { value, body, .. } => 2 + value.size() + body.size(),
        }
    }

    /// Paths of the free occurrences of `x`, in pre-order. A par,
    /// subtraction or dereliction whose conclusion is `x` is an occurrence.
    pub fn free_occurrences(&self, x: &Var) -> Vec<Vec<u8>> {
        fn go(t: &Term, x: &Var, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if t.own_occurrence() == Some(x) {
                out.push(path.clone());
            }
            for i in 0..t.arity() {
                if !t.binders_for_child(i).contains(&x) {
                    path.push(i as u8);
                    go(t.child(i).expect("arity"), x, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, x, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_cut_free(&self) -> bool {
        match self {
            Term::Cut { .. } => false,
            _ => (0..self.arity()).all(|i| self.child(i).is_some_and(Term::is_cut_free)),
        }
    }

    /// Peel left constructors until a value is reached.
    pub fn split(&self) -> Split {
        self.clone().into_split()
    }

    pub fn into_split(self) -> Split {
        let mut spine = Vec::new();
        let mut cur = self;
        loop {
            cur = match cur {
                Term::Cut { value, binder, body } => {
                    spine.push(Layer::Cut { value: *value, binder });
                    *body
                }
                Term::Par { conclusion, left, right, body } => {
                    spine.push(Layer::Par { conclusion, left, right });
                    *body
                }
                Term::Sub { conclusion, value, binder, body } => {
                    spine.push(Layer::Sub { conclusion, value: *value, binder });
                    *body
                }
                Term::Der { conclusion, binder, body } => {
                    spine.push(Layer::Der { conclusion, binder });
                    *body
                }
                head => return Split { spine, head },
            }
        }
    }

    /// Alpha-equivalence; lambda annotations are ignored.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha::eq(self, other)
    }

    /// A representative of the alpha class: bound variables renamed by
    /// binding order, annotations dropped. Two terms are alpha-equivalent
    /// iff their canonical forms are structurally equal.
    pub fn canonical(&self) -> Term {
        alpha::canonical(self)
    }

    pub fn is_proper(&self) -> bool {
        proper::check(self).is_ok()
    }

    /// Properness with the first violated clause as diagnostic.
    pub fn check_proper(&self) -> Result<(), ProperError> {
        proper::check(self)
    }

    /// Capture-avoiding renaming `t{n/m}` of the free occurrences of `m`,
    /// conclusions included.
    pub fn rename_mul(&self, m: &Var, n: &Var) -> Result<Term, RenameError> {
        if !m.is_mul() || !n.is_mul() {
            return Err(RenameError::KindMismatch { from: m.clone(), to: n.clone() });
        }
        Ok(self.rename_free(m, n))
    }

    /// Kind-agnostic capture-avoiding renaming of free `from` into `to`.
    pub(crate) fn rename_free(&self, from: &Var, to: &Var) -> Term {
        if from == to || !self.is_free(from) {
            return self.clone();
        }
        let mut supply = NameSupply::for_term(self);
        supply.reserve(to.name());
        let mut t = supply.freshen_binders(self, &[to.clone(), from.clone()]);
        rename_in_place(&mut t, from, to);
        t
    }

    /// Rename every binder that clashes with a free variable, another
    /// binder, or one of `avoid`. Terms already in that shape are
    /// returned unchanged, so paths stay valid either way.
    pub fn barendregt(&self, avoid: &[Var]) -> Term {
        let mut supply = NameSupply::for_term(self);
        for x in avoid {
            supply.reserve(x.name());
        }
        supply.freshen_binders(self, avoid)
    }

    /// All variable names occurring anywhere, binders included.
    pub fn all_names(&self, out: &mut BTreeSet<Arc<str>>) {
        if let Some(x) = self.own_occurrence() {
            out.insert(x.name.clone());
        }
        match self {
            Term::Lam { binder, .. }
            | Term::Cut { binder, .. }
            | Term::Sub { binder, .. }
            | Term::Der { binder, .. } => {
                out.insert(binder.name.clone());
            }
            Term::Par { left, right, .. } => {
                out.insert(left.name.clone());
                out.insert(right.name.clone());
            }
            _ => {}
        }
        for i in 0..self.arity() {
            if let Some(c) = self.child(i) {
                c.all_names(out);
            }
        }
    }

    /// Lambda annotations removed.
    pub fn erase_annotations(&self) -> Term {
        let mut t = self.clone();
        t.visit_mut(&mut |n| {
            if let Term::Lam { annot, .. } = n {
                *annot = None;
            }
        });
        t
    }

    pub(crate) fn visit_mut(&mut self, f: &mut impl FnMut(&mut Term)) {
        f(self);
        for i in 0..self.arity() {
            if let Some(c) = self.child_mut(i) {
                c.visit_mut(f);
            }
        }
    }

    /// Pre-order walk with paths.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&[u8], &'a Term)) {
        fn go<'a>(t: &'a Term, path: &mut Vec<u8>, f: &mut impl FnMut(&[u8], &'a Term)) {
            f(path, t);
            for i in 0..t.arity() {
                path.push(i as u8);
                go(t.child(i).expect("arity"), path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    pub fn subterm(&self, path: &[u8]) -> Option<&Term> {
        path.iter().try_fold(self, |t, &i| t.child(i as usize))
    }

    pub fn subterm_mut(&mut self, path: &[u8]) -> Option<&mut Term> {
        path.iter().try_fold(self, |t, &i| t.child_mut(i as usize))
    }

    /// Variables bound on the way from the root to `path`, outermost first.
    pub fn binders_along(&self, path: &[u8]) -> Vec<Var> {
        let mut out = Vec::new();
        let mut cur = self;
        for &i in path {
            out.extend(cur.binders_for_child(i as usize).into_iter().cloned());
            match cur.child(i as usize) {
                Some(c) => cur = c,
                None => break,
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenameError {
    #[error("cannot rename {from} into {to}: both must be multiplicative")]
    KindMismatch { from: Var, to: Var },
}

fn collect_free(t: &Term, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    if let Some(x) = t.own_occurrence() {
        if !bound.contains(x) {
            out.insert(x.clone());
        }
    }
    for i in 0..t.arity() {
        let bs = t.binders_for_child(i);
        let n = bs.len();
        bound.extend(bs.into_iter().cloned());
        collect_free(t.child(i).expect("arity"), bound, out);
        bound.truncate(bound.len() - n);
    }
}

/// Rename free occurrences assuming no binder of `t` is named `to`.
fn rename_in_place(t: &mut Term, from: &Var, to: &Var) {
    match t {
        Term::Var(x) => {
            if x == from {
                *x = to.clone();
            }
            return;
        }
        Term::Par { conclusion, .. } | Term::Sub { conclusion, .. } | Term::Der { conclusion, .. }
            if conclusion == from =>
        {
            *conclusion = to.clone();
        }
        _ => {}
    }
    for i in 0..t.arity() {
        if t.binders_for_child(i).contains(&from) {
            continue;
        }
        rename_in_place(t.child_mut(i).expect("arity"), from, to);
    }
}

mod alpha {
    use super::*;

    pub(super) fn eq(a: &Term, b: &Term) -> bool {
        go(a, b, &mut Vec::new())
    }

    fn lookup(env: &[(Var, Var)], x: &Var, y: &Var) -> bool {
        let i = env.iter().rposition(|(l, _)| l == x);
        let j = env.iter().rposition(|(_, r)| r == y);
        match (i, j) {
            (None, None) => x == y,
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }

    fn bind<R>(env: &mut Vec<(Var, Var)>, pairs: &[(&Var, &Var)], k: impl FnOnce(&mut Vec<(Var, Var)>) -> R) -> R {
        for (x, y) in pairs {
            env.push(((*x).clone(), (*y).clone()));
        }
        let r = k(env);
        env.truncate(env.len() - pairs.len());
        r
    }

    fn go(a: &Term, b: &Term, env: &mut Vec<(Var, Var)>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => lookup(env, x, y),
            (Term::Pair(a1, a2), Term::Pair(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
            (Term::Lam { binder: x, body: s, .. }, Term::Lam { binder: y, body: u, .. }) => {
                x.kind == y.kind && bind(env, &[(x, y)], |env| go(s, u, env))
            }
            (Term::Bang(s), Term::Bang(u)) => go(s, u, env),
            (Term::Cut { value: v1, binder: x, body: s }, Term::Cut { value: v2, binder: y, body: u }) => {
                x.kind == y.kind && go(v1, v2, env) && bind(env, &[(x, y)], |env| go(s, u, env))
            }
            (
                Term::Par { conclusion: m1, left: x1, right: y1, body: s },
                Term::Par { conclusion: m2, left: x2, right: y2, body: u },
            ) => {
                lookup(env, m1, m2)
                    && x1.kind == x2.kind
                    && y1.kind == y2.kind
                    && bind(env, &[(x1, x2), (y1, y2)], |env| go(s, u, env))
            }
            (
                Term::Sub { conclusion: m1, value: v1, binder: x, body: s },
                Term::Sub { conclusion: m2, value: v2, binder: y, body: u },
            ) => {
                lookup(env, m1, m2) && x.kind == y.kind && go(v1, v2, env) && bind(env, &[(x, y)], |env| go(s, u, env))
            }
            (Term::Der { conclusion: e1, binder: x, body: s }, Term::Der { conclusion: e2, binder: y, body: u }) => {
                lookup(env, e1, e2) && x.kind == y.kind && bind(env, &[(x, y)], |env| go(s, u, env))
            }
            _ => false,
        }
    }

    pub(super) fn canonical(t: &Term) -> Term {
        let mut counter = 0usize;
        canon(t, &mut Vec::new(), &mut counter)
    }

    fn resolve(env: &[(Var, Var)], x: &Var) -> Var {
        env.iter().rev().find(|(k, _)| k == x).map_or_else(|| x.clone(), |(_, v)| v.clone())
    }

    fn fresh(x: &Var, counter: &mut usize) -> Var {
        *counter += 1;
        x.with_name(format!("#{counter}"))
    }

    fn canon(t: &Term, env: &mut Vec<(Var, Var)>, c: &mut usize) -> Term {
        match t {
            Term::Var(x) => Term::Var(resolve(env, x)),
            Term::Pair(a, b) => Term::pair(canon(a, env, c), canon(b, env, c)),
            Term::Lam { binder, body, .. } => {
                let y = fresh(binder, c);
                env.push((binder.clone(), y.clone()));
                let body = canon(body, env, c);
                env.pop();
                Term::lam(y, None, body)
            }
            Term::Bang(b) => Term::bang(canon(b, env, c)),
            Term::Cut { value, binder, body } => {
                let v = canon(value, env, c);
                let y = fresh(binder, c);
                env.push((binder.clone(), y.clone()));
                let body = canon(body, env, c);
                env.pop();
                Term::cut(v, y, body)
            }
            Term::Par { conclusion, left, right, body } => {
                let m = resolve(env, conclusion);
                let l = fresh(left, c);
                let r = fresh(right, c);
                env.push((left.clone(), l.clone()));
                env.push((right.clone(), r.clone()));
                let body = canon(body, env, c);
                env.truncate(env.len() - 2);
                Term::par(m, l, r, body)
            }
            Term::Sub { conclusion, value, binder, body } => {
                let m = resolve(env, conclusion);
                let v = canon(value, env, c);
                let y = fresh(binder, c);
                env.push((binder.clone(), y.clone()));
                let body = canon(body, env, c);
                env.pop();
                Term::sub(m, v, y, body)
            }
            Term::Der { conclusion, binder, body } => {
                let e = resolve(env, conclusion);
                let y = fresh(binder, c);
                env.push((binder.clone(), y.clone()));
                let body = canon(body, env, c);
                env.pop();
                Term::der(e, y, body)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn names(set: &BTreeSet<Var>) -> Vec<&str> {
        set.iter().map(Var::name).collect()
    }

    #[test]
    fn free_vars_count_conclusions() {
        let fv = t("der{e>m} (m, e)").free_vars();
        assert_eq!(names(&fv.all), ["e"]);
        assert!(fv.mul.is_empty());
        assert_eq!(names(&fv.exp), ["e"]);

        assert!(t("\\m. m").free_vars().all.is_empty());

        let fv = t("sub{m; f > n} n").free_vars();
        assert_eq!(names(&fv.all), ["f", "m"]);
        assert_eq!(names(&fv.mul), ["m"]);
        assert_eq!(names(&fv.exp), ["f"]);
    }

    #[test]
    fn occurrences() {
        assert_eq!(t("der{e>m}(m,e)").occ_count(&Var::exp("e")), 2);
        assert_eq!(t("m").occ_count(&Var::mul("m")), 1);
        assert_eq!(t("\\m. m").occ_count(&Var::mul("m")), 0);
    }

    #[test]
    fn sizes() {
        assert_eq!(t("m").size(), 1);
        assert_eq!(t("(m,n)").size(), 3);
        assert_eq!(t("cut{n>m} m").size(), 3);
        assert_eq!(t("!(der{e1>m} der{e1>n}(m,n))").size(), 8);
    }

    #[test]
    fn alpha() {
        assert!(t("\\m. m").alpha_eq(&t("\\n. n")));
        assert!(!t("\\m. m").alpha_eq(&t("\\e. e")));
        assert!(t("cut{n>m} m").alpha_eq(&t("cut{n>o} o")));
        assert!(!t("cut{n>m} m").alpha_eq(&t("cut{o>m} m")));
        assert!(t("\\m:X. m").alpha_eq(&t("\\n. n")));
        assert!(t("par{m>x,y}(x,y)").alpha_eq(&t("par{m>a,b}(a,b)")));
        assert!(!t("par{m>x,y}(x,y)").alpha_eq(&t("par{m>a,b}(b,a)")));
        // a free variable never matches a bound one
        assert!(!t("\\m. n").alpha_eq(&t("\\n. n")));
    }

    #[test]
    fn canonical_agrees_with_alpha_eq() {
        let pairs = [
            ("cut{n>m} m", "cut{n>o} o", true),
            ("\\m. \\n. (m, n)", "\\a. \\b. (a, b)", true),
            ("\\m. \\n. (m, n)", "\\a. \\b. (b, a)", false),
            ("der{e>x} cut{x>y} y", "der{e>z} cut{z>w} w", true),
        ];
        for (a, b, expected) in pairs {
            assert_eq!(t(a).canonical() == t(b).canonical(), expected, "{a} vs {b}");
            assert_eq!(t(a).alpha_eq(&t(b)), expected);
        }
    }

    #[test]
    fn split_examples() {
        let s = t("der{e>m} cut{(m,n)>o} o").split();
        assert_eq!(s.spine.len(), 2);
        assert_eq!(s.head, t("o"));
        assert!(matches!(s.spine[0], Layer::Der { .. }));
        assert!(matches!(s.spine[1], Layer::Cut { .. }));

        let s = t("(m, n)").split();
        assert!(s.spine.is_empty());
        assert_eq!(s.head, t("(m,n)"));

        let s = t("cut{!e>f} der{f>m} m").split();
        assert_eq!(s.spine.len(), 2);
        assert_eq!(s.head, t("m"));
    }

    #[test]
    fn rename_examples() {
        let (m, n) = (Var::mul("m"), Var::mul("n"));
        assert_eq!(t("par{m>x,y}(x,y)").rename_mul(&m, &n).unwrap(), t("par{n>x,y}(x,y)"));
        assert_eq!(t("m").rename_mul(&m, &n).unwrap(), t("n"));
        assert_eq!(t("\\m. m").rename_mul(&m, &n).unwrap(), t("\\m. m"));
        assert!(t("m").rename_mul(&m, &Var::exp("e")).is_err());
        // the binder n would capture: it gets freshened
        let r = t("(m, \\n. n)").rename_mul(&m, &n).unwrap();
        assert!(r.alpha_eq(&t("(n, \\k. k)")));
        assert!(!r.alpha_eq(&t("(n, \\n. m)")));
    }

    #[test]
    fn barendregt_keeps_clean_terms() {
        let s = t("cut{n>m} (m, \\o. o)");
        assert_eq!(s.barendregt(&[]), s);
        let dirty = t("(\\m. m, \\m. m)");
        let clean = dirty.barendregt(&[]);
        assert!(clean.alpha_eq(&dirty));
        assert_ne!(clean, dirty);
    }
}
