//! One-hole contexts as (skeleton, hole path) pairs.
//!
//! The skeleton is an ordinary term whose hole is a reserved exponential
//! variable that the parser never produces, so every term operation
//! (printing, alpha-equivalence, potentials) works on contexts unchanged.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::syntax::{plug_spine, NameSupply, Term, Var, VarKind};

/// Child indices from the root. Pairs: 0 left, 1 right; cut and
/// subtraction: 0 value, 1 body; other unary nodes: 0 body.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<u8>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Path {
        let mut p = self.0.clone();
        p.push(i);
        Path(p)
    }

    pub fn join(&self, rest: &Path) -> Path {
        let mut p = self.0.clone();
        p.extend_from_slice(&rest.0);
        Path(p)
    }

    /// Outside-in order: `self` is a prefix of `other`.
    pub fn outer_leq(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn disjoint(&self, other: &Path) -> bool {
        !self.outer_leq(other) && !other.outer_leq(self)
    }
}

impl From<Vec<u8>> for Path {
    fn from(v: Vec<u8>) -> Path {
        Path(v)
    }
}

impl From<&[u8]> for Path {
    fn from(v: &[u8]) -> Path {
        Path(v.to_vec())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid path `{0}`")]
pub struct PathParseError(String);

impl FromStr for Path {
    type Err = PathParseError;

    fn from_str(s: &str) -> Result<Path, PathParseError> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Path::root());
        }
        s.split('.')
            .map(|p| p.parse::<u8>().ok().filter(|&i| i < 2))
            .collect::<Option<Vec<u8>>>()
            .map(Path)
            .ok_or_else(|| PathParseError(s.to_string()))
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Path, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("path {path} does not address a node of {term}")]
pub struct InvalidPath {
    pub path: Path,
    pub term: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Goodness {
    Good,
    Bad,
}

/// A term with exactly one hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    skeleton: Term,
    hole: Path,
}

const HOLE_NAME: &str = "<>";

impl Context {
    pub fn hole_var() -> Var {
        Var::new(HOLE_NAME, VarKind::Exponential)
    }

    pub fn is_hole(t: &Term) -> bool {
        matches!(t, Term::Var(x) if x.name() == HOLE_NAME)
    }

    /// The empty context.
    pub fn empty() -> Context {
        Context { skeleton: Term::Var(Context::hole_var()), hole: Path::root() }
    }

    /// Locate the unique hole of `skeleton`.
    pub fn from_skeleton(skeleton: Term) -> Option<Context> {
        let mut found = Vec::new();
        skeleton.walk(&mut |p, n| {
            if Context::is_hole(n) {
                found.push(Path::from(p));
            }
        });
        if found.len() == 1 {
            let hole = found.pop().expect("one hole");
            Some(Context { skeleton, hole })
        } else {
            None
        }
    }

    pub fn skeleton(&self) -> &Term {
        &self.skeleton
    }

    pub fn hole_path(&self) -> &Path {
        &self.hole
    }

    /// Plug `t` into the hole, possibly capturing its free variables. A
    /// non-value plugged directly into a cut or subtraction value slot is
    /// split and its left part hoisted above that cut or subtraction.
    pub fn plug(&self, t: &Term) -> Term {
        plug_at(&self.skeleton, self.hole.as_slice(), t.clone())
    }

    /// Plug after freshening the binders above the hole that would capture
    /// free variables of `t`.
    pub fn plug_avoid(&self, t: &Term) -> Term {
        let fv = t.fv();
        let mut supply = NameSupply::for_term(&self.skeleton);
        supply.reserve_term(t);
        let mut skel = self.skeleton.clone();
        for depth in 0..self.hole.len() {
            let (prefix, rest) = self.hole.0.split_at(depth);
            let node = skel.subterm_mut(prefix).expect("hole path is valid");
            let i = rest[0] as usize;
            let captured: Vec<Var> =
                node.binders_for_child(i).into_iter().filter(|x| fv.contains(x)).cloned().collect();
            for x in captured {
                let y = supply.fresh(&x);
                rename_binder(node, &x, &y);
            }
        }
        plug_at(&skel, self.hole.as_slice(), t.clone())
    }

    /// `self⟨inner⟩` as a context.
    pub fn compose(&self, inner: &Context) -> Context {
        Context::from_skeleton(self.plug(&inner.skeleton)).expect("composition keeps one hole")
    }

    pub fn dfv(&self) -> BTreeSet<Var> {
        dfv_at(&self.skeleton, self.hole.as_slice())
    }

    pub fn classify(&self) -> Goodness {
        classify_at(&self.skeleton, self.hole.as_slice())
    }

    pub fn is_good(&self) -> bool {
        self.classify() == Goodness::Good
    }

    /// Hole at level 0: never below a promotion.
    pub fn is_mul_context(&self) -> bool {
        is_mul_position(&self.skeleton, self.hole.as_slice())
    }

    /// Hole under the bodies of left constructors only.
    pub fn is_left_context(&self) -> bool {
        let mut cur = &self.skeleton;
        for &i in self.hole.as_slice() {
            let body = match cur {
                Term::Cut { .. } | Term::Sub { .. } => 1,
                Term::Par { .. } | Term::Der { .. } => 0,
                _ => return false,
            };
            if i != body {
                return false;
            }
            cur = cur.child(i as usize).expect("hole path is valid");
        }
        true
    }

    /// The hole itself, or a context whose root is a value constructor.
    pub fn is_value_context(&self) -> bool {
        self.hole.is_empty() || self.skeleton.is_value()
    }

    /// Potential of the hole, seen as a fresh exponential variable.
    pub fn potential(&self) -> Result<u64, crate::measures::Overflow> {
        crate::measures::potential(&self.skeleton, &Context::hole_var())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.skeleton.fmt(f)
    }
}

/// Decompose `t` at `p` into the surrounding context and the sub-term.
pub fn ctx_at(t: &Term, p: &Path) -> Result<(Context, Term), InvalidPath> {
    let mut skeleton = t.clone();
    let slot =
        skeleton.subterm_mut(p.as_slice()).ok_or_else(|| InvalidPath { path: p.clone(), term: t.to_string() })?;
    let sub = std::mem::replace(slot, Term::Var(Context::hole_var()));
    Ok((Context { skeleton, hole: p.clone() }, sub))
}

fn plug_at(skel: &Term, path: &[u8], t: Term) -> Term {
    let Some((&last, parent_path)) = path.split_last() else {
        return t;
    };
    let mut out = skel.clone();
    let parent = out.subterm_mut(parent_path).expect("hole path is valid");
    let value_slot = last == 0 && matches!(parent, Term::Cut { .. } | Term::Sub { .. });
    if value_slot && !t.is_value() {
        let split = t.into_split();
        *parent.child_mut(0).expect("value slot") = split.head;
        let node = std::mem::replace(parent, Term::Var(Context::hole_var()));
        *parent = plug_spine(split.spine, node);
    } else {
        *parent.child_mut(last as usize).expect("hole path is valid") = t;
    }
    out
}

/// Rename the binder `x` of `node` to `y` (fresh), in every child it scopes over.
fn rename_binder(node: &mut Term, x: &Var, y: &Var) {
    for i in 0..node.arity() {
        if node.binders_for_child(i).contains(&x) {
            let c = node.child_mut(i).expect("arity");
            *c = c.rename_free(x, y);
        }
    }
    match node {
        Term::Lam { binder, .. } | Term::Cut { binder, .. } | Term::Sub { binder, .. } | Term::Der { binder, .. } => {
            if binder == x {
                *binder = y.clone();
            }
        }
        Term::Par { left, right, .. } => {
            if left == x {
                *left = y.clone();
            } else if right == x {
                *right = y.clone();
            }
        }
        _ => {}
    }
}

/// Whether no promotion lies strictly above `path`.
pub fn is_mul_position(t: &Term, path: &[u8]) -> bool {
    let mut cur = t;
    for &i in path {
        if matches!(cur, Term::Bang(_)) {
            return false;
        }
        cur = match cur.child(i as usize) {
            Some(c) => c,
            None => return false,
        };
    }
    true
}

/// Nodes along `path`, root first, paired with the child index taken.
fn spine_of<'a>(t: &'a Term, path: &[u8]) -> Vec<(&'a Term, u8)> {
    let mut out = Vec::with_capacity(path.len());
    let mut cur = t;
    for &i in path {
        out.push((cur, i));
        cur = cur.child(i as usize).expect("hole path is valid");
    }
    out
}

/// One layer of the dominating-free-variables table: `d` is dfv of the
/// context below `node`, the hole being in child `i`.
fn dfv_step(node: &Term, i: u8, mut d: BTreeSet<Var>) -> BTreeSet<Var> {
    match (node, i) {
        (Term::Pair(..), _) | (Term::Bang(_), _) => d,
        (Term::Lam { binder, .. }, _) => {
            d.remove(binder);
            d
        }
        (Term::Cut { binder, .. }, 1) => {
            d.remove(binder);
            d
        }
        (Term::Cut { .. }, _) => d,
        (Term::Par { conclusion, left, right, .. }, _) => {
            if d.contains(left) || d.contains(right) {
                d.remove(left);
                d.remove(right);
                d.insert(conclusion.clone());
            }
            d
        }
        (Term::Sub { conclusion, .. }, 0) => {
            d.insert(conclusion.clone());
            d
        }
        (Term::Sub { conclusion, binder, .. }, _) | (Term::Der { conclusion, binder, .. }, _) => {
            if d.remove(binder) {
                d.insert(conclusion.clone());
            }
            d
        }
        (Term::Var(_), _) => unreachable!("variables have no children"),
    }
}

/// Dominating free variables of the context of `t` around `path`.
pub fn dfv_at(t: &Term, path: &[u8]) -> BTreeSet<Var> {
    spine_of(t, path).into_iter().rev().fold(BTreeSet::new(), |d, (node, i)| dfv_step(node, i, d))
}

/// Good iff the hole is never in a cut value and no cut on the way down
/// binds a variable dominating the part of the context below it.
pub fn classify_at(t: &Term, path: &[u8]) -> Goodness {
    let mut d = BTreeSet::new();
    for (node, i) in spine_of(t, path).into_iter().rev() {
        if let Term::Cut { binder, .. } = node {
            if i == 0 || d.contains(binder) {
                return Goodness::Bad;
            }
        }
        d = dfv_step(node, i, d);
    }
    Goodness::Good
}
