use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::{Term, Var};

/// Deterministic supply of fresh names: base name plus numeric suffix,
/// avoiding every name it has been told about.
///
/// A supply is meant to live for one operation (one rewriting step, one
/// substitution); it is seeded with all names of the term being rewritten.
#[derive(Debug, Default, Clone)]
pub struct NameSupply {
    taken: HashSet<Arc<str>>,
    next: HashMap<String, u32>,
}

fn base_of(name: &str) -> &str {
    let trimmed = name.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'' || c == '_');
    if trimmed.is_empty() {
        "x"
    } else {
        trimmed
    }
}

impl NameSupply {
    pub fn new() -> NameSupply {
        NameSupply::default()
    }

    pub fn for_term(t: &Term) -> NameSupply {
        let mut s = NameSupply::new();
        s.reserve_term(t);
        s
    }

    pub fn reserve(&mut self, name: &str) {
        self.taken.insert(Arc::from(name));
    }

    pub fn reserve_term(&mut self, t: &Term) {
        let mut names = BTreeSet::new();
        t.all_names(&mut names);
        self.taken.extend(names);
    }

    /// A variable of the same kind as `x`, named after it, never handed out before.
    pub fn fresh(&mut self, x: &Var) -> Var {
        let base = base_of(x.name()).to_string();
        let counter = self.next.entry(base.clone()).or_insert(0);
        loop {
            *counter += 1;
            let candidate = format!("{base}{counter}");
            if !self.taken.contains(candidate.as_str()) {
                let name: Arc<str> = Arc::from(candidate);
                self.taken.insert(name.clone());
                return x.with_name(name);
            }
        }
    }

    /// Rename binders so that every binder is distinct from every other
    /// binder, from the free variables of `t`, and from `avoid`. Binders
    /// that already satisfy this keep their names.
    pub fn freshen_binders(&mut self, t: &Term, avoid: &[Var]) -> Term {
        let mut seen: HashSet<Arc<str>> = t.fv().into_iter().map(|x| x.name.clone()).collect();
        seen.extend(avoid.iter().map(|x| x.name.clone()));
        let mut env = Vec::new();
        self.go(t, &mut seen, &mut env)
    }

    /// Rename all binders of `t` to never-seen names (used for copies).
    pub fn rename_all_binders(&mut self, t: &Term) -> Term {
        let mut env = Vec::new();
        let mut seen = AlwaysFresh;
        self.go_with(t, &mut seen, &mut env)
    }

    fn go(&mut self, t: &Term, seen: &mut HashSet<Arc<str>>, env: &mut Vec<(Var, Var)>) -> Term {
        self.go_with(t, seen, env)
    }

    fn go_with(&mut self, t: &Term, seen: &mut impl Seen, env: &mut Vec<(Var, Var)>) -> Term {
        let resolve = |env: &Vec<(Var, Var)>, x: &Var| {
            env.iter().rev().find(|(k, _)| k == x).map_or_else(|| x.clone(), |(_, v)| v.clone())
        };
        match t {
            Term::Var(x) => Term::Var(resolve(env, x)),
            Term::Pair(a, b) => {
                let a = self.go_with(a, seen, env);
                Term::pair(a, self.go_with(b, seen, env))
            }
            Term::Bang(b) => Term::bang(self.go_with(b, seen, env)),
            Term::Lam { binder, annot, body } => {
                let y = self.bind(binder, seen);
                env.push((binder.clone(), y.clone()));
                let body = self.go_with(body, seen, env);
                env.pop();
                Term::lam(y, annot.clone(), body)
            }
            Term::Cut { value, binder, body } => {
                let v = self.go_with(value, seen, env);
                let y = self.bind(binder, seen);
                env.push((binder.clone(), y.clone()));
                let body = self.go_with(body, seen, env);
                env.pop();
                Term::cut(v, y, body)
            }
            Term::Par { conclusion, left, right, body } => {
                let m = resolve(env, conclusion);
                let l = self.bind(left, seen);
                let r = self.bind(right, seen);
                env.push((left.clone(), l.clone()));
                env.push((right.clone(), r.clone()));
                let body = self.go_with(body, seen, env);
                env.truncate(env.len() - 2);
                Term::par(m, l, r, body)
            }
            Term::Sub { conclusion, value, binder, body } => {
                let m = resolve(env, conclusion);
                let v = self.go_with(value, seen, env);
                let y = self.bind(binder, seen);
                env.push((binder.clone(), y.clone()));
                let body = self.go_with(body, seen, env);
                env.pop();
                Term::sub(m, v, y, body)
            }
            Term::Der { conclusion, binder, body } => {
                let e = resolve(env, conclusion);
                let y = self.bind(binder, seen);
                env.push((binder.clone(), y.clone()));
                let body = self.go_with(body, seen, env);
                env.pop();
                Term::der(e, y, body)
            }
        }
    }

    fn bind(&mut self, x: &Var, seen: &mut impl Seen) -> Var {
        if seen.claim(&x.name) {
            x.clone()
        } else {
            let y = self.fresh(x);
            seen.claim(&y.name);
            y
        }
    }
}

trait Seen {
    /// Try to claim a name; false when it is already in use.
    fn claim(&mut self, name: &Arc<str>) -> bool;
}

impl Seen for HashSet<Arc<str>> {
    fn claim(&mut self, name: &Arc<str>) -> bool {
        self.insert(name.clone())
    }
}

struct AlwaysFresh;

impl Seen for AlwaysFresh {
    fn claim(&mut self, _: &Arc<str>) -> bool {
        false
    }
}
