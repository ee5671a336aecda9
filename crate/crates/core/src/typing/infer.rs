use std::fmt;
use std::sync::Arc;

use super::{Formula, TypeError, TypingContext};
use crate::contexts::Path;
use crate::syntax::{Term, Var};

#[derive(Debug, Clone)]
enum Ty {
    Meta(usize),
    Atom(Arc<str>),
    Tensor(Box<Ty>, Box<Ty>),
    Lolli(Box<Ty>, Box<Ty>),
    Bang(Box<Ty>),
}

impl Ty {
    fn of(a: &Formula) -> Ty {
        match a {
            Formula::Atom(x) => Ty::Atom(x.clone()),
            Formula::Tensor(a, b) => Ty::Tensor(Box::new(Ty::of(a)), Box::new(Ty::of(b))),
            Formula::Lolli(a, b) => Ty::Lolli(Box::new(Ty::of(a)), Box::new(Ty::of(b))),
            Formula::Bang(a) => Ty::Bang(Box::new(Ty::of(a))),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Meta(i) => write!(f, "?{i}"),
            Ty::Atom(a) => f.write_str(a),
            Ty::Tensor(a, b) => write!(f, "({a} * {b})"),
            Ty::Lolli(a, b) => write!(f, "({a} -o {b})"),
            Ty::Bang(a) => write!(f, "!{a}"),
        }
    }
}

struct Infer {
    metas: Vec<Option<Ty>>,
    /// Multiplicative binders, checked non-bang once everything is solved.
    mul_vars: Vec<(Var, Ty)>,
    /// Binder type of every lambda, in pre-order.
    lambdas: Vec<Ty>,
    path: Vec<u8>,
}

impl Infer {
    fn fresh(&mut self) -> Ty {
        self.metas.push(None);
        Ty::Meta(self.metas.len() - 1)
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut cur = t.clone();
        while let Ty::Meta(i) = cur {
            match &self.metas[i] {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match self.shallow(t) {
            Ty::Tensor(a, b) => Ty::Tensor(Box::new(self.resolve(&a)), Box::new(self.resolve(&b))),
            Ty::Lolli(a, b) => Ty::Lolli(Box::new(self.resolve(&a)), Box::new(self.resolve(&b))),
            Ty::Bang(a) => Ty::Bang(Box::new(self.resolve(&a))),
            other => other,
        }
    }

    fn to_formula(&self, t: &Ty) -> Formula {
        match self.shallow(t) {
            Ty::Meta(_) => Formula::atom("X"),
            Ty::Atom(a) => Formula::Atom(a),
            Ty::Tensor(a, b) => Formula::tensor(self.to_formula(&a), self.to_formula(&b)),
            Ty::Lolli(a, b) => Formula::lolli(self.to_formula(&a), self.to_formula(&b)),
            Ty::Bang(a) => Formula::bang(self.to_formula(&a)),
        }
    }

    fn occurs(&self, i: usize, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Meta(j) => i == j,
            Ty::Atom(_) => false,
            Ty::Tensor(a, b) | Ty::Lolli(a, b) => self.occurs(i, &a) || self.occurs(i, &b),
            Ty::Bang(a) => self.occurs(i, &a),
        }
    }

    fn here(&self) -> String {
        Path::from(self.path.clone()).to_string()
    }

    fn unify(&mut self, expected: &Ty, found: &Ty) -> Result<(), TypeError> {
        let (a, b) = (self.shallow(expected), self.shallow(found));
        match (&a, &b) {
            (Ty::Meta(i), Ty::Meta(j)) if i == j => Ok(()),
            (Ty::Meta(i), other) | (other, Ty::Meta(i)) => {
                if self.occurs(*i, other) {
                    return Err(TypeError::Occurs { path: self.here() });
                }
                self.metas[*i] = Some(other.clone());
                Ok(())
            }
            (Ty::Atom(x), Ty::Atom(y)) if x == y => Ok(()),
            (Ty::Tensor(a1, b1), Ty::Tensor(a2, b2)) | (Ty::Lolli(a1, b1), Ty::Lolli(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
            (Ty::Bang(a1), Ty::Bang(a2)) => self.unify(a1, a2),
            _ => Err(TypeError::Mismatch {
                expected: self.resolve(&a).to_string(),
                found: self.resolve(&b).to_string(),
                path: self.here(),
            }),
        }
    }

    /// Type a binder must have given its kind.
    fn bind(&mut self, x: &Var, ty: Ty) -> Result<Ty, TypeError> {
        if x.is_exp() {
            let inner = self.fresh();
            self.unify(&Ty::Bang(Box::new(inner)), &ty)?;
        } else {
            self.mul_vars.push((x.clone(), ty.clone()));
        }
        Ok(ty)
    }

    fn lookup(env: &[(Var, Ty)], x: &Var) -> Result<Ty, TypeError> {
        env.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t.clone()).ok_or_else(|| TypeError::Unbound(x.clone()))
    }

    fn under<R>(&mut self, i: u8, k: impl FnOnce(&mut Self) -> R) -> R {
        self.path.push(i);
        let r = k(self);
        self.path.pop();
        r
    }

    fn infer(&mut self, t: &Term, env: &mut Vec<(Var, Ty)>) -> Result<Ty, TypeError> {
        match t {
            Term::Var(x) => Infer::lookup(env, x),
            Term::Pair(a, b) => {
                let ta = self.under(0, |s| s.infer(a, env))?;
                let tb = self.under(1, |s| s.infer(b, env))?;
                Ok(Ty::Tensor(Box::new(ta), Box::new(tb)))
            }
            Term::Lam { binder, annot, body } => {
                let a = match annot {
                    Some(f) => Ty::of(f),
                    None => self.fresh(),
                };
                self.lambdas.push(a.clone());
                let a = self.bind(binder, a)?;
                env.push((binder.clone(), a.clone()));
                let b = self.under(0, |s| s.infer(body, env));
                env.pop();
                Ok(Ty::Lolli(Box::new(a), Box::new(b?)))
            }
            Term::Bang(body) => {
                let a = self.under(0, |s| s.infer(body, env))?;
                Ok(Ty::Bang(Box::new(a)))
            }
            Term::Cut { value, binder, body } => {
                let a = self.under(0, |s| s.infer(value, env))?;
                let a = self.bind(binder, a)?;
                env.push((binder.clone(), a));
                let r = self.under(1, |s| s.infer(body, env));
                env.pop();
                r
            }
            Term::Par { conclusion, left, right, body } => {
                let tm = Infer::lookup(env, conclusion)?;
                let (a, b) = (self.fresh(), self.fresh());
                self.unify(&Ty::Tensor(Box::new(a.clone()), Box::new(b.clone())), &tm)?;
                let a = self.bind(left, a)?;
                let b = self.bind(right, b)?;
                env.push((left.clone(), a));
                env.push((right.clone(), b));
                let r = self.under(0, |s| s.infer(body, env));
                env.truncate(env.len() - 2);
                r
            }
            Term::Sub { conclusion, value, binder, body } => {
                let tm = Infer::lookup(env, conclusion)?;
                let a = self.under(0, |s| s.infer(value, env))?;
                let b = self.fresh();
                self.unify(&Ty::Lolli(Box::new(a), Box::new(b.clone())), &tm)?;
                let b = self.bind(binder, b)?;
                env.push((binder.clone(), b));
                let r = self.under(1, |s| s.infer(body, env));
                env.pop();
                r
            }
            Term::Der { conclusion, binder, body } => {
                let te = Infer::lookup(env, conclusion)?;
                let a = self.fresh();
                self.unify(&Ty::Bang(Box::new(a.clone())), &te)?;
                let a = self.bind(binder, a)?;
                env.push((binder.clone(), a));
                let r = self.under(0, |s| s.infer(body, env));
                env.pop();
                r
            }
        }
    }
}

/// Every multiplicative variable, free or bound, is used exactly once.
fn check_linear(ctx: &TypingContext, t: &Term) -> Result<(), TypeError> {
    for (x, _) in ctx.iter().filter(|(x, _)| x.is_mul()) {
        match t.occ_count(x) {
            0 => return Err(TypeError::Unused(x.clone())),
            1 => {}
            _ => return Err(TypeError::Reused(x.clone())),
        }
    }
    let mut err = None;
    t.walk(&mut |_, node| {
        if err.is_some() {
            return;
        }
        for i in 0..node.arity() {
            for x in node.binders_for_child(i) {
                if x.is_mul() {
                    match node.child(i).map_or(0, |c| c.occ_count(x)) {
                        0 => err = Some(TypeError::Unused(x.clone())),
                        1 => {}
                        _ => err = Some(TypeError::Reused(x.clone())),
                    }
                }
            }
        }
    });
    err.map_or(Ok(()), Err)
}

fn run(ctx: &TypingContext, t: &Term) -> Result<(Formula, Infer), TypeError> {
    for (x, a) in ctx.iter() {
        if x.is_exp() != a.is_bang() {
            return Err(TypeError::ContextKind { var: x.clone(), formula: a.clone() });
        }
    }
    check_linear(ctx, t)?;
    let mut inf = Infer { metas: Vec::new(), mul_vars: Vec::new(), lambdas: Vec::new(), path: Vec::new() };
    let mut env: Vec<(Var, Ty)> = ctx.iter().map(|(x, a)| (x.clone(), Ty::of(a))).collect();
    let ty = inf.infer(t, &mut env)?;
    for (x, ty) in &inf.mul_vars {
        if let Ty::Bang(_) = inf.shallow(ty) {
            return Err(TypeError::BangOnMultiplicative { var: x.clone(), formula: inf.resolve(ty).to_string() });
        }
    }
    Ok((inf.to_formula(&ty), inf))
}

pub(super) fn synth(ctx: &TypingContext, t: &Term) -> Result<Formula, TypeError> {
    run(ctx, t).map(|(a, _)| a)
}

pub(super) fn synth_annotated(ctx: &TypingContext, t: &Term) -> Result<(Formula, Term), TypeError> {
    let (a, inf) = run(ctx, t)?;
    let mut annotated = t.clone();
    let mut types = inf.lambdas.iter();
    annotated.visit_mut(&mut |n| {
        if let Term::Lam { annot, .. } = n {
            let ty = types.next().expect("one type per lambda");
            *annot = Some(inf.to_formula(ty));
        }
    });
    Ok((a, annotated))
}
