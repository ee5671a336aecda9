//! Random and structured term generators.
//!
//! The typed generator builds a derivation goal-first. Free hypotheses are
//! outputs: whenever a branch needs a variable it invents one and records
//! it in the typing context, so every goal is inhabited and generation
//! never backtracks. Multiplicative variables bound inside the term are
//! obligations that the branch receiving them must consume exactly once.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parse_term;
use crate::syntax::{Term, Var};
use crate::typing::{Formula, TypingContext};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("budget {0} is too small for any derivation")]
    BudgetTooSmall(usize),
    #[error("the spindle family starts at n = 1")]
    EmptySpindle,
}

/// A bound variable with its formula.
type Hyp = (Var, Formula);

struct Gen {
    rng: ChaCha8Rng,
    counter: usize,
    /// Free hypotheses invented so far.
    outputs: TypingContext,
}

impl Gen {
    fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), counter: 0, outputs: TypingContext::new() }
    }

    fn fresh(&mut self, base: &str, exp: bool) -> Var {
        self.counter += 1;
        let name = format!("{base}{}", self.counter);
        if exp {
            Var::exp(&name)
        } else {
            Var::mul(&name)
        }
    }

    /// A binder of the kind dictated by its formula.
    fn binder(&mut self, a: &Formula) -> Var {
        if a.is_bang() {
            self.fresh("e", true)
        } else {
            let base = *["x", "y", "m"].choose(&mut self.rng).expect("nonempty");
            self.fresh(base, false)
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return Formula::atom("X");
        }
        match self.rng.gen_range(0..3) {
            0 => Formula::tensor(self.formula(depth - 1), self.formula(depth - 1)),
            1 => Formula::lolli(self.formula(depth - 1), self.formula(depth - 1)),
            _ => Formula::bang(self.formula(depth - 1)),
        }
    }

    /// A compound formula, so that the cut has something to eliminate.
    fn cut_formula(&mut self) -> Formula {
        match self.rng.gen_range(0..3) {
            0 => Formula::tensor(self.formula(1), self.formula(1)),
            1 => Formula::lolli(self.formula(1), self.formula(1)),
            _ => Formula::bang(self.formula(1)),
        }
    }

    /// A term of formula `a` ending with the right rule of its connective.
    fn intro(&mut self, a: &Formula, musts: Vec<Hyp>, exps: &[Hyp], budget: usize, boxed: bool) -> Term {
        let b = budget.saturating_sub(1);
        match a {
            Formula::Tensor(l, r) => {
                let (m1, m2) = self.split_hyps(musts);
                let (b1, b2) = self.split_budget(b);
                let lt = self.typed(l, m1, exps, b1, boxed);
                let rt = self.typed(r, m2, exps, b2, boxed);
                Term::pair(lt, rt)
            }
            Formula::Lolli(l, r) => {
                let x = self.binder(l);
                let (mut musts, mut exps) = (musts, exps.to_vec());
                if x.is_exp() {
                    exps.push((x.clone(), (**l).clone()));
                } else {
                    musts.push((x.clone(), (**l).clone()));
                }
                let body = self.typed(r, musts, &exps, b, boxed);
                Term::lam(x, Some((**l).clone()), body)
            }
            Formula::Bang(inner) if musts.is_empty() => Term::bang(self.typed(inner, vec![], exps, b, true)),
            _ => self.typed(a, musts, exps, budget, boxed),
        }
    }

    /// Open the body of a cut on `x : a` with the left rule of `a`.
    #[allow(clippy::too_many_arguments)]
    fn eliminate(
        &mut self,
        x: &Var,
        a: &Formula,
        goal: &Formula,
        mut musts: Vec<Hyp>,
        exps: &[Hyp],
        b: usize,
        boxed: bool,
    ) -> Term {
        let mut exps = exps.to_vec();
        let bind = |g: &mut Gen, f: &Formula, musts: &mut Vec<Hyp>, exps: &mut Vec<Hyp>| {
            let y = g.binder(f);
            if y.is_exp() {
                exps.push((y.clone(), f.clone()));
            } else {
                musts.push((y.clone(), f.clone()));
            }
            y
        };
        match a {
            Formula::Tensor(l, r) => {
                let y = bind(self, l, &mut musts, &mut exps);
                let z = bind(self, r, &mut musts, &mut exps);
                Term::par(x.clone(), y, z, self.typed(goal, musts, &exps, b, boxed))
            }
            Formula::Lolli(l, r) => {
                let (m1, mut m2) = self.split_hyps(musts);
                let (b1, b2) = self.split_budget(b);
                let arg = self.intro(l, m1, &exps, b1, boxed);
                let y = bind(self, r, &mut m2, &mut exps);
                let body = self.typed(goal, m2, &exps, b2, boxed);
                let split = arg.into_split();
                crate::syntax::plug_spine(split.spine, Term::sub(x.clone(), split.head, y, body))
            }
            Formula::Bang(inner) => {
                let y = bind(self, inner, &mut musts, &mut exps);
                Term::der(x.clone(), y, self.typed(goal, musts, &exps, b, boxed))
            }
            Formula::Atom(_) => {
                musts.push((x.clone(), a.clone()));
                self.typed(goal, musts, &exps, b, boxed)
            }
        }
    }

    /// A free exponential hypothesis of formula `a`, reusing one when possible.
    fn output_exp(&mut self, a: &Formula) -> Var {
        let existing: Vec<Var> =
            self.outputs.iter().filter(|(x, f)| x.is_exp() && *f == a).map(|(x, _)| x.clone()).collect();
        if !existing.is_empty() && self.rng.gen_bool(0.5) {
            return existing.choose(&mut self.rng).expect("nonempty").clone();
        }
        let e = self.fresh("f", true);
        self.outputs.insert(e.clone(), a.clone());
        e
    }

    /// A free hypothesis of non-bang formula `a` usable at the current level.
    fn output_mul(&mut self, a: &Formula, boxed: bool) -> Term {
        if boxed {
            let e = self.output_exp(&Formula::bang(a.clone()));
            let x = self.binder(a);
            Term::der(e, x.clone(), Term::Var(x))
        } else {
            let m = self.fresh("n", false);
            self.outputs.insert(m.clone(), a.clone());
            Term::Var(m)
        }
    }

    fn split_hyps(&mut self, mut hyps: Vec<Hyp>) -> (Vec<Hyp>, Vec<Hyp>) {
        hyps.shuffle(&mut self.rng);
        let k = self.rng.gen_range(0..=hyps.len());
        let right = hyps.split_off(k);
        (hyps, right)
    }

    fn split_budget(&mut self, b: usize) -> (usize, usize) {
        let l = self.rng.gen_range(0..=b);
        (l, b - l)
    }

    /// Consume `musts` and produce `goal` with no further choices.
    fn close(&mut self, goal: &Formula, musts: Vec<Hyp>, exps: &[Hyp], boxed: bool) -> Term {
        if musts.is_empty() {
            if goal.is_bang() {
                let here: Vec<&Hyp> = exps.iter().filter(|(_, f)| f == goal).collect();
                if let Some((e, _)) = here.choose(&mut self.rng) {
                    return Term::Var(e.clone());
                }
                return Term::Var(self.output_exp(goal));
            }
            return self.output_mul(goal, boxed);
        }
        if musts.len() == 1 && &musts[0].1 == goal {
            return Term::Var(musts[0].0.clone());
        }
        // sub{n; (m1, (m2, ...)) > x} x with n : A1 * (A2 * ...) -o goal free
        let mut it = musts.into_iter().rev();
        let (last, lf) = it.next().expect("nonempty");
        let (value, vf) =
            it.fold((Term::Var(last), lf), |(v, f), (m, a)| (Term::pair(Term::Var(m), v), Formula::tensor(a, f)));
        let x = self.binder(goal);
        let lolli = Formula::lolli(vf, goal.clone());
        let body = Term::sub(Var::mul("#"), value, x.clone(), Term::Var(x));
        self.attach_fun(body, lolli, boxed)
    }

    /// Replace the placeholder conclusion `#` at the root of `t` with a free
    /// hypothesis of formula `f`.
    fn attach_fun(&mut self, t: Term, f: Formula, boxed: bool) -> Term {
        let Term::Sub { value, binder, body, .. } = t else { unreachable!("built as a subtraction") };
        if boxed {
            let e = self.output_exp(&Formula::bang(f));
            let n = self.fresh("n", false);
            Term::der(e, n.clone(), Term::sub(n, *value, binder, *body))
        } else {
            let n = self.fresh("n", false);
            self.outputs.insert(n.clone(), f);
            Term::sub(n, *value, binder, *body)
        }
    }

    fn typed(&mut self, goal: &Formula, musts: Vec<Hyp>, exps: &[Hyp], budget: usize, boxed: bool) -> Term {
        if budget <= 1 {
            return self.close(goal, musts, exps, boxed);
        }
        let b = budget - 1;
        let tensors: Vec<usize> = (0..musts.len()).filter(|&i| matches!(musts[i].1, Formula::Tensor(..))).collect();
        let lollis: Vec<usize> = (0..musts.len()).filter(|&i| matches!(musts[i].1, Formula::Lolli(..))).collect();
        let mut options: Vec<u8> = vec![0, 1, 6, 6];
        if !tensors.is_empty() {
            options.extend([2, 2, 2]);
        }
        if !lollis.is_empty() {
            options.extend([3, 3, 3]);
        }
        if !exps.is_empty() {
            options.extend([4, 4]);
        }
        if !boxed {
            options.push(5);
        }
        match *options.choose(&mut self.rng).expect("nonempty") {
            // right rule on the goal
            0 | 1 => match goal {
                Formula::Tensor(a, c) => {
                    let (m1, m2) = self.split_hyps(musts);
                    let (b1, b2) = self.split_budget(b);
                    let l = self.typed(a, m1, exps, b1, boxed);
                    let r = self.typed(c, m2, exps, b2, boxed);
                    Term::pair(l, r)
                }
                Formula::Lolli(a, c) => {
                    let x = self.binder(a);
                    let (mut musts, mut exps) = (musts, exps.to_vec());
                    if x.is_exp() {
                        exps.push((x.clone(), (**a).clone()));
                    } else {
                        musts.push((x.clone(), (**a).clone()));
                    }
                    let body = self.typed(c, musts, &exps, b, boxed);
                    Term::lam(x, Some((**a).clone()), body)
                }
                Formula::Bang(a) if musts.is_empty() => Term::bang(self.typed(a, vec![], exps, b, true)),
                _ => self.close(goal, musts, exps, boxed),
            },
            // par on a tensor obligation
            2 => {
                let i = *tensors.choose(&mut self.rng).expect("nonempty");
                let mut musts = musts;
                let (m, f) = musts.remove(i);
                let Formula::Tensor(a, c) = f else { unreachable!() };
                let x = self.binder(&a);
                let y = self.binder(&c);
                let mut exps = exps.to_vec();
                for (v, f) in [(x.clone(), *a), (y.clone(), *c)] {
                    if v.is_exp() {
                        exps.push((v, f));
                    } else {
                        musts.push((v, f));
                    }
                }
                let body = self.typed(goal, musts, &exps, b, boxed);
                Term::par(m, x, y, body)
            }
            // subtraction on a lolli obligation
            3 => {
                let i = *lollis.choose(&mut self.rng).expect("nonempty");
                let mut musts = musts;
                let (m, f) = musts.remove(i);
                let Formula::Lolli(a, c) = f else { unreachable!() };
                let (m1, mut m2) = self.split_hyps(musts);
                let (b1, b2) = self.split_budget(b);
                let arg = self.intro(&a, m1, exps, b1, boxed);
                let x = self.binder(&c);
                let mut exps2 = exps.to_vec();
                if x.is_exp() {
                    exps2.push((x.clone(), *c));
                } else {
                    m2.push((x.clone(), *c));
                }
                let body = self.typed(goal, m2, &exps2, b2, boxed);
                let split = arg.into_split();
                let node = Term::sub(m, split.head, x, body);
                crate::syntax::plug_spine(split.spine, node)
            }
            // dereliction on a bound exponential
            4 => {
                let (e, f) = exps.choose(&mut self.rng).expect("nonempty").clone();
                let Formula::Bang(a) = f else { unreachable!("exponentials are banged") };
                let x = self.binder(&a);
                let (mut musts, mut exps) = (musts, exps.to_vec());
                if x.is_exp() {
                    exps.push((x.clone(), *a));
                } else {
                    musts.push((x.clone(), *a));
                }
                let body = self.typed(goal, musts, &exps, b, boxed);
                Term::der(e, x, body)
            }
            // a free tensor or lolli hypothesis taken apart
            5 => {
                let a = self.formula(1);
                let c = self.formula(1);
                if self.rng.gen_bool(0.5) {
                    let m = self.fresh("n", false);
                    self.outputs.insert(m.clone(), Formula::tensor(a.clone(), c.clone()));
                    let mut musts = musts;
                    let mut exps = exps.to_vec();
                    let x = self.binder(&a);
                    let y = self.binder(&c);
                    for (v, f) in [(x.clone(), a), (y.clone(), c)] {
                        if v.is_exp() {
                            exps.push((v, f));
                        } else {
                            musts.push((v, f));
                        }
                    }
                    Term::par(m, x, y, self.typed(goal, musts, &exps, b, boxed))
                } else {
                    let (m1, mut m2) = self.split_hyps(musts);
                    let (b1, b2) = self.split_budget(b);
                    let arg = self.typed(&a, m1, exps, b1, boxed);
                    let x = self.binder(&c);
                    let mut exps2 = exps.to_vec();
                    if x.is_exp() {
                        exps2.push((x.clone(), c.clone()));
                    } else {
                        m2.push((x.clone(), c.clone()));
                    }
                    let body = self.typed(goal, m2, &exps2, b2, boxed);
                    let split = arg.into_split();
                    let node =
                        self.attach_fun(Term::sub(Var::mul("#"), split.head, x, body), Formula::lolli(a, c), boxed);
                    crate::syntax::plug_spine(split.spine, node)
                }
            }
            // cut
            _ => {
                let a = self.cut_formula();
                let (m1, mut m2) = self.split_hyps(musts);
                let (b1, b2) = self.split_budget(b);
                let value = self.intro(&a, m1, exps, b1, boxed);
                let x = self.binder(&a);
                let mut exps2 = exps.to_vec();
                if x.is_exp() {
                    exps2.push((x.clone(), a.clone()));
                }
                let body = if self.rng.gen_bool(0.75) {
                    self.eliminate(&x, &a, goal, m2, &exps2, b2, boxed)
                } else {
                    if x.is_mul() {
                        m2.push((x.clone(), a));
                    }
                    self.typed(goal, m2, &exps2, b2, boxed)
                };
                let split = value.into_split();
                let node = Term::cut(split.head, x, body);
                crate::syntax::plug_spine(split.spine, node)
            }
        }
    }
}

/// A random typable term with its typing context; lambdas are annotated.
/// The term has roughly `budget` constructors.
pub fn gen_typed(seed: u64, budget: usize) -> Result<(TypingContext, Term), GenError> {
    if budget == 0 {
        return Err(GenError::BudgetTooSmall(budget));
    }
    let mut g = Gen::new(seed);
    let goal = g.formula(2);
    let t = g.typed(&goal, vec![], &[], budget, false);
    Ok((g.outputs, t))
}

/// Candidates drawn by the sized generators; the largest is kept.
const SIZED_CANDIDATES: usize = 16;

/// The largest of several typed terms of size at most `max_size`; the
/// seed sequence is derived from `seed`.
pub fn gen_typed_sized(seed: u64, max_size: usize) -> (TypingContext, Term) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(TypingContext, Term)> = None;
    let mut found = 0;
    while found < SIZED_CANDIDATES {
        let budget = rng.gen_range(2..=max_size.max(2));
        let (ctx, t) = gen_typed(rng.gen(), budget).expect("positive budget");
        if t.size() <= max_size {
            found += 1;
            if best.as_ref().is_none_or(|(_, b)| t.size() > b.size()) {
                best = Some((ctx, t));
            }
        }
    }
    best.expect("at least one candidate")
}

struct Untyped {
    rng: ChaCha8Rng,
    counter: usize,
}

impl Untyped {
    fn fresh(&mut self, exp: bool) -> Var {
        self.counter += 1;
        if exp {
            Var::exp(&format!("e{}", self.counter))
        } else {
            Var::mul(&format!("m{}", self.counter))
        }
    }

    fn free(&mut self) -> Var {
        self.counter += 1;
        if self.rng.gen_bool(0.5) {
            Var::exp(&format!("f{}", self.counter))
        } else {
            Var::mul(&format!("n{}", self.counter))
        }
    }

    fn close(&mut self, musts: Vec<Var>, exps: &[Var], boxed: bool) -> Term {
        match musts.len() {
            0 => {
                if !exps.is_empty() && self.rng.gen_bool(0.6) {
                    return Term::Var(exps.choose(&mut self.rng).expect("nonempty").clone());
                }
                if boxed {
                    self.counter += 1;
                    return Term::Var(Var::exp(&format!("f{}", self.counter)));
                }
                Term::Var(self.free())
            }
            _ => {
                let mut it = musts.into_iter().rev();
                let last = Term::Var(it.next().expect("nonempty"));
                it.fold(last, |v, m| Term::pair(Term::Var(m), v))
            }
        }
    }

    fn bind(&mut self, musts: &mut Vec<Var>, exps: &mut Vec<Var>) -> Var {
        let exp = self.rng.gen_bool(0.4);
        let x = self.fresh(exp);
        if x.is_exp() {
            exps.push(x.clone());
        } else {
            musts.push(x.clone());
        }
        x
    }

    fn split(&mut self, mut musts: Vec<Var>) -> (Vec<Var>, Vec<Var>) {
        musts.shuffle(&mut self.rng);
        let k = self.rng.gen_range(0..=musts.len());
        let r = musts.split_off(k);
        (musts, r)
    }

    fn conclusion(&mut self, musts: &mut Vec<Var>, boxed: bool) -> Option<Var> {
        if !musts.is_empty() && self.rng.gen_bool(0.5) {
            let i = self.rng.gen_range(0..musts.len());
            return Some(musts.remove(i));
        }
        (!boxed).then(|| {
            self.counter += 1;
            Var::mul(&format!("n{}", self.counter))
        })
    }

    fn term(&mut self, musts: Vec<Var>, exps: &[Var], budget: usize, boxed: bool) -> Term {
        if budget <= 1 {
            return self.close(musts, exps, boxed);
        }
        let b = budget - 1;
        let (mut musts, mut exps) = (musts, exps.to_vec());
        match self.rng.gen_range(0..10) {
            9 if b >= 9 && self.rng.gen_bool(0.3) => {
                // a box of a self-applying abstraction
                let (e, m, n) = (self.fresh(true), self.fresh(false), self.fresh(false));
                let delta = Term::lam(
                    e.clone(),
                    None,
                    Term::der(e.clone(), m.clone(), Term::sub(m, Term::Var(e), n.clone(), Term::Var(n))),
                );
                let f = self.fresh(true);
                exps.push(f.clone());
                Term::cut(Term::bang(delta), f, self.term(musts, &exps, b - 8, boxed))
            }
            9 if !exps.is_empty() => {
                // self-application
                let e = exps.choose(&mut self.rng).expect("nonempty").clone();
                let m = self.fresh(false);
                let x = self.bind(&mut musts, &mut exps);
                let body = self.term(musts, &exps, b, boxed);
                Term::der(e.clone(), m.clone(), Term::sub(m, Term::Var(e), x, body))
            }
            0 => {
                let (m1, m2) = self.split(musts);
                let l = self.rng.gen_range(0..=b);
                Term::pair(self.term(m1, &exps, l, boxed), self.term(m2, &exps, b - l, boxed))
            }
            1 => {
                let x = self.bind(&mut musts, &mut exps);
                Term::lam(x, None, self.term(musts, &exps, b, boxed))
            }
            2 if musts.is_empty() => Term::bang(self.term(vec![], &exps, b, true)),
            3 => {
                let Some(m) = self.conclusion(&mut musts, boxed) else {
                    return self.term(musts, &exps, budget, boxed);
                };
                let x = self.bind(&mut musts, &mut exps);
                let y = self.bind(&mut musts, &mut exps);
                Term::par(m, x, y, self.term(musts, &exps, b, boxed))
            }
            4 => {
                let Some(m) = self.conclusion(&mut musts, boxed) else {
                    return self.term(musts, &exps, budget, boxed);
                };
                let (m1, mut m2) = self.split(musts);
                let l = self.rng.gen_range(0..=b);
                let arg = self.term(m1, &exps, l, boxed);
                let x = self.bind(&mut m2, &mut exps);
                let body = self.term(m2, &exps, b - l, boxed);
                let split = arg.into_split();
                crate::syntax::plug_spine(split.spine, Term::sub(m, split.head, x, body))
            }
            5 | 6 => {
                let e = match exps.choose(&mut self.rng) {
                    Some(e) if self.rng.gen_bool(0.7) => e.clone(),
                    _ => {
                        self.counter += 1;
                        Var::exp(&format!("f{}", self.counter))
                    }
                };
                let x = self.bind(&mut musts, &mut exps);
                Term::der(e, x, self.term(musts, &exps, b, boxed))
            }
            _ => {
                let (m1, mut m2) = self.split(musts);
                let l = self.rng.gen_range(0..=b);
                let value = self.term(m1, &exps, l, boxed);
                let split = value.into_split();
                // mostly kind-matched, sometimes deliberately clashing
                let exp = if self.rng.gen_bool(0.85) { split.head.is_exp_value() } else { !split.head.is_exp_value() };
                let x = self.fresh(exp);
                if exp {
                    exps.push(x.clone());
                } else {
                    m2.push(x.clone());
                }
                let body = self.term(m2, &exps, b - l, boxed);
                crate::syntax::plug_spine(split.spine, Term::cut(split.head, x, body))
            }
        }
    }
}

/// A random proper term, possibly clashing or divergent.
pub fn gen_untyped_proper(seed: u64, budget: usize) -> Term {
    let mut g = Untyped { rng: ChaCha8Rng::seed_from_u64(seed), counter: 0 };
    g.term(vec![], &[], budget.max(1), false)
}

/// The largest of several untyped proper terms of size at most `max_size`.
pub fn gen_untyped_sized(seed: u64, max_size: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Term> = None;
    let mut found = 0;
    while found < SIZED_CANDIDATES {
        let budget = rng.gen_range(2..=max_size.max(2));
        let t = gen_untyped_proper(rng.gen(), budget);
        if t.size() <= max_size {
            found += 1;
            if best.as_ref().is_none_or(|b| t.size() > b.size()) {
                best = Some(t);
            }
        }
    }
    best.expect("at least one candidate")
}

fn spindle_box(e: &Var) -> Term {
    let (m, n) = (Var::mul("m"), Var::mul("n"));
    Term::bang(Term::der(e.clone(), m.clone(), Term::der(e.clone(), n.clone(), Term::pair(Term::Var(m), Term::Var(n)))))
}

/// The spindle chain: each box derelicts the previous one twice.
pub fn gen_spindle(n: usize) -> Result<(TypingContext, Term), GenError> {
    if n == 0 {
        return Err(GenError::EmptySpindle);
    }
    let e1 = Var::exp("e1");
    let mut t = spindle_box(&e1);
    for k in 2..=n {
        let ek = Var::exp(&format!("e{k}"));
        let split = t.into_split();
        let node = Term::cut(split.head, ek.clone(), spindle_box(&ek));
        t = crate::syntax::plug_spine(split.spine, node);
    }
    let ctx = TypingContext::new().with(e1, Formula::bang(Formula::atom("X")));
    Ok((ctx, t))
}

pub const OMEGA_SRC: &str = "cut{\\e. der{e>m} sub{m; e>n} n > o} sub{o; !\\e. der{e>m} sub{m; e>n} n > o'} o'";

/// The looping combinator.
pub fn gen_omega() -> Term {
    parse_term(OMEGA_SRC).expect("fixed source")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::synth;

    #[test]
    fn typed_terms_typecheck() {
        for seed in 0..300 {
            let (ctx, t) = gen_typed(seed, 1 + (seed as usize % 30)).unwrap();
            assert!(t.is_proper(), "{t}: {:?}", t.check_proper());
            if let Err(e) = synth(&ctx, &t) {
                panic!("seed {seed}: {ctx} ⊢ {t}: {e}");
            }
        }
        assert_eq!(gen_typed(7, 0), Err(GenError::BudgetTooSmall(0)));
    }

    #[test]
    fn reproducible() {
        let a = gen_typed(42, 20).unwrap();
        let b = gen_typed(42, 20).unwrap();
        assert_eq!(a.1.to_string(), b.1.to_string());
        assert_eq!(a.0.to_string(), b.0.to_string());
        assert_eq!(gen_untyped_proper(5, 20).to_string(), gen_untyped_proper(5, 20).to_string());
    }

    #[test]
    fn untyped_terms_are_proper() {
        let mut clashing = 0;
        for seed in 0..300 {
            let t = gen_untyped_proper(seed, 1 + (seed as usize % 20));
            assert!(t.is_proper(), "{t}: {:?}", t.check_proper());
            clashing += usize::from(!crate::typing::find_clashes(&t).is_empty());
        }
        assert!(clashing > 0);
    }

    #[test]
    fn spindles() {
        let (ctx, s1) = gen_spindle(1).unwrap();
        assert_eq!(s1.to_string(), "!der{e1 > m} der{e1 > n} (m, n)");
        assert_eq!(s1.size(), 8);
        assert_eq!(synth(&ctx, &s1).unwrap(), Formula::parse("!(X * X)").unwrap());
        let (ctx, s2) = gen_spindle(2).unwrap();
        assert!(s2.alpha_eq(&parse_term("cut{!der{e1>m} der{e1>n} (m, n) > e2} !der{e2>m} der{e2>n} (m, n)").unwrap()));
        assert_eq!(synth(&ctx, &s2).unwrap(), Formula::parse("!((X * X) * (X * X))").unwrap());
        assert_eq!(gen_spindle(0), Err(GenError::EmptySpindle));
    }

    #[test]
    fn omega() {
        assert!(gen_omega().is_proper());
        assert!(synth(&TypingContext::new(), &gen_omega()).is_err());
    }
}
