use std::collections::{HashSet, VecDeque};

use crate::contexts::ctx_at;
use crate::syntax::{Term, Var};

/// Safety valve for [`cut_class`]; classes of desk-scale terms are far smaller.
pub const CUT_CLASS_LIMIT: usize = 200_000;

/// Relative hole paths of the one-layer multiplicative contexts rooted at
/// `n` (a node in term position). A cut or subtraction contributes its
/// body and, through one pair or abstraction, its value slot.
fn layer_holes(n: &Term) -> Vec<Vec<u8>> {
    let through_value = |v: &Term| match v {
        Term::Pair(..) => vec![vec![0, 0], vec![0, 1]],
        Term::Lam { .. } => vec![vec![0, 0]],
        _ => vec![],
    };
    match n {
        Term::Var(_) | Term::Bang(_) => vec![],
        Term::Pair(..) => vec![vec![0], vec![1]],
        Term::Lam { .. } | Term::Par { .. } | Term::Der { .. } => vec![vec![0]],
        Term::Cut { value, .. } | Term::Sub { value, .. } => {
            let mut hs = vec![vec![1]];
            hs.extend(through_value(value));
            hs
        }
    }
}

/// Whether the layer `n` with hole at `h` lets a cut on `x` with value
/// `v` cross it: `x` not free in the layer, no layer binder free in `v`.
fn can_cross(n: &Term, h: &[u8], x: &Var, v: &Term) -> bool {
    let (ctx, _) = ctx_at(n, &h.into()).expect("layer hole");
    if ctx.skeleton().is_free(x) {
        return false;
    }
    let fv = v.fv();
    !n.binders_along(h).iter().any(|b| fv.contains(b) || b == x)
}

fn term_positions(t: &Term) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut value_slots = HashSet::new();
    t.walk(&mut |p, n| {
        if matches!(n, Term::Cut { .. } | Term::Sub { .. }) {
            let mut q = p.to_vec();
            q.push(0);
            value_slots.insert(q);
        }
        if !value_slots.contains(p) {
            out.push(p.to_vec());
        }
    });
    out
}

/// All terms one `∼cut` step away from `t`, in either direction.
pub fn cut_moves(t: &Term) -> Vec<Term> {
    let t = t.barendregt(&[]);
    let mut out = Vec::new();
    for p in term_positions(&t) {
        let n = t.subterm(&p).expect("walked");
        // outward: M⟨cut{v>x}u⟩ to cut{v>x}M⟨u⟩
        for h in layer_holes(n) {
            if let Some(Term::Cut { value, binder, body }) = n.subterm(&h) {
                if can_cross(n, &h, binder, value) {
                    let mut m = n.clone();
                    *m.subterm_mut(&h).expect("layer hole") = (**body).clone();
                    let mut s = t.clone();
                    *s.subterm_mut(&p).expect("walked") = Term::cut((**value).clone(), binder.clone(), m);
                    out.push(s);
                }
            }
        }
        // inward: cut{v>x}M⟨u⟩ to M⟨cut{v>x}u⟩
        if let Term::Cut { value, binder, body } = n {
            for h in layer_holes(body) {
                if can_cross(body, &h, binder, value) {
                    let mut m = (**body).clone();
                    let slot = m.subterm_mut(&h).expect("layer hole");
                    let u = std::mem::replace(slot, Term::Var(binder.clone()));
                    *slot = Term::cut((**value).clone(), binder.clone(), u);
                    let mut s = t.clone();
                    *s.subterm_mut(&p).expect("walked") = m;
                    out.push(s);
                }
            }
        }
    }
    out
}

/// The `≡cut` class of `t` as canonical representatives, or `None` when
/// it exceeds `limit` members.
pub fn cut_class(t: &Term, limit: usize) -> Option<Vec<Term>> {
    let start = t.canonical();
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for next in cut_moves(&cur) {
            let c = next.canonical();
            if seen.insert(c.clone()) {
                if seen.len() > limit {
                    return None;
                }
                order.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    Some(order)
}

/// Decide `t ≡cut s` by exploring the class of `t`.
pub fn cut_equiv(t: &Term, s: &Term) -> bool {
    if t.size() != s.size() || t.fv() != s.fv() {
        return false;
    }
    let target = s.canonical();
    let start = t.canonical();
    if start == target {
        return true;
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for next in cut_moves(&cur) {
            let c = next.canonical();
            if c == target {
                return true;
            }
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    false
}
