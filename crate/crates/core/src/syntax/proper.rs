use std::collections::BTreeSet;

use super::{Term, Var};

/// The first violated properness clause.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProperError {
    #[error("tensor: mfv(t) ∩ mfv(s) = ∅ violated, {0} occurs in both components")]
    TensorOverlap(Var),
    #[error("par: conclusion {0} also occurs free in the body")]
    ParConclusionReused(Var),
    #[error("par: binders {0} and {1} must be distinct")]
    ParBindersEqual(Var, Var),
    #[error("multiplicative binder {0} does not occur in its scope")]
    UnusedMulBinder(Var),
    #[error("subtraction: {0} occurs free both in the value and in the body")]
    SubOverlap(Var),
    #[error("subtraction: conclusion {0} also occurs free in the value or body")]
    SubConclusionReused(Var),
    #[error("promotion: mfv(t) = ∅ violated, {0} is free under the bang")]
    BangMultiplicative(Var),
    #[error("cut: {0} occurs free both in the value and in the body")]
    CutOverlap(Var),
    #[error("{construct} conclusion {var} has the wrong kind")]
    ConclusionKind { construct: &'static str, var: Var },
    #[error("{construct} holds a non-value in its value slot")]
    SplitShape { construct: &'static str },
}

pub(super) fn check(t: &Term) -> Result<(), ProperError> {
    mfv(t).map(|_| ())
}

fn first_common(a: &BTreeSet<Var>, b: &BTreeSet<Var>) -> Option<Var> {
    a.intersection(b).next().cloned()
}

fn require_used(x: &Var, body: &BTreeSet<Var>) -> Result<(), ProperError> {
    if x.is_mul() && !body.contains(x) {
        Err(ProperError::UnusedMulBinder(x.clone()))
    } else {
        Ok(())
    }
}

/// Checks properness bottom-up, returning the multiplicative free variables.
fn mfv(t: &Term) -> Result<BTreeSet<Var>, ProperError> {
    match t {
        Term::Var(x) => Ok(if x.is_mul() { BTreeSet::from([x.clone()]) } else { BTreeSet::new() }),
        Term::Pair(a, b) => {
            let (mut l, r) = (mfv(a)?, mfv(b)?);
            if let Some(x) = first_common(&l, &r) {
                return Err(ProperError::TensorOverlap(x));
            }
            l.extend(r);
            Ok(l)
        }
        Term::Par { conclusion, left, right, body } => {
            if !conclusion.is_mul() {
                return Err(ProperError::ConclusionKind { construct: "par", var: conclusion.clone() });
            }
            if left == right {
                return Err(ProperError::ParBindersEqual(left.clone(), right.clone()));
            }
            let mut b = mfv(body)?;
            require_used(left, &b)?;
            require_used(right, &b)?;
            b.remove(left);
            b.remove(right);
            if !b.insert(conclusion.clone()) {
                return Err(ProperError::ParConclusionReused(conclusion.clone()));
            }
            Ok(b)
        }
        Term::Lam { binder, body, .. } => {
            let mut b = mfv(body)?;
            require_used(binder, &b)?;
            b.remove(binder);
            Ok(b)
        }
        Term::Sub { conclusion, value, binder, body } => {
            if !conclusion.is_mul() {
                return Err(ProperError::ConclusionKind { construct: "subtraction", var: conclusion.clone() });
            }
            if !value.is_value() {
                return Err(ProperError::SplitShape { construct: "subtraction" });
            }
            let mut v = mfv(value)?;
            let mut b = mfv(body)?;
            require_used(binder, &b)?;
            b.remove(binder);
            if let Some(x) = first_common(&v, &b) {
                return Err(ProperError::SubOverlap(x));
            }
            if b.contains(conclusion) || v.contains(conclusion) {
                return Err(ProperError::SubConclusionReused(conclusion.clone()));
            }
            v.extend(b);
            v.insert(conclusion.clone());
            Ok(v)
        }
        Term::Bang(body) => {
            let b = mfv(body)?;
            match b.into_iter().next() {
                Some(x) => Err(ProperError::BangMultiplicative(x)),
                None => Ok(BTreeSet::new()),
            }
        }
        Term::Der { conclusion, binder, body } => {
            if !conclusion.is_exp() {
                return Err(ProperError::ConclusionKind { construct: "dereliction", var: conclusion.clone() });
            }
            let mut b = mfv(body)?;
            require_used(binder, &b)?;
            b.remove(binder);
            Ok(b)
        }
        Term::Cut { value, binder, body } => {
            if !value.is_value() {
                return Err(ProperError::SplitShape { construct: "cut" });
            }
            let mut v = mfv(value)?;
            let mut b = mfv(body)?;
            require_used(binder, &b)?;
            b.remove(binder);
            if let Some(x) = first_common(&v, &b) {
                return Err(ProperError::CutOverlap(x));
            }
            v.extend(b);
            Ok(v)
        }
    }
}
