//! Meta-level exponential substitution `{v/e}t`.

use crate::syntax::{plug_spine, NameSupply, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("substituted variable {0} is not exponential")]
    NotExponentialVar(Var),
    #[error("{0} is not an exponential value")]
    NotExponentialValue(String),
}

/// Replace the free occurrences of `e` in `t` by `v`. A promotion meeting
/// a dereliction on `e` opens: its body is copied, split, and only the
/// value gets cut on the dereliction binder. Every copy gets fresh binders.
pub fn subst_exp(t: &Term, e: &Var, v: &Term) -> Result<Term, SubstError> {
    if !e.is_exp() {
        return Err(SubstError::NotExponentialVar(e.clone()));
    }
    if !v.is_exp_value() {
        return Err(SubstError::NotExponentialValue(v.to_string()));
    }
    if !t.is_free(e) {
        return Ok(t.clone());
    }
    let mut avoid: Vec<Var> = v.fv().into_iter().collect();
    avoid.push(e.clone());
    let t = t.barendregt(&avoid);
    let mut supply = NameSupply::for_term(&t);
    supply.reserve_term(v);
    Ok(go(&t, e, v, &mut supply))
}

fn go(t: &Term, e: &Var, v: &Term, supply: &mut NameSupply) -> Term {
    match t {
        Term::Var(x) if x == e => supply.rename_all_binders(v),
        Term::Var(_) => t.clone(),
        Term::Pair(a, b) => Term::pair(go(a, e, v, supply), go(b, e, v, supply)),
        Term::Lam { binder, annot, body } => Term::lam(binder.clone(), annot.clone(), go(body, e, v, supply)),
        Term::Bang(b) => Term::bang(go(b, e, v, supply)),
        Term::Par { conclusion, left, right, body } => {
            Term::par(conclusion.clone(), left.clone(), right.clone(), go(body, e, v, supply))
        }
        Term::Sub { conclusion, value, binder, body } => {
            Term::sub(conclusion.clone(), go(value, e, v, supply), binder.clone(), go(body, e, v, supply))
        }
        Term::Cut { value, binder, body } => Term::cut(go(value, e, v, supply), binder.clone(), go(body, e, v, supply)),
        Term::Der { conclusion, binder, body } if conclusion == e => {
            let body = go(body, e, v, supply);
            match v {
                Term::Var(f) => Term::der(f.clone(), binder.clone(), body),
                Term::Bang(inner) => {
                    let split = supply.rename_all_binders(inner).into_split();
                    plug_spine(split.spine, Term::cut(split.head, binder.clone(), body))
                }
                _ => unreachable!("checked to be an exponential value"),
            }
        }
        Term::Der { conclusion, binder, body } => Term::der(conclusion.clone(), binder.clone(), go(body, e, v, supply)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn examples() {
        let r = subst_exp(&t("der{e>e'} (e', e)"), &Var::exp("e"), &t("!cut{f>g} g")).unwrap();
        assert!(r.alpha_eq(&t("cut{f>g} cut{g>e'} (e', !cut{f>g} g)")), "{r}");
        assert_eq!(subst_exp(&t("m"), &Var::exp("e"), &t("f")).unwrap(), t("m"));
        let r = subst_exp(&t("der{f>m} m"), &Var::exp("f"), &t("!e")).unwrap();
        assert!(r.alpha_eq(&t("cut{e>m} m")));
        let r = subst_exp(&t("der{e>m} m"), &Var::exp("e"), &t("f")).unwrap();
        assert_eq!(r, t("der{f>m} m"));
    }

    #[test]
    fn errors() {
        assert!(subst_exp(&t("m"), &Var::mul("m"), &t("f")).is_err());
        assert!(subst_exp(&t("e"), &Var::exp("e"), &t("(m, n)")).is_err());
    }

    #[test]
    fn capture_is_avoided() {
        // the binder f would capture the substituted f
        let r = subst_exp(&t("\\f. (e, f)"), &Var::exp("e"), &t("f")).unwrap();
        assert!(r.alpha_eq(&t("\\g. (f, g)")));
        // shadowing stops the substitution
        let r = subst_exp(&t("(e, \\e. e)"), &Var::exp("e"), &t("f")).unwrap();
        assert!(r.alpha_eq(&t("(f, \\e. e)")));
    }

    #[test]
    fn copies_get_fresh_binders() {
        let r = subst_exp(&t("(e, e)"), &Var::exp("e"), &t("!\\m. m")).unwrap();
        match &r {
            Term::Pair(a, b) => {
                assert!(a.alpha_eq(b));
                assert_ne!(a, b);
            }
            _ => panic!("{r}"),
        }
    }
}
