//! Variable potential and the termination measure.
//!
//! Both are computed in one bottom-up pass that keeps, for every node, the
//! potential of each of its free variables. Arithmetic is checked: values
//! multiply along nested cuts and an overflow is reported, never wrapped.

use std::collections::HashMap;

use crate::contexts::Context;
use crate::syntax::{Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("measure arithmetic overflowed 64 bits")]
pub struct Overflow;

type Potentials = HashMap<Var, u64>;

fn add(a: u64, b: u64) -> Result<u64, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

fn mul(a: u64, b: u64) -> Result<u64, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

fn merge_scaled(into: &mut Potentials, from: Potentials, factor: u64) -> Result<(), Overflow> {
    for (x, p) in from {
        let slot = into.entry(x).or_insert(0);
        *slot = add(*slot, mul(p, factor)?)?;
    }
    Ok(())
}

fn pass(t: &Term) -> Result<(u64, Potentials), Overflow> {
    match t {
        Term::Var(x) => {
            let m = u64::from(!Context::is_hole(t));
            Ok((m, Potentials::from([(x.clone(), 1)])))
        }
        Term::Pair(a, b) => {
            let (ma, mut pa) = pass(a)?;
            let (mb, pb) = pass(b)?;
            merge_scaled(&mut pa, pb, 1)?;
            Ok((add(ma, mb)?, pa))
        }
        Term::Lam { binder, body, .. } => {
            let (m, mut p) = pass(body)?;
            p.remove(binder);
            Ok((m, p))
        }
        Term::Bang(body) => pass(body),
        Term::Cut { value, binder, body } => {
            let (mv, pv) = pass(value)?;
            let (mt, mut pt) = pass(body)?;
            let factor = add(pt.remove(binder).unwrap_or(0), 1)?;
            merge_scaled(&mut pt, pv, factor)?;
            Ok((add(mul(mv, factor)?, mt)?, pt))
        }
        Term::Par { conclusion, left, right, body } => {
            let (mt, mut pt) = pass(body)?;
            let pl = pt.remove(left).unwrap_or(0);
            let pr = pt.remove(right).unwrap_or(0);
            let slot = pt.entry(conclusion.clone()).or_insert(0);
            *slot = add(add(*slot, 1)?, add(pl, pr)?)?;
            Ok((add(mt, 1)?, pt))
        }
        Term::Sub { conclusion, value, binder, body } => {
            let (mv, pv) = pass(value)?;
            let (mt, mut pt) = pass(body)?;
            pt.remove(binder);
            merge_scaled(&mut pt, pv, 1)?;
            let slot = pt.entry(conclusion.clone()).or_insert(0);
            *slot = add(*slot, 1)?;
            Ok((add(add(mv, mt)?, 1)?, pt))
        }
        Term::Der { conclusion, binder, body } => {
            let (mt, mut pt) = pass(body)?;
            let pb = pt.remove(binder).unwrap_or(0);
            let slot = pt.entry(conclusion.clone()).or_insert(0);
            *slot = add(add(*slot, 1)?, pb)?;
            Ok((add(mt, 1)?, pt))
        }
    }
}

/// `p_t(x)`: zero when `x` is not free in `t`.
pub fn potential(t: &Term, x: &Var) -> Result<u64, Overflow> {
    Ok(pass(t)?.1.get(x).copied().unwrap_or(0))
}

/// Potential of the hole of `c`.
pub fn potential_ctx(c: &Context) -> Result<u64, Overflow> {
    c.potential()
}

/// The termination measure `[t]`; the hole of a context skeleton counts 0.
pub fn measure(t: &Term) -> Result<u64, Overflow> {
    Ok(pass(t)?.0)
}

pub fn measure_ctx(c: &Context) -> Result<u64, Overflow> {
    measure(c.skeleton())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_context, parse_term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    /// Clause-by-clause transcription, exponential in nesting depth.
    fn pot(t: &Term, x: &Var) -> u64 {
        match t {
            Term::Var(y) => u64::from(x == y),
            Term::Pair(a, b) => pot(a, x) + pot(b, x),
            Term::Bang(b) => pot(b, x),
            Term::Lam { binder, body, .. } => {
                if binder == x {
                    0
                } else {
                    pot(body, x)
                }
            }
            Term::Par { conclusion, left, right, body } => {
                let inner = if x == left || x == right { 0 } else { pot(body, x) };
                if x == conclusion {
                    1 + pot(body, left) + pot(body, right) + inner
                } else {
                    inner
                }
            }
            Term::Sub { conclusion, value, binder, body } => {
                let rest = pot(value, x) + if binder == x { 0 } else { pot(body, x) };
                if x == conclusion {
                    1 + rest
                } else {
                    rest
                }
            }
            Term::Der { conclusion, binder, body } => {
                let inner = if binder == x { 0 } else { pot(body, x) };
                if x == conclusion {
                    1 + inner + pot(body, binder)
                } else {
                    inner
                }
            }
            Term::Cut { value, binder, body } => {
                let inner = if binder == x { 0 } else { pot(body, x) };
                inner + pot(value, x) * (pot(body, binder) + 1)
            }
        }
    }

    fn meas(t: &Term) -> u64 {
        match t {
            Term::Var(_) => u64::from(!Context::is_hole(t)),
            Term::Pair(a, b) => meas(a) + meas(b),
            Term::Lam { body, .. } | Term::Bang(body) => meas(body),
            Term::Par { body, .. } | Term::Der { body, .. } => meas(body) + 1,
            Term::Sub { value, body, .. } => meas(value) + meas(body) + 1,
            Term::Cut { value, binder, body } => meas(value) * (pot(body, binder) + 1) + meas(body),
        }
    }

    #[test]
    fn examples() {
        let e = Var::exp("e");
        assert_eq!(potential(&t("e"), &e).unwrap(), 1);
        assert_eq!(potential(&t("der{e>m}(m,e)"), &e).unwrap(), 3);
        assert_eq!(potential(&t("(m, f)"), &e).unwrap(), 0);
        assert_eq!(measure(&t("m")).unwrap(), 1);
        assert_eq!(measure(&t("cut{n>m} m")).unwrap(), 3);
        assert_eq!(measure(&t("n")).unwrap(), 1);
    }

    #[test]
    fn contexts() {
        assert_eq!(potential_ctx(&Context::empty()).unwrap(), 1);
        assert_eq!(potential_ctx(&parse_context("der{e>x} <>").unwrap()).unwrap(), 1);
        let c = parse_context("cut{(<>, n) > y} (y, der{e>z} (z, e))").unwrap();
        assert_eq!(potential_ctx(&c).unwrap(), 2);
        assert_eq!(measure_ctx(&c).unwrap(), 2 + 4);
    }

    #[test]
    fn renaming_keeps_the_measure() {
        let s = t("cut{(o, p) > m} par{m > x, y} (x, y)");
        let r = s.rename_mul(&Var::mul("o"), &Var::mul("q")).unwrap();
        assert_eq!(measure(&s).unwrap(), measure(&r).unwrap());
    }

    #[test]
    fn agrees_with_the_transcription() {
        let srcs = [
            "cut{\\e. der{e>m} sub{m; e>n} n > o} sub{o; !\\e. der{e>m} sub{m; e>n} n > o'} o'",
            "cut{!(der{e>m} der{e>n} (m, n)) > f} cut{!(der{f>m} der{f>n} (m, n)) > g} der{g>x} der{g>y} (x, y)",
            "cut{f > e} der{e > g} cut{o > m} sub{m; e > n} n",
            "par{m>x,y} cut{(x, e) > z} (z, y)",
        ];
        for s in srcs {
            let s = t(s);
            assert_eq!(measure(&s).unwrap(), meas(&s), "{s}");
            for x in s.fv() {
                assert_eq!(potential(&s, &x).unwrap(), pot(&s, &x), "{s} at {x}");
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let mut s = t("(e, e)");
        for _ in 0..70 {
            s = Term::cut(Term::pair(t("f"), t("f")), Var::exp("e"), s);
            s = s.rename_free(&Var::exp("f"), &Var::exp("e"));
        }
        // each layer doubles the potential of the free variable
        assert_eq!(potential(&s, &Var::exp("e")), Err(Overflow));
    }
}
