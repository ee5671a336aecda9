//! IMELL formulas and type synthesis for proof terms.
//!
//! Synthesis is syntax directed. Lambda binders may carry a formula; when
//! they do not, the binder type is solved by first-order unification, and
//! anything left undetermined defaults to the atom `X`.

mod clash;
mod infer;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::syntax::{ParseError, ParseErrorKind, Term, Var};

pub use clash::{find_clashes, is_clash_free_bounded, Clash, ClashShape, ClashVerdict};

/// An IMELL formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Tensor(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    pub fn parse(src: &str) -> Result<Formula, ParseError> {
        crate::syntax::parse_formula(src)
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: lolli position, 1: tensor operand, 2: under a bang
        let own = match self {
            Formula::Atom(_) | Formula::Bang(_) => 2,
            Formula::Tensor(..) => 1,
            Formula::Lolli(..) => 0,
        };
        if own < prec {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => f.write_str(a)?,
            Formula::Bang(a) => {
                f.write_str("!")?;
                a.fmt_prec(f, 2)?;
            }
            Formula::Tensor(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_prec(f, 2)?;
            }
            Formula::Lolli(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" -o ")?;
                b.fmt_prec(f, 0)?;
            }
        }
        if own < prec {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Assignment of formulas to free variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingContext {
    entries: BTreeMap<Var, Formula>,
}

impl TypingContext {
    pub fn new() -> TypingContext {
        TypingContext::default()
    }

    pub fn insert(&mut self, x: Var, a: Formula) -> Option<Formula> {
        self.entries.insert(x, a)
    }

    pub fn with(mut self, x: Var, a: Formula) -> TypingContext {
        self.insert(x, a);
        self
    }

    pub fn get(&self, x: &Var) -> Option<&Formula> {
        self.entries.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parse `e:!X, m:X*X`; the empty string is the empty context.
    pub fn parse(src: &str) -> Result<TypingContext, ParseError> {
        let mut p = crate::syntax::Parser::new(src, false);
        let mut ctx = TypingContext::new();
        if p.at_end() {
            return Ok(ctx);
        }
        loop {
            let x = p.var()?;
            p.expect(":")?;
            let a = p.formula()?;
            if ctx.insert(x.clone(), a).is_some() {
                return Err(p.error(ParseErrorKind::Syntax(format!("{x} declared twice"))));
            }
            if !p.eat(",") {
                break;
            }
        }
        p.finish()?;
        Ok(ctx)
    }
}

impl fmt::Display for TypingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{a}")?;
        }
        Ok(())
    }
}

impl FromIterator<(Var, Formula)> for TypingContext {
    fn from_iter<I: IntoIterator<Item = (Var, Formula)>>(iter: I) -> TypingContext {
        TypingContext { entries: iter.into_iter().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("term is not proper: {0}")]
    Improper(#[from] crate::syntax::ProperError),
    #[error("clash at {}: {}", .0.path, .0.shape)]
    Clash(Clash),
    #[error("unbound variable {0}")]
    Unbound(Var),
    #[error("context assigns {var} the formula {formula}, which does not fit its kind")]
    ContextKind { var: Var, formula: Formula },
    #[error("multiplicative variable {0} is never used")]
    Unused(Var),
    #[error("multiplicative variable {0} is used more than once")]
    Reused(Var),
    #[error("cannot match {expected} with {found} at {path}")]
    Mismatch { expected: String, found: String, path: String },
    #[error("multiplicative variable {var} would need the exponential formula {formula}")]
    BangOnMultiplicative { var: Var, formula: String },
    #[error("infinite formula needed at {path}")]
    Occurs { path: String },
}

/// Synthesize `A` such that `ctx ⊢ t : A`.
pub fn synth(ctx: &TypingContext, t: &Term) -> Result<Formula, TypeError> {
    t.check_proper()?;
    if let Some(c) = find_clashes(t).into_iter().next() {
        return Err(TypeError::Clash(c));
    }
    infer::synth(ctx, t)
}

/// Like [`synth`], also returning the formulas solved for every binder
/// (needed to annotate lambdas).
pub fn synth_annotated(ctx: &TypingContext, t: &Term) -> Result<(Formula, Term), TypeError> {
    t.check_proper()?;
    if let Some(c) = find_clashes(t).into_iter().next() {
        return Err(TypeError::Clash(c));
    }
    infer::synth_annotated(ctx, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn ty(ctx: &str, t: &str) -> Result<Formula, TypeError> {
        synth(&TypingContext::parse(ctx).unwrap(), &parse_term(t).unwrap())
    }

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(ty("", "\\m:X. m").unwrap(), f("X -o X"));
        assert_eq!(ty("e:!X", "!der{e>m} m").unwrap(), f("!X"));
        // promoting the exponential variable itself gives !!X, so m would be banged
        assert!(matches!(
            ty("f:!X", "cut{\\e. der{e>m} m > n} sub{n; !f > o} o"),
            Err(TypeError::BangOnMultiplicative { .. })
        ));
        assert_eq!(ty("f:!X", "cut{\\e. der{e>m} m > n} sub{n; !der{f>p} p > o} o").unwrap(), f("X"));
    }

    #[test]
    fn errors() {
        assert!(matches!(ty("", "m"), Err(TypeError::Unbound(_))));
        assert!(matches!(ty("m:X, n:X", "m"), Err(TypeError::Unused(_))));
        assert!(matches!(ty("m:X", "der{e>x} (x, m)"), Err(TypeError::Unbound(_))));
        assert!(matches!(ty("e:X", "e"), Err(TypeError::ContextKind { .. })));
        assert!(matches!(ty("m:!X", "m"), Err(TypeError::ContextKind { .. })));
        assert!(matches!(ty("m:X", "!m"), Err(TypeError::Improper(_))));
        assert!(matches!(ty("", "cut{!e > m} m"), Err(TypeError::Clash(_))));
        assert!(matches!(ty("m:X", "par{m>x,y}(x,y)"), Err(TypeError::Mismatch { .. })));
        assert!(matches!(ty("e:!X", "der{e>m} sub{m; e > n} n"), Err(TypeError::Mismatch { .. })));
    }

    #[test]
    fn inference_fills_unannotated_binders() {
        assert_eq!(ty("", "\\m. m").unwrap(), f("X -o X"));
        assert_eq!(ty("m:X*Y", "par{m>x,y}(y,x)").unwrap(), f("Y * X"));
        assert_eq!(ty("e:!(X -o Y), n:X", "der{e>m} sub{m; n > o} o").unwrap(), f("Y"));
        let (a, t) = synth_annotated(&TypingContext::new(), &parse_term("\\e. der{e>m} m").unwrap()).unwrap();
        assert_eq!(a, f("!X -o X"));
        assert_eq!(t.to_string(), "\\e:!X. der{e > m} m");
    }

    #[test]
    fn omega_is_untypable() {
        let delta = "\\e. der{e>m} sub{m; e>n} n";
        let omega = format!("cut{{{delta} > o}} sub{{o; !{delta} > o'}} o'");
        assert!(ty("", &omega).is_err());
    }

    #[test]
    fn splitting_typing_correspondence() {
        // a bang formula iff the head is an exponential value
        assert!(ty("e:!X", "cut{e>f} f").unwrap().is_bang());
        assert!(ty("e:!X", "!der{e>m} m").unwrap().is_bang());
        assert!(!ty("e:!X", "der{e>m} m").unwrap().is_bang());
    }

    #[test]
    fn formula_printing() {
        for s in ["X -o X", "!X * X -o X -o Y", "(X -o X) -o X", "X * (X * X)", "!(X * X)", "!!X"] {
            assert_eq!(f(s).to_string(), s);
        }
        let ctx = TypingContext::parse("e:!X, m:X*X").unwrap();
        assert_eq!(ctx.to_string(), "e:!X, m:X * X");
        assert_eq!(TypingContext::parse(&ctx.to_string()).unwrap(), ctx);
    }
}
