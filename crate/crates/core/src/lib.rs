//! The exponential substitution calculus: terms, contexts, typing,
//! rewriting, measures, strategies and an exhaustive-search oracle.

pub mod contexts;
pub mod measures;
pub mod oracle;
pub mod rewriting;
pub mod strategy;
pub mod substitution;
pub mod syntax;
pub mod typing;

pub use contexts::{Context, Goodness, Path};
pub use measures::{measure, potential, Overflow};
pub use rewriting::{apply, cut_equiv, redexes, Mode, Redex, RuleKind};
pub use substitution::subst_exp;
pub use syntax::{parse_context, parse_term, Term, Var, VarKind};
pub use typing::{synth, Formula, TypeError, TypingContext};
