//! Recursive-descent parser for the surface syntax.
//!
//! ```text
//! term    ::= value | cut{ value > var } term | par{ var > var , var } term
//!           | sub{ var ; value > var } term | der{ var > var } term
//! value   ::= var | ( term , term ) | \ var [: formula] . term | ! term
//! formula ::= Atom | ! formula | formula * formula | formula -o formula
//! ```

use std::fmt;

use super::{Term, Var, VarKind};
use crate::contexts::Context;
use crate::typing::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// A variable of the wrong kind in a position that fixes the kind.
    Kind(String),
    /// A non-value in the value slot of a cut or subtraction.
    SplitShape(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, msg) = match &self.kind {
            ParseErrorKind::Syntax(m) => ("syntax error", m.as_str()),
            ParseErrorKind::Kind(m) => ("kind error", m.as_str()),
            ParseErrorKind::SplitShape(c) => ("split-shape error", *c),
        };
        write!(f, "{what} at {}:{}: {msg}", self.line, self.column)
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, false);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parse a one-hole context; the hole is written `<>`.
pub fn parse_context(src: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(src, true);
    let t = p.term()?;
    p.finish()?;
    if p.holes != 1 {
        return Err(p.error(ParseErrorKind::Syntax(format!("expected exactly one hole, found {}", p.holes))));
    }
    Ok(Context::from_skeleton(t).expect("hole was parsed"))
}

pub(crate) fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src, false);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
    allow_hole: bool,
    holes: usize,
}

const KEYWORDS: [&str; 4] = ["cut", "par", "sub", "der"];

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, allow_hole: bool) -> Parser<'a> {
        Parser { src, pos: 0, allow_hole, holes: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn location(&self) -> (usize, usize) {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
        (line, column)
    }

    pub(crate) fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.location();
        ParseError { kind, line, column }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(self.error(ParseErrorKind::Syntax(msg.into())))
    }

    pub(crate) fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if self.rest().starts_with('#') {
                let skip = self.rest().find('\n').unwrap_or(self.rest().len());
                self.pos += skip;
            } else {
                break;
            }
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            let tok: String = self.rest().chars().take(12).collect();
            self.syntax(format!("unexpected trailing input `{tok}`"))
        }
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            let found: String = self.rest().chars().take(8).collect();
            self.syntax(format!("expected `{tok}`, found `{found}`"))
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|&(_, c)| !(c.is_alphanumeric() || c == '_' || c == '\'')).map_or(rest.len(), |(i, _)| i);
        Some(&rest[..end])
    }

    /// Keyword form: one of the left constructors immediately followed by `{`.
    fn peek_keyword(&mut self) -> Option<&'static str> {
        let id = self.peek_ident()?;
        let kw = KEYWORDS.iter().find(|k| **k == id)?;
        let after = self.rest()[id.len()..].trim_start();
        after.starts_with('{').then_some(*kw)
    }

    pub(crate) fn var(&mut self) -> Result<Var, ParseError> {
        match self.peek_ident() {
            Some(id) if id.starts_with(|c: char| c.is_lowercase()) => {
                self.pos += id.len();
                Ok(Var::named(id))
            }
            Some(id) => self.syntax(format!("`{id}` is not a variable (variables start lowercase)")),
            None => self.syntax("expected a variable"),
        }
    }

    fn var_of(&mut self, kind: VarKind, role: &str) -> Result<Var, ParseError> {
        let start = self.pos;
        let x = self.var()?;
        if x.kind() != kind {
            self.pos = start;
            self.skip_ws();
            let want = match kind {
                VarKind::Multiplicative => "multiplicative",
                VarKind::Exponential => "exponential",
            };
            return Err(self.error(ParseErrorKind::Kind(format!("{role} `{x}` must be {want}"))));
        }
        Ok(x)
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek_keyword() {
            Some("cut") => {
                self.pos += 3;
                self.expect("{")?;
                let value = self.value_slot("cut")?;
                self.expect(">")?;
                let x = self.var()?;
                self.expect("}")?;
                Ok(Term::cut(value, x, self.term()?))
            }
            Some("par") => {
                self.pos += 3;
                self.expect("{")?;
                let m = self.var_of(VarKind::Multiplicative, "par conclusion")?;
                self.expect(">")?;
                let x = self.var()?;
                self.expect(",")?;
                let y = self.var()?;
                self.expect("}")?;
                Ok(Term::par(m, x, y, self.term()?))
            }
            Some("sub") => {
                self.pos += 3;
                self.expect("{")?;
                let m = self.var_of(VarKind::Multiplicative, "subtraction conclusion")?;
                self.expect(";")?;
                let value = self.value_slot("subtraction")?;
                self.expect(">")?;
                let x = self.var()?;
                self.expect("}")?;
                Ok(Term::sub(m, value, x, self.term()?))
            }
            Some("der") => {
                self.pos += 3;
                self.expect("{")?;
                let e = self.var_of(VarKind::Exponential, "dereliction conclusion")?;
                self.expect(">")?;
                let x = self.var()?;
                self.expect("}")?;
                Ok(Term::der(e, x, self.term()?))
            }
            _ => self.value(),
        }
    }

    fn value_slot(&mut self, construct: &'static str) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek_keyword().is_some() {
            return Err(self.error(ParseErrorKind::SplitShape(construct)));
        }
        let v = self.value()?;
        if !v.is_value() && !self.is_hole(&v) {
            self.pos = start;
            return Err(self.error(ParseErrorKind::SplitShape(construct)));
        }
        Ok(v)
    }

    fn is_hole(&self, t: &Term) -> bool {
        matches!(t, Term::Var(x) if *x == Context::hole_var())
    }

    fn value(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.allow_hole && self.eat("<>") {
            self.holes += 1;
            return Ok(Term::Var(Context::hole_var()));
        }
        if self.eat("(") {
            let a = self.term()?;
            if self.eat(")") {
                // plain grouping
                return Ok(a);
            }
            self.expect(",")?;
            let b = self.term()?;
            self.expect(")")?;
            return Ok(Term::pair(a, b));
        }
        if self.eat("\\") || self.eat("λ") {
            let x = self.var()?;
            let annot = if self.eat(":") { Some(self.formula()?) } else { None };
            self.expect(".")?;
            return Ok(Term::lam(x, annot, self.term()?));
        }
        if self.eat("!") {
            return Ok(Term::bang(self.term()?));
        }
        if self.peek_ident().is_some() {
            return Ok(Term::Var(self.var()?));
        }
        let found: String = self.rest().chars().take(8).collect();
        if found.is_empty() {
            self.syntax("unexpected end of input, expected a term")
        } else {
            self.syntax(format!("unexpected `{found}`, expected a term"))
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.tensor()?;
        if self.eat("-o") || self.eat("⊸") {
            let rhs = self.formula()?;
            return Ok(Formula::lolli(lhs, rhs));
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat("*") || self.eat("⊗") {
            acc = Formula::tensor(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("!") {
            return Ok(Formula::bang(self.unary()?));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        match self.peek_ident() {
            Some(id) if id.starts_with(|c: char| c.is_uppercase()) => {
                self.pos += id.len();
                Ok(Formula::atom(id))
            }
            Some(id) => self.syntax(format!("`{id}` is not an atom (atoms are capitalized)")),
            None => self.syntax("expected a formula"),
        }
    }
}
