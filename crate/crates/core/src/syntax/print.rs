use std::fmt;

use super::Term;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Pair(a, b) => write!(f, "({a}, {b})"),
            Term::Lam { binder, annot: Some(a), body } => write!(f, "\\{binder}:{a}. {body}"),
            Term::Lam { binder, annot: None, body } => write!(f, "\\{binder}. {body}"),
            Term::Bang(b) => write!(f, "!{b}"),
            Term::Cut { value, binder, body } => write!(f, "cut{{{value} > {binder}}} {body}"),
            Term::Par { conclusion, left, right, body } => {
                write!(f, "par{{{conclusion} > {left}, {right}}} {body}")
            }
            Term::Sub { conclusion, value, binder, body } => {
                write!(f, "sub{{{conclusion}; {value} > {binder}}} {body}")
            }
            Term::Der { conclusion, binder, body } => write!(f, "der{{{conclusion} > {binder}}} {body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_term;

    #[test]
    fn round_trip() {
        let srcs = [
            "cut{n > m} m",
            "sub{m; !f > x} x",
            "\\m:X -o X. m",
            "(\\m. m, !der{e > x} x)",
            "par{m > x, y} (x, y)",
            "cut{\\e. der{e > m} sub{m; e > n} n > o} sub{o; !\\e. der{e > m} sub{m; e > n} n > o'} o'",
            "!cut{f > g} g",
        ];
        for s in srcs {
            let t = parse_term(s).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }
}
