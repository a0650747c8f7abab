//! Polynomial expressions over an algebra's letters.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Products keep their written order, so `dx*x` in a Weyl algebra is
//! `x*dx + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use weyl_core::apply::polynomial_ring;
use weyl_core::{Algebra, Element, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("`{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::Ident(_) | Tok::Open)
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let v: BigInt = text[i..end].parse().expect("digits");
            out.push((i, Tok::Int(v)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            out.push((i, Tok::Ident(text[i..end].to_string())));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => return err(i, format!("unexpected character `{c}`")),
        };
        out.push((i, t));
        it.next();
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    alg: &'a Algebra,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn engine(&self, pos: usize, e: weyl_core::Error) -> ParseError {
        ParseError { pos, msg: e.to_string() }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).map_err(|e| self.engine(pos, e))?;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).map_err(|e| self.engine(pos, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f).map_err(|e| self.engine(pos, e))?;
                }
                t if t.starts_atom() => return err(pos, "implicit multiplication is not allowed; write `*`"),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => match u32::try_from(&v) {
                Ok(k) => Ok(base.pow(k)),
                Err(_) => err(pos, "exponent too large"),
            },
            Tok::Minus => err(pos, "malformed exponent: negative exponents are not allowed"),
            t => err(pos, format!("malformed exponent: expected a nonnegative integer, found {}", t.describe())),
        }
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(num) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Element::constant(self.alg, Rational::from_integer(num)));
                }
                self.bump();
                let dpos = self.pos();
                match self.bump() {
                    Tok::Int(den) if !den.is_zero() => Ok(Element::constant(self.alg, Rational::new(num, den))),
                    Tok::Int(_) => err(dpos, "zero denominator"),
                    t => err(dpos, format!("expected a denominator, found {}", t.describe())),
                }
            }
            Tok::Ident(name) => self
                .alg
                .var(&name)
                .ok_or_else(|| ParseError { pos, msg: format!("unknown identifier `{name}`") }),
            Tok::Open => {
                let e = self.expr()?;
                let cpos = self.pos();
                match self.bump() {
                    Tok::Close => Ok(e),
                    t => err(cpos, format!("expected `)`, found {}", t.describe())),
                }
            }
            t => err(pos, format!("expected a number, identifier or `(`, found {}", t.describe())),
        }
    }
}

/// Parses `text` in `alg`; identifiers must be letters of `alg`.
pub fn parse_element(text: &str, alg: &Algebra) -> Result<Element, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, alg };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Slash => err(p.pos(), "`/` is only allowed inside a rational literal such as 1/2"),
        t => err(p.pos(), format!("unexpected {}", t.describe())),
    }
}

/// Commutative polynomial in `vars`.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Element, ParseError> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let ring = polynomial_ring(&names).map_err(|e| ParseError { pos: 0, msg: e.to_string() })?;
    parse_element(text, &ring)
}

/// Comma-separated list of names or rationals.
pub fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let bad = || ParseError { pos: 0, msg: format!("`{t}` is not a rational number") };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ParseError { pos: 0, msg: "zero denominator".into() });
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_core::signature::Signature;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn basic_expressions() {
        assert_eq!(parse_poly("x^2 + y^3", &xy()).unwrap().to_string(), "y^3 + x^2");
        assert_eq!(parse_poly("1/2*x", &xy()).unwrap().to_string(), "1/2*x");
        assert_eq!(parse_poly("-(x-y)^2", &xy()).unwrap(), parse_poly("-x^2+2*x*y-y^2", &xy()).unwrap());
        assert_eq!(parse_poly("  ", &xy()).unwrap_err().msg, "expected a number, identifier or `(`, found end of input");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let e = parse_poly("x y", &xy()).unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.msg.contains("implicit multiplication"));
        assert_eq!(parse_poly("2x", &xy()).unwrap_err().pos, 1);
        assert_eq!(parse_poly("(x)(y)", &xy()).unwrap_err().pos, 3);
    }

    #[test]
    fn reports_positions() {
        let e = parse_poly("x + z", &xy()).unwrap_err();
        assert_eq!((e.pos, e.msg.as_str()), (4, "unknown identifier `z`"));
        assert_eq!(parse_poly("x^y", &xy()).unwrap_err().pos, 2);
        assert_eq!(parse_poly("x^-1", &xy()).unwrap_err().pos, 2);
        assert_eq!(parse_poly("x/2", &xy()).unwrap_err().pos, 1);
        assert_eq!(parse_poly("(x+y", &xy()).unwrap_err().pos, 4);
        assert_eq!(parse_poly("1/0", &xy()).unwrap_err().msg, "zero denominator");
    }

    #[test]
    fn weyl_products_keep_order() {
        let d = Algebra::new(Signature::weyl(&["x"]).unwrap());
        assert_eq!(parse_element("dx*x", &d).unwrap().to_string(), "x*dx + 1");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
        assert!(parse_rational("a").is_err());
    }
}
