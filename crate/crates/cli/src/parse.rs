//! Polynomial expression parser.
//!
//! Grammar (explicit `*`, integer exponents, `p/q` only between integer
//! literals):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := number | variable | '(' expr ')'
//! ```

use std::fmt;

use lndkit::poly::default_var_names;
use lndkit::{Poly, Rational};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        src[start..*i].parse::<BigInt>().expect("digits")
    };
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let n = read_int(&mut i);
                // p/q literal
                let mut j = i;
                while j < bytes.len() && bytes[j] == b' ' {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'/' {
                    j += 1;
                    while j < bytes.len() && bytes[j] == b' ' {
                        j += 1;
                    }
                    if j >= bytes.len() || !bytes[j].is_ascii_digit() {
                        return Err(ParseError {
                            position: j,
                            message: "'/' is only allowed inside a rational literal".into(),
                            expected: vec!["integer denominator"],
                        });
                    }
                    i = j;
                    let d = read_int(&mut i);
                    if d == BigInt::from(0) {
                        return Err(ParseError { position: j, message: "zero denominator".into(), expected: vec![] });
                    }
                    out.push((start, Tok::Num(Rational::new(n, d))));
                } else {
                    out.push((start, Tok::Int(n)));
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Var(src[start..i].to_string())));
            }
            b'+' => {
                i += 1;
                out.push((start, Tok::Plus));
            }
            b'-' => {
                i += 1;
                out.push((start, Tok::Minus));
            }
            b'*' => {
                i += 1;
                out.push((start, Tok::Star));
            }
            b'^' => {
                i += 1;
                out.push((start, Tok::Caret));
            }
            b'(' => {
                i += 1;
                out.push((start, Tok::LParen));
            }
            b')' => {
                i += 1;
                out.push((start, Tok::RParen));
            }
            b'/' => {
                return Err(ParseError {
                    position: i,
                    message: "'/' is only allowed inside a rational literal".into(),
                    expected: vec![],
                })
            }
            _ => {
                let c = src[i..].chars().next().expect("in range");
                return Err(ParseError { position: i, message: format!("unexpected character '{c}'"), expected: vec![] });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a [String],
}

const OPERAND: &[&str] = &["number", "variable", "'('", "'-'"];

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err(&self, message: impl Into<String>, expected: &[&'static str]) -> ParseError {
        ParseError { position: self.offset(), message: message.into(), expected: expected.to_vec() }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Num(_) | Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    return Err(self.err("missing operator (multiplication needs an explicit '*')", &["'*'", "'+'", "'-'"]))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Int(n)) => n.clone(),
                Some(Tok::Minus) => return Err(self.err("negative exponent", &["non-negative integer"])),
                _ => return Err(self.err("exponent must be a non-negative integer literal", &["non-negative integer"])),
            };
            let at = self.offset();
            self.pos += 1;
            let e: u32 = u32::try_from(&exp).map_err(|_| ParseError {
                position: at,
                message: "exponent too large".into(),
                expected: vec![],
            })?;
            if let Some(Tok::Caret) = self.peek() {
                return Err(self.err("chained '^' is ambiguous; use parentheses", &[]));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Poly::constant(n, Rational::from_integer(v)))
            }
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Poly::constant(n, q))
            }
            Some(Tok::Var(name)) => {
                let Some(i) = self.names.iter().position(|v| *v == name) else {
                    let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
                    return Err(self.err(format!("unknown variable '{name}' (variables: {})", names.join(", ")), &[]));
                };
                self.pos += 1;
                Ok(Poly::var(n, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("unbalanced parenthesis", &["')'"])),
                }
            }
            None => Err(self.err("unexpected end of input", OPERAND)),
            Some(_) => Err(self.err("unexpected token", OPERAND)),
        }
    }
}

/// Parse with the default variable names for `nvars` (`x`; `x, y`;
/// `x1..xn`).
pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly, ParseError> {
    parse_poly_with(src, &default_var_names(nvars))
}

pub fn parse_poly_with(src: &str, names: &[String]) -> Result<Poly, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError { position: 0, message: "empty expression".into(), expected: OPERAND.to_vec() });
    }
    let mut p = Parser { toks, pos: 0, end: src.len(), names };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        let msg = match p.peek() {
            Some(Tok::RParen) => "unbalanced parenthesis",
            _ => "unexpected token",
        };
        return Err(p.err(msg, &["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(out)
}

/// A rational number: `p`, `-p` or `p/q`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let c = parse_poly(src, 1)?;
    c.constant_value().ok_or(ParseError { position: 0, message: "expected a rational number".into(), expected: vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lndkit::poly::{int, rat};

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn examples() {
        assert_eq!(parse_poly("x^2 + 2*x*y + y^2", 2).unwrap(), (&x() + &y()).pow(2));
        let p = parse_poly("3/2*x - 1", 2).unwrap();
        assert_eq!(p, &x().scale(&rat(3, 2)) - &Poly::one(2));
        assert_eq!(p.to_string(), "3/2*x - 1");
        assert_eq!(parse_poly("x*(x+y)^2", 2).unwrap(), &x() * &(&x() + &y()).pow(2));
        assert_eq!(parse_poly("-x^2", 2).unwrap(), -&x().pow(2));
        assert_eq!(parse_poly("x1*x3^4", 3).unwrap(), &Poly::var(3, 0) * &Poly::var(3, 2).pow(4));
        assert_eq!(parse_rational("-7/14").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("", 2).unwrap_err().message, "empty expression");
        assert!(parse_poly("2x", 2).unwrap_err().message.contains("explicit '*'"));
        assert!(parse_poly("x^-1", 2).unwrap_err().message.contains("negative exponent"));
        assert!(parse_poly("x^2^3", 2).unwrap_err().message.contains("chained"));
        assert!(parse_poly("x/2", 2).is_err());
        assert!(parse_poly("z", 2).unwrap_err().message.contains("unknown variable"));
        assert!(parse_poly("(x + y", 2).unwrap_err().message.contains("parenthesis"));
        assert!(parse_poly("x + y)", 2).unwrap_err().message.contains("parenthesis"));
        assert_eq!(parse_poly("x + * y", 2).unwrap_err().position, 4);
        assert!(parse_poly("x^y", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
    }
}
