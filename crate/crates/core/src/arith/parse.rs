//! Recursive-descent parser for univariate polynomial expressions with
//! rational coefficients: sums, products (explicit or by juxtaposition),
//! division by constants, nonnegative integer powers and parentheses.
//!
//! The variable name is chosen by the caller (`x` for polynomials, `pi` or
//! `omega` for rank-2 coordinates). Error positions are byte offsets into the
//! input, shifted by `offset` so callers can report positions inside larger
//! spec strings.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::qpoly::QPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(s: &str, offset: usize) -> Result<Lexer> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            toks.push((Tok::Num(n), offset + start));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(s[start..i].to_string()), offset + start));
        } else if "+-*/^()".contains(ch) {
            toks.push((Tok::Sym(ch), offset + i));
            i += 1;
        } else {
            return Err(Error::parse(
                offset + i,
                format!("unexpected character `{}`", s[i..].chars().next().unwrap()),
            ));
        }
    }
    Ok(Lexer {
        toks,
        end: offset + s.len(),
    })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.lx.toks.get(self.pos).map_or(self.lx.end, |(_, p)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.power()?;
                    if !d.is_constant() {
                        return Err(Error::parse(at, "division by a non-constant"));
                    }
                    let d = d.coeff(0);
                    if d.is_zero() {
                        return Err(Error::parse(at, "division by zero"));
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / d));
                }
                Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.primary()?;
        if self.eat('^') {
            let at = self.here();
            let paren = self.eat('(');
            let e = match self.peek() {
                Some(Tok::Num(n)) => n
                    .to_u32()
                    .filter(|&e| e <= 4096)
                    .ok_or_else(|| Error::parse(at, "exponent too large"))?,
                _ => return Err(Error::parse(at, "expected a nonnegative integer exponent")),
            };
            self.pos += 1;
            if paren && !self.eat(')') {
                return Err(Error::parse(self.here(), "expected `)`"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<QPoly> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(QPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                if name == self.var {
                    self.pos += 1;
                    Ok(QPoly::x())
                } else {
                    Err(Error::parse(
                        at,
                        format!("unknown symbol `{name}` (expected `{}`)", self.var),
                    ))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.here(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(Tok::Sym(c)) => Err(Error::parse(at, format!("unexpected `{c}`"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression in the single variable `var`. `offset` is added to
/// reported error positions.
pub fn parse_expr(s: &str, var: &str, offset: usize) -> Result<QPoly> {
    let lx = lex(s, offset)?;
    if lx.toks.is_empty() {
        return Err(Error::parse(offset, "empty expression"));
    }
    let mut p = Parser { lx, pos: 0, var };
    let e = p.expr()?;
    if p.pos < p.lx.toks.len() {
        return Err(Error::parse(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn polynomials() {
        let p = parse_expr("3x^2 + 2x + 1", "x", 0).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(2), int(3)]);
        let p = parse_expr("(x+1)(x+2)", "x", 0).unwrap();
        assert_eq!(p.coeffs(), &[int(2), int(3), int(1)]);
        let p = parse_expr("x - 2/3", "x", 0).unwrap();
        assert_eq!(p.coeffs(), &[rat(-2, 3), int(1)]);
        let p = parse_expr("-x^2+5", "x", 0).unwrap();
        assert_eq!(p.coeffs(), &[int(5), int(0), int(-1)]);
        let p = parse_expr("(pi+2)/2", "pi", 0).unwrap();
        assert_eq!(p.coeffs(), &[int(1), rat(1, 2)]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("x + y", "x", 10) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 14),
            other => panic!("{other:?}"),
        }
        match parse_expr("x^", "x", 0) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("x/x", "x", 0).is_err());
        assert!(parse_expr("(x+1", "x", 0).is_err());
        assert!(parse_expr("", "x", 0).is_err());
    }
}
