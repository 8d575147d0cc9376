//! Polynomial expressions: `3*x^2*y - 7`, `(x+1)^2`, `1/2 x + 3`.
//!
//! Parses into `ℚ[x]`; callers convert to the target domain.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{MonomialOrdering, Polynomial};
use crate::numth::BigRat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    ord: MonomialOrdering,
}

type Q = Polynomial<BigRat>;

pub fn parse_polynomial(src: &str, vars: &[String], ord: MonomialOrdering) -> Result<Q, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars, ord };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected character '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn constant(&self, c: BigRat) -> Q {
        Polynomial::constant(c, self.vars.len(), self.ord)
    }

    fn expr(&mut self) -> Result<Q, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Q, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // juxtaposition: `3x`, `2(x+1)`, `x y`
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Q, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| ParseError { offset: start, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Q, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save;
                        return Err(self.err("expected denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    return Ok(self.constant(BigRat::new(num, den)));
                }
                Ok(self.constant(BigRat::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::var(i, (), self.vars.len(), self.ord)),
                    None => Err(ParseError { offset: start, message: format!("unknown variable '{name}'") }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Whether every coefficient is an integer.
pub fn is_integral(f: &Q) -> bool {
    f.terms().iter().all(|t| t.coeff.denom().is_one())
}
