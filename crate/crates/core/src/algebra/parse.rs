//! Plain-text polynomial grammar.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'x[' INT ',' INT ']' ['^' INT] | 'y[' INT ']' ['^' INT]
//! ```
//!
//! `x[j,i]` with `j > i` is read as `-x[i,j]`; `x[i,i]` is zero.
//! Ideals are newline-separated polynomials; `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::polynomial::{Coeff, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug)]
enum RawFactor {
    Number(Coeff),
    X(usize, usize, u32),
    Y(usize, u32),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<usize> {
        let v = self.integer()?;
        usize::try_from(v).or_else(|_| self.err("index too large"))
    }

    fn power(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small()?;
            return u32::try_from(e).or_else(|_| self.err("exponent too large"));
        }
        Ok(1)
    }

    fn factor(&mut self) -> Result<RawFactor> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                Ok(RawFactor::Number(Coeff::new(num, den)))
            }
            Some(b'x') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.small()?;
                self.expect(b',')?;
                let j = self.small()?;
                self.expect(b']')?;
                Ok(RawFactor::X(i, j, self.power()?))
            }
            Some(b'y') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.small()?;
                self.expect(b']')?;
                Ok(RawFactor::Y(i, self.power()?))
            }
            _ => self.err("expected number or variable"),
        }
    }

    fn term(&mut self) -> Result<Vec<RawFactor>> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(fs)
    }

    fn poly(&mut self) -> Result<Vec<(bool, Vec<RawFactor>)>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push((negative, self.term()?));
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => break,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

fn max_index(terms: &[(bool, Vec<RawFactor>)]) -> usize {
    terms
        .iter()
        .flat_map(|(_, fs)| fs.iter())
        .map(|f| match f {
            RawFactor::Number(_) => 0,
            RawFactor::X(i, j, _) => *i.max(j),
            RawFactor::Y(i, _) => *i,
        })
        .max()
        .unwrap_or(0)
}

fn build(terms: Vec<(bool, Vec<RawFactor>)>, n: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(n);
    for (negative, factors) in terms {
        let mut t = Polynomial::one(n);
        for f in factors {
            let p = match f {
                RawFactor::Number(c) => Polynomial::constant(n, c),
                RawFactor::X(i, j, e) => pow(&Polynomial::x(i, j, n)?, e),
                RawFactor::Y(i, e) => pow(&Polynomial::y(i, n)?, e),
            };
            t = &t * &p;
        }
        acc = if negative { &acc - &t } else { &acc + &t };
    }
    Ok(acc)
}

fn pow(p: &Polynomial, e: u32) -> Polynomial {
    (0..e).fold(Polynomial::one(p.n()), |acc, _| &acc * p)
}

/// Parses a polynomial of `S_n`.
pub fn parse_polynomial(src: &str, n: usize) -> Result<Polynomial> {
    let mut lx = Lexer {
        src: src.as_bytes(),
        pos: 0,
    };
    let terms = lx.poly()?;
    build(terms, n)
}

/// Parses an ideal file. When `n` is `None` it is inferred as the largest
/// index mentioned.
pub fn parse_ideal(src: &str, n: Option<usize>) -> Result<Vec<Polynomial>> {
    let mut raw = Vec::new();
    let mut offset = 0;
    for line in src.lines() {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let mut lx = Lexer {
                src: body.as_bytes(),
                pos: 0,
            };
            let terms = lx.poly().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
                other => other,
            })?;
            raw.push(terms);
        }
        offset += line.len() + 1;
    }
    let n = match n {
        Some(n) => n,
        None => raw.iter().map(|t| max_index(t)).max().unwrap_or(0).max(1),
    };
    raw.into_iter().map(|t| build(t, n)).collect()
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write_coeff(f, &a)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write_coeff(f, &a)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
