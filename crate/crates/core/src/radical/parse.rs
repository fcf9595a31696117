//! Recursive-descent parser for radical expressions.
//!
//! ```text
//! expr := term (('*' | '/') term)*
//! term := 'zeta(' int ')' ['^' int]
//!       | 'rt(' rational ',' posint ')' ['^' int]
//!       | rational
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Radical;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, message: message.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        self.skip_ws();
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).expect("ascii digits");
        let v: BigInt = text.parse().expect("digits parse");
        Ok(if neg { -v } else { v })
    }

    fn posint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        if !v.is_positive() {
            return err(start, "expected a positive integer");
        }
        match v.to_u32() {
            Some(n) => Ok(n),
            None => err(start, "integer too large"),
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.int()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let d = self.int()?;
            if d.is_zero() {
                return err(at, "zero denominator");
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if !self.eat(b'^') {
            return Ok(None);
        }
        self.skip_ws();
        let at = self.pos;
        match self.int()?.to_i64() {
            Some(k) => Ok(Some(k)),
            None => err(at, "exponent too large"),
        }
    }

    fn term(&mut self) -> Result<Radical> {
        self.skip_ws();
        let start = self.pos;
        let base = if self.keyword("zeta") {
            self.expect(b'(')?;
            let m = self.posint()?;
            self.expect(b')')?;
            Radical::zeta(m as u64, 1)
        } else if self.keyword("rt") {
            self.expect(b'(')?;
            self.skip_ws();
            let at = self.pos;
            let a = self.rational()?;
            if a.is_zero() {
                return err(at, "zero radicand");
            }
            self.expect(b',')?;
            let n = self.posint()?;
            self.expect(b')')?;
            Radical::rt(&a, n).map_err(|e| relocate(e, start))?
        } else {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {}
                Some(_) => return err(self.pos, "expected 'zeta(', 'rt(' or an integer"),
                None => return err(self.pos, "unexpected end of input"),
            }
            let at = self.pos;
            let n = self.int()?;
            if n.is_zero() {
                return err(at, "zero factor");
            }
            return Radical::from_rational(&BigRational::from_integer(n)).map_err(|e| relocate(e, at));
        };
        Ok(match self.exponent()? {
            Some(k) => base.pow(k),
            None => base,
        })
    }

    fn expr(&mut self) -> Result<Radical> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.term()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }
}

fn relocate(e: Error, offset: usize) -> Error {
    match e {
        Error::Domain(message) => Error::Parse { offset, message },
        other => other,
    }
}

pub(super) fn parse(s: &str) -> Result<Radical> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(r)
}

pub(super) fn parse_list(s: &str) -> Result<Vec<Radical>> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(p.expr()?);
        if p.eat(b',') {
            continue;
        }
        if p.peek().is_some() {
            return err(p.pos, "expected ',' or end of input");
        }
        return Ok(out);
    }
}
