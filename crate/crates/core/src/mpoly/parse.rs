//! Recursive-descent reader for polynomial expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary ('*' unary)*`
//! with `/` allowed only before a numeric literal, `unary := '-' unary | power`,
//! `power := atom ('^' integer)?`, `atom := number | variable | '(' expr ')'`.

use num_bigint::BigInt;

use super::{MultiPoly, PolyError, VarList};
use crate::exactring::{Rational, Scalar};

struct Parser<'a, C: Scalar> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarList,
    ctx: &'a C::Ctx,
}

pub(super) fn parse<C: Scalar>(
    vars: &VarList,
    ctx: &C::Ctx,
    src: &str,
) -> Result<MultiPoly<C>, PolyError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
        ctx,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl<C: Scalar> Parser<'_, C> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!("{msg} at byte {}", self.pos))
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

    fn expr(&mut self) -> Result<MultiPoly<C>, PolyError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<C>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                    let inv = C::from_rational(self.ctx, &Rational::new(1.into(), d))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<C>, PolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<MultiPoly<C>, PolyError> {
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
                let n = self.integer()?;
                let c = C::from_rational(self.ctx, &Rational::from_integer(n))?;
                Ok(MultiPoly::constant(self.vars, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                MultiPoly::var(self.vars, self.ctx, name)
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}
