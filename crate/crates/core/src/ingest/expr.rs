//! Polynomial expressions in one variable with rational coefficients:
//! `+ - * / ^`, parentheses, integers, and a single identifier.
//! Division is only by nonzero constants.

use num_bigint::BigInt;

use crate::arith::{Rational, RationalPoly};
use crate::numfield::{NFElement, NumberField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    var: Option<String>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalPoly, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalPoly, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            if c == b'*' {
                acc = &acc * &f;
            } else {
                if f.deg() > 0 || f.is_zero() {
                    return self.err("division only by nonzero constants");
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / f.coeff(0)));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalPoly, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let Ok(e) = digits.parse::<u32>() else { return self.err("expected a small non-negative exponent") };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalPoly, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").parse().expect("digits");
                Ok(RationalPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").to_string();
                match &self.var {
                    Some(v) if *v != name => {
                        self.pos = start;
                        self.err(format!("unexpected identifier {name:?}; the variable is {v:?}"))
                    }
                    _ => {
                        self.var = Some(name);
                        Ok(RationalPoly::x())
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse an expression; `var` fixes the variable name if given.
pub fn parse_poly(s: &str, var: Option<&str>) -> Result<RationalPoly, ExprError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, var: var.map(str::to_string) };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// An element of `field` written as an expression in its generator.
pub fn parse_element(field: &NumberField, s: &str, var: Option<&str>) -> Result<NFElement, ExprError> {
    Ok(NFElement::from_poly(field, &parse_poly(s, var)?))
}
