//! Recursive-descent parser for scalar expressions over `s, u, v, h`.
//!
//! Accepts `+ - * / ^`, parentheses, integer literals and the four variable
//! names. Exponents must be non-negative integer literals.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{MultiPoly, RatFunc, Rational, ScalarError, Var};

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { input, bytes: input.as_bytes(), pos: 0 }
    }

    fn err(&self, reason: impl Into<String>) -> ScalarError {
        ScalarError::Parse { input: self.input.to_string(), reason: format!("{} at byte {}", reason.into(), self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ScalarError> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = (c as char).to_string();
                self.pos += 1;
                let v = Var::from_name(&name).ok_or_else(|| self.err(format!("unknown variable {name:?}")))?;
                Ok(RatFunc::var(v))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.input[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn finish(mut self) -> Result<(), ScalarError> {
        if self.peek().is_some() {
            Err(self.err("trailing input"))
        } else {
            Ok(())
        }
    }
}

pub(super) fn parse_ratfunc(text: &str) -> Result<RatFunc, ScalarError> {
    let mut p = Parser::new(text);
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

pub(super) fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let f = parse_ratfunc(text)?;
    f.as_constant().ok_or_else(|| ScalarError::Parse { input: text.to_string(), reason: "not a constant".into() })
}

impl FromStr for RatFunc {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ratfunc(s)
    }
}

impl FromStr for MultiPoly {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let f = parse_ratfunc(s)?;
        let den = f.den().constant_value().ok_or_else(|| ScalarError::Parse {
            input: s.to_string(),
            reason: "not a polynomial".into(),
        })?;
        Ok(f.num().scale(&den.recip()))
    }
}
