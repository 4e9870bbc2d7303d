//! Parser for univariate rational-function expressions in `x`.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("-" | "+") unary | power
//! power   := primary ("^" unary)?        exponent: a constant integer ≥ 0
//! primary := integer | "x" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus (`-x^2` is `-(x^2)`) and associates to
//! the right (`2^3^2` is `2^9`). Sums of fractions are brought over the
//! least common denominator; products and quotients are never cancelled, so
//! `(x^2-1)/(x-1)` reaches [`RatMap::make_map`] with a common factor and is
//! rejected as not coprime.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::ratmap::{RatMap, DEFAULT_DEGREE_CAP};

/// Parse `text` into a rational map of degree at least 2.
pub fn parse_map_expression(text: &str) -> Result<RatMap> {
    let frac = parse_fraction(text)?;
    RatMap::make_map(frac.num.coeffs(), frac.den.coeffs())
}

/// Numerator and denominator as written, before coprimality checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub num: QPoly,
    pub den: QPoly,
}

impl Fraction {
    fn constant(c: Rational) -> Self {
        Fraction { num: QPoly::constant(c), den: QPoly::one() }
    }

    fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Fold a constant denominator into the numerator.
    fn fold(self) -> Self {
        if self.den.is_constant() {
            let c = self.den.coeff(0);
            Fraction { num: self.num.scale(&(Rational::one() / c)), den: QPoly::one() }
        } else {
            self
        }
    }

    fn add(self, rhs: Fraction, negate: bool) -> Fraction {
        let g = self.den.gcd(&rhs.den);
        let (l_over_a, _) = rhs.den.div_rem(&g);
        let (l_over_b, _) = self.den.div_rem(&g);
        let den = &self.den * &l_over_a;
        let left = &self.num * &l_over_a;
        let right = &rhs.num * &l_over_b;
        let num = if negate { &left - &right } else { &left + &right };
        Fraction { num, den }.fold()
    }

    fn mul(self, rhs: Fraction) -> Fraction {
        Fraction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.fold()
    }

    fn div(self, rhs: Fraction, pos: usize) -> Result<Fraction> {
        if rhs.num.is_zero() {
            return Err(Error::Syntax { pos, msg: "division by zero".into() });
        }
        Ok(Fraction { num: &self.num * &rhs.den, den: &self.den * &rhs.num }.fold())
    }

    fn pow(&self, e: u32) -> Fraction {
        Fraction { num: self.num.pow(e), den: self.den.pow(e) }.fold()
    }
}

/// Parse `text` into numerator and denominator without building a map.
pub fn parse_fraction(text: &str) -> Result<Fraction> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Fraction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(c @ (b'+' | b'-')) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(rhs, c == b'-');
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Fraction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    acc = acc.div(self.unary()?, at)?;
                }
                _ => break,
            }
            self.check_degree(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Fraction> {
        if self.eat(b'-') {
            let v = self.unary()?;
            return Ok(Fraction { num: -&v.num, den: v.den });
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Fraction> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let exp = self.unary()?;
        if !exp.num.is_constant() || !exp.den.is_constant() {
            return Err(Error::Syntax { pos: at, msg: "exponent must be a constant".into() });
        }
        let e = exp.num.coeff(0) / exp.den.coeff(0);
        if !e.is_integer() || e < Rational::zero() {
            return Err(Error::Syntax { pos: at, msg: format!("exponent must be an integer >= 0, got {e}") });
        }
        let cap = DEFAULT_DEGREE_CAP / base.degree().max(1);
        let e = e
            .to_integer()
            .to_usize()
            .filter(|&e| e <= cap)
            .ok_or_else(|| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
        Ok(base.pow(e as u32))
    }

    fn primary(&mut self) -> Result<Fraction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Fraction { num: QPoly::x(), den: QPoly::one() })
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: BigInt = digits.parse().expect("digit run");
                Ok(Fraction::constant(Rational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn check_degree(&self, f: &Fraction) -> Result<()> {
        if f.degree() > DEFAULT_DEGREE_CAP {
            return Err(self.error(format!("degree exceeds {DEFAULT_DEGREE_CAP}")));
        }
        Ok(())
    }
}
