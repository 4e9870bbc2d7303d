//! Points of the projective line over Q and the chordal distance at each place.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, parse_rational, Rational};
use crate::error::{Error, Result};

/// `[a0:a1]` with coprime integer coordinates whose last nonzero entry is
/// positive. Infinity is `[1:0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a0: BigInt,
    a1: BigInt,
}

impl ProjPoint {
    pub fn infinity() -> Self {
        ProjPoint { a0: BigInt::one(), a1: BigInt::zero() }
    }

    /// Normalize integer homogeneous coordinates.
    pub fn from_ints(a0: BigInt, a1: BigInt) -> Result<Self> {
        if a0.is_zero() && a1.is_zero() {
            return Err(Error::NotProjectivePoint);
        }
        let g = a0.gcd(&a1);
        let (mut a0, mut a1) = (a0 / &g, a1 / &g);
        let last_negative = if a1.is_zero() { a0.is_negative() } else { a1.is_negative() };
        if last_negative {
            a0 = -a0;
            a1 = -a1;
        }
        Ok(ProjPoint { a0, a1 })
    }

    /// Normalized representative of `[x0:x1]`.
    pub fn normalize(x0: &Rational, x1: &Rational) -> Result<Self> {
        if x0.is_zero() && x1.is_zero() {
            return Err(Error::NotProjectivePoint);
        }
        let l = x0.denom().lcm(x1.denom());
        let a0 = x0.numer() * (&l / x0.denom());
        let a1 = x1.numer() * (&l / x1.denom());
        Self::from_ints(a0, a1)
    }

    /// The affine point `[x:1]`.
    pub fn affine(x: &Rational) -> Self {
        ProjPoint { a0: x.numer().clone(), a1: x.denom().clone() }
    }

    pub fn from_i64(x: i64) -> Self {
        ProjPoint { a0: BigInt::from(x), a1: BigInt::one() }
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn a1(&self) -> &BigInt {
        &self.a1
    }

    pub fn is_infinity(&self) -> bool {
        self.a1.is_zero()
    }

    /// Affine coordinate `a0/a1`, `None` at infinity.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.a1.is_zero() {
            None
        } else {
            Some(BigRational::new(self.a0.clone(), self.a1.clone()))
        }
    }

    /// `a0·b1 − a1·b0`.
    pub fn cross(&self, other: &ProjPoint) -> BigInt {
        &self.a0 * &other.a1 - &self.a1 * &other.a0
    }

    /// Multiplicative height `max(|a0|, |a1|)`.
    pub fn height(&self) -> BigUint {
        self.a0.magnitude().max(self.a1.magnitude()).clone()
    }

    pub fn log_height(&self) -> f64 {
        arith::ln_biguint(&self.height())
    }

    /// Decimal digits of the larger coordinate.
    pub fn digits(&self) -> usize {
        arith::decimal_digits(&BigInt::from(self.height()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a0, self.a1)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Accepts `[a0:a1]` (any integers, normalized on parse), `inf`, or an
    /// affine rational `x` meaning `[x:1]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::infinity());
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (l, r) = inner
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad point {s:?}")))?;
            let x0 = parse_rational(l)?;
            let x1 = parse_rational(r)?;
            return Self::normalize(&x0, &x1);
        }
        Ok(Self::affine(&parse_rational(s)?))
    }
}

/// A place of Q: a finite prime or the archimedean absolute value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(BigUint),
    Archimedean,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChordalMagnitude {
    Exact(Rational),
    /// Archimedean values carry a relative error budget of 1e-12.
    Approx(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChordalValue {
    pub place: Place,
    pub value: ChordalMagnitude,
}

impl ChordalValue {
    pub fn as_f64(&self) -> f64 {
        match &self.value {
            ChordalMagnitude::Exact(q) => q.to_f64().unwrap_or(0.0),
            ChordalMagnitude::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ChordalMagnitude::Exact(q) => q.is_zero(),
            ChordalMagnitude::Approx(x) => *x == 0.0,
        }
    }
}

/// Chordal distance `Δ_v(P,Q)`.
///
/// At a prime the normalized coordinates have sup-norm 1, so the value is
/// `p^(-v_p(a0 b1 − a1 b0))`, or 0 when the points coincide.
pub fn chordal_distance(p: &ProjPoint, q: &ProjPoint, place: &Place) -> Result<ChordalValue> {
    let cross = p.cross(q);
    let value = match place {
        Place::Finite(prime) => {
            if cross.is_zero() {
                ChordalMagnitude::Exact(Rational::zero())
            } else {
                let v = arith::valuation(&Rational::from_integer(cross), prime)?;
                let denom = BigInt::from(prime.pow(v as u32));
                ChordalMagnitude::Exact(Rational::new(BigInt::one(), denom))
            }
        }
        Place::Archimedean => {
            if cross.is_zero() {
                ChordalMagnitude::Approx(0.0)
            } else {
                let np = &p.a0 * &p.a0 + &p.a1 * &p.a1;
                let nq = &q.a0 * &q.a0 + &q.a1 * &q.a1;
                let sq = BigRational::new(&cross * &cross, np * nq);
                let x = sq.to_f64().unwrap_or(0.0).sqrt();
                ChordalMagnitude::Approx(x.clamp(0.0, 1.0))
            }
        }
    };
    Ok(ChordalValue { place: place.clone(), value })
}

/// Distance on `P1 × P1` as the max of the coordinatewise chordal distances.
pub fn product_distance(
    x: (&ProjPoint, &ProjPoint),
    y: (&ProjPoint, &ProjPoint),
    prime: &BigUint,
) -> Result<Rational> {
    let place = Place::Finite(prime.clone());
    let exact = |v: ChordalValue| match v.value {
        ChordalMagnitude::Exact(q) => q,
        ChordalMagnitude::Approx(_) => unreachable!("finite place"),
    };
    let a = exact(chordal_distance(x.0, y.0, &place)?);
    let b = exact(chordal_distance(x.1, y.1, &place)?);
    Ok(a.max(b))
}
