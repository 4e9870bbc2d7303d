//! Exact rationals, prime sets, p-adic valuations and logarithmic heights.

pub mod factor;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` form; integers print without a denominator.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

fn check_prime(p: &BigUint) -> Result<()> {
    if factor::is_probable_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

/// Exponent of `p` in the nonzero integer `n`, dividing it out of `n`.
pub(crate) fn strip_prime(n: &mut BigUint, p: &BigUint) -> i64 {
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        *n = q;
        e += 1;
    }
}

fn int_valuation(n: &BigInt, p: &BigUint) -> i64 {
    let mut m = n.magnitude().clone();
    strip_prime(&mut m, p)
}

/// `v_p(q)`, so that `|q|_p = p^(-v_p(q))`.
pub fn valuation(q: &Rational, p: &BigUint) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    check_prime(p)?;
    Ok(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// Magnitude of `n` with every prime of `s` divided out.
pub fn prime_to_s_part(n: &BigInt, s: &PlaceSet) -> BigUint {
    let mut m = n.magnitude().clone();
    if m.is_zero() {
        return m;
    }
    for p in s.iter() {
        strip_prime(&mut m, p);
        if m.is_one() {
            break;
        }
    }
    m
}

/// True iff `v_p(q) = 0` for every prime `p` outside `s`.
pub fn is_s_unit(q: &Rational, s: &PlaceSet) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(prime_to_s_part(q.numer(), s).is_one() && prime_to_s_part(q.denom(), s).is_one())
}

/// Integer specialisation of [`is_s_unit`]; zero is never a unit.
pub fn is_s_unit_int(n: &BigInt, s: &PlaceSet) -> bool {
    !n.is_zero() && prime_to_s_part(n, s).is_one()
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log max(|numerator|, denominator)`.
pub fn log_height(q: &Rational) -> f64 {
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    ln_biguint(if n > d { n } else { d })
}

/// Decimal digit count of `|n|` (at least 1).
pub fn decimal_digits(n: &BigInt) -> usize {
    let bits = n.bits();
    if bits < 64 {
        return n.magnitude().to_u64().unwrap_or(0).max(1).to_string().len();
    }
    // floor(log10) from the bit length, corrected by one exact comparison.
    let est = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as u32 + 1;
    let pow = BigUint::from(10u32).pow(est);
    if n.magnitude() >= &pow {
        est as usize + 1
    } else {
        est as usize
    }
}

/// Finite set of rational primes; the archimedean place is implicit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PlaceSet {
    primes: BTreeSet<BigUint>,
}

impl PlaceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_primes<I, T>(primes: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut s = Self::new();
        for p in primes {
            s.insert(p.into())?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, p: BigUint) -> Result<()> {
        check_prime(&p)?;
        self.primes.insert(p);
        Ok(())
    }

    /// Adds every prime factor of `n` (n ≠ 0).
    pub fn insert_factors_of(&mut self, n: &BigUint) -> Result<()> {
        if n.is_zero() {
            return Ok(());
        }
        let f = factor::factorize(n, factor::DEFAULT_RHO_BUDGET);
        if let Some(c) = f.unfactored.first() {
            return Err(Error::Unfactored(c.clone()));
        }
        self.primes.extend(f.primes.into_keys());
        Ok(())
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        self.primes.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigUint> {
        self.primes.iter()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn union(&self, other: &PlaceSet) -> PlaceSet {
        PlaceSet {
            primes: self.primes.union(&other.primes).cloned().collect(),
        }
    }

    pub fn is_superset(&self, other: &PlaceSet) -> bool {
        self.primes.is_superset(&other.primes)
    }

    /// First prime of `other` missing from `self`.
    pub fn first_missing(&self, other: &PlaceSet) -> Option<BigUint> {
        other.primes.difference(&self.primes).next().cloned()
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PlaceSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = PlaceSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p = BigUint::from_str(part).map_err(|_| Error::Parse(format!("bad prime {part:?}")))?;
            out.insert(p)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&int(12), &p(2)).unwrap(), 2);
        assert_eq!(valuation(&rat(1, 9), &p(3)).unwrap(), -2);
        assert_eq!(valuation(&rat(7, 10), &p(5)).unwrap(), -1);
    }

    #[test]
    fn valuation_errors() {
        assert_eq!(valuation(&int(0), &p(2)), Err(Error::ValuationOfZero));
        assert_eq!(valuation(&int(4), &p(4)), Err(Error::NotPrime(p(4))));
    }

    #[test]
    fn s_unit_examples() {
        let empty = PlaceSet::new();
        let two: PlaceSet = "2".parse().unwrap();
        assert!(is_s_unit(&int(-1), &empty).unwrap());
        assert!(is_s_unit(&int(16), &two).unwrap());
        assert!(!is_s_unit(&int(247), &two).unwrap());
        assert!(is_s_unit(&int(0), &two).is_err());
    }

    #[test]
    fn s_unit_247_by_trial_division() {
        // 247 = 13 * 19, both outside {2}.
        let factors: Vec<u32> = (2..247).filter(|d| 247 % d == 0).collect();
        assert_eq!(factors, vec![13, 19]);
    }

    #[test]
    fn heights() {
        assert_eq!(log_height(&int(0)), 0.0);
        assert!((log_height(&int(2)) - 2f64.ln()).abs() < 1e-15);
        assert!((log_height(&rat(3, 5)) - 5f64.ln()).abs() < 1e-15);
        let huge = BigUint::one() << 5000u32;
        assert!((ln_biguint(&huge) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn digits() {
        for (n, d) in [(0i64, 1usize), (9, 1), (10, 2), (-999, 3), (1000, 4)] {
            assert_eq!(decimal_digits(&BigInt::from(n)), d);
        }
        let big = BigInt::from(10u32).pow(100);
        assert_eq!(decimal_digits(&big), 101);
        assert_eq!(decimal_digits(&(big - 1)), 100);
    }

    #[test]
    fn placeset_serialization() {
        let s: PlaceSet = "7, 2,3".parse().unwrap();
        assert_eq!(s.to_string(), "2,3,7");
        assert_eq!("".parse::<PlaceSet>().unwrap(), PlaceSet::new());
        assert!("2,9".parse::<PlaceSet>().is_err());
    }

    #[test]
    fn rational_serialization() {
        assert_eq!(format_rational(&parse_rational("6/-14").unwrap()), "-3/7");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5");
        assert!(parse_rational("1/0").is_err());
    }
}
