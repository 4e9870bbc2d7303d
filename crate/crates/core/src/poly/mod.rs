//! Polynomial arithmetic: univariate over Q, integer binary forms, and
//! certified modular squarefree degrees.

pub mod binary;
pub mod modular;
pub mod qpoly;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factor;
use crate::projective::ProjPoint;

pub use binary::BinaryForm;
pub use qpoly::QPoly;

/// Upper limit on candidate numerator/denominator pairs tried by the
/// rational root test.
const ROOT_CANDIDATE_CAP: usize = 100_000;

fn divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    let f = factor::factorize(n, factor::DEFAULT_RHO_BUDGET);
    if !f.is_complete() {
        return None;
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in f.primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        out = next;
        if out.len() > ROOT_CANDIDATE_CAP {
            return None;
        }
    }
    out.sort();
    Some(out)
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Rational roots of `f(t)` (integer coefficients, ascending, nonzero), or
/// `None` when the candidate search would exceed its budget.
pub fn rational_roots(f: &[BigInt]) -> Option<Vec<ProjPoint>> {
    let mut f: Vec<BigInt> = f.to_vec();
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    let mut roots = BTreeSet::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.insert(ProjPoint::from_i64(0));
        f.drain(..zeros);
    }
    match f.len() {
        0 | 1 => {}
        2 => {
            roots.insert(ProjPoint::from_ints(-f[0].clone(), f[1].clone()).ok()?);
        }
        3 => {
            let (c, b, a) = (&f[0], &f[1], &f[2]);
            let disc = b * b - BigInt::from(4) * a * c;
            if let Some(s) = isqrt_exact(&disc) {
                for num in [-b + &s, -b - &s] {
                    roots.insert(ProjPoint::from_ints(num, BigInt::from(2) * a).ok()?);
                }
            }
        }
        _ => {
            let q = QPoly::from_ints(&f);
            let nums = divisors(f[0].magnitude())?;
            let dens = divisors(f.last().unwrap().magnitude())?;
            if nums.len().saturating_mul(dens.len()) > ROOT_CANDIDATE_CAP {
                return None;
            }
            for den in &dens {
                for num in &nums {
                    if num.gcd(den) != BigUint::one() {
                        continue;
                    }
                    for sign in [1i32, -1] {
                        let x = crate::arith::Rational::new(BigInt::from(sign) * BigInt::from(num.clone()), BigInt::from(den.clone()));
                        if q.eval(&x).is_zero() {
                            roots.insert(ProjPoint::affine(&x));
                        }
                    }
                }
            }
        }
    }
    Some(roots.into_iter().collect())
}

/// Rational projective roots of a nonzero binary form, including infinity
/// when `x1` divides it.
pub fn form_rational_roots(form: &BinaryForm) -> Option<Vec<ProjPoint>> {
    let mut out = rational_roots(&form.dehomogenize())?;
    if form.x1_multiplicity() > 0 {
        out.push(ProjPoint::infinity());
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn pts(v: &[&str]) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = v.iter().map(|s| s.parse().unwrap()).collect();
        out.sort();
        out
    }

    #[test]
    fn low_degree_roots() {
        assert_eq!(rational_roots(&ints(&[-4, 0, 1])).unwrap(), pts(&["2", "-2"]));
        assert_eq!(rational_roots(&ints(&[1, 0, 1])).unwrap(), vec![]);
        assert_eq!(rational_roots(&ints(&[3, 2])).unwrap(), pts(&["-3/2"]));
        assert_eq!(rational_roots(&ints(&[0, 0, 5])).unwrap(), pts(&["0"]));
    }

    #[test]
    fn cubic_roots_by_candidates() {
        // (2t − 1)(t + 3)(t² + 1) = 2t⁴ + 5t³ − t² + 5t − 3
        assert_eq!(rational_roots(&ints(&[-3, 5, -1, 5, 2])).unwrap(), pts(&["1/2", "-3"]));
    }

    #[test]
    fn form_roots_include_infinity() {
        // x0·x1² has roots 0 and ∞
        let f = BinaryForm::from_i64(&[0, 1, 0, 0]);
        assert_eq!(form_rational_roots(&f).unwrap(), pts(&["0", "inf"]));
    }
}
