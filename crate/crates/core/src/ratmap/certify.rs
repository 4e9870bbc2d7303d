//! Orbit classification: exact cycle detection, or an escape certificate
//! showing the orbit is infinite.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::RatMap;
use crate::arith::ln_biguint;
use crate::poly::binary::solve_rational;
use crate::projective::ProjPoint;

/// Orbit points larger than this many decimal digits stop the search.
pub const CERTIFY_DIGIT_LIMIT: usize = 100_000;

/// Constants of the height lower bound `h(f(P)) ≥ d·h(P) − c_f`.
///
/// With `R = Res(P, Q)` and `C` the largest cofactor coefficient in
/// `g1·P + g2·Q = R·x0^(2d−1)`, `h1·P + h2·Q = R·x1^(2d−1)`, the bound holds
/// with `c_f = log|R| + log(2d) + log C`.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeConstant {
    pub resultant: BigInt,
    pub max_cofactor: BigInt,
    pub c_f: f64,
    /// `c_f/(d − 1) + log 2`.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EscapeCertificate {
    pub threshold: f64,
    pub achieved_at: usize,
    pub c_f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitVerdict {
    Preperiodic { tail: usize, period: usize },
    Wandering(EscapeCertificate),
    Undecided { iterations: usize },
}

/// Solve the cofactor systems for `x0^(2d−1)` and `x1^(2d−1)`.
fn cofactors(f: &RatMap, r: &BigInt) -> Vec<BigInt> {
    let d = f.degree();
    let n = 2 * d;
    // Column j < d holds x0^j x1^(d−1−j)·P, column d + j the same times Q.
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for j in 0..d {
        for (i, c) in f.p().coeffs().iter().enumerate() {
            m[i + j][j] = c.clone();
        }
        for (i, c) in f.q().coeffs().iter().enumerate() {
            m[i + j][d + j] = c.clone();
        }
    }
    let mut out = Vec::with_capacity(2 * n);
    for target in [n - 1, 0] {
        let mut rhs = vec![BigInt::zero(); n];
        rhs[target] = r.clone();
        let sol = solve_rational(&m, &rhs).expect("nonzero resultant makes the system regular");
        for v in sol {
            assert!(v.is_integer(), "Cramer's rule gives integer cofactors");
            out.push(v.to_integer());
        }
    }
    out
}

pub fn escape_constant(f: &RatMap) -> EscapeConstant {
    let d = f.degree();
    let r = f.resultant();
    let max_cofactor = cofactors(f, &r)
        .into_iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let c_f = ln_biguint(r.magnitude()) + ((2 * d) as f64).ln() + ln_biguint(max_cofactor.magnitude());
    let threshold = c_f / (d - 1) as f64 + std::f64::consts::LN_2;
    EscapeConstant { resultant: r, max_cofactor, c_f, threshold }
}

impl EscapeConstant {
    /// Exact form of `log H > threshold`:
    /// `H^(d−1) > 2^(d−1)·|R|·2d·C`.
    pub fn exceeds(&self, height: &BigUint, d: usize) -> bool {
        let lhs = height.pow((d - 1) as u32);
        let rhs = (BigUint::one() << (d - 1))
            * self.resultant.magnitude()
            * BigUint::from(2 * d)
            * self.max_cofactor.magnitude();
        lhs > rhs
    }
}

/// Iterate `u` up to `max_iter` times. A repeated point gives the exact tail
/// and period; a point above the escape threshold proves the heights grow
/// forever.
pub fn certify_wandering(f: &RatMap, u: &ProjPoint, max_iter: usize) -> OrbitVerdict {
    let esc = escape_constant(f);
    let d = f.degree();
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    let mut x = u.clone();
    for i in 0..=max_iter {
        if let Some(&first) = seen.get(&x) {
            return OrbitVerdict::Preperiodic { tail: first, period: i - first };
        }
        if esc.exceeds(&x.height(), d) {
            return OrbitVerdict::Wandering(EscapeCertificate {
                threshold: esc.threshold,
                achieved_at: i,
                c_f: esc.c_f,
            });
        }
        if x.digits() > CERTIFY_DIGIT_LIMIT || i == max_iter {
            return OrbitVerdict::Undecided { iterations: i };
        }
        seen.insert(x.clone(), i);
        x = f.eval(&x);
    }
    OrbitVerdict::Undecided { iterations: max_iter }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rational};

    fn poly(c: &[i64]) -> RatMap {
        let num: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
        RatMap::make_map(&num, &[int(1)]).unwrap()
    }

    #[test]
    fn preperiodic_two_cycle() {
        let f = poly(&[-1, 0, 1]);
        assert_eq!(
            certify_wandering(&f, &ProjPoint::from_i64(0), 10),
            OrbitVerdict::Preperiodic { tail: 0, period: 2 }
        );
    }

    #[test]
    fn squaring_escapes() {
        let f = poly(&[0, 0, 1]);
        match certify_wandering(&f, &ProjPoint::from_i64(2), 10) {
            OrbitVerdict::Wandering(c) => {
                assert!(c.achieved_at <= 3);
                assert!((c.threshold - 8f64.ln()).abs() < 1e-12);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn infinity_is_fixed() {
        let f = poly(&[1, 0, 1]);
        assert_eq!(
            certify_wandering(&f, &ProjPoint::infinity(), 5),
            OrbitVerdict::Preperiodic { tail: 0, period: 1 }
        );
    }

    #[test]
    fn cofactor_identities_hold() {
        let f = RatMap::make_map(&[int(3), int(-1), int(2)], &[int(1), int(0), int(5)]).unwrap();
        let r = f.resultant();
        let c = cofactors(&f, &r);
        let d = f.degree();
        let form = |v: &[BigInt]| crate::poly::BinaryForm::from_coeffs(v.to_vec());
        for (k, target) in [(0usize, 2 * d - 1), (1, 0)] {
            let base = k * 2 * d;
            let g1 = form(&c[base..base + d]);
            let g2 = form(&c[base + d..base + 2 * d]);
            let lhs = g1.mul(f.p()).add(&g2.mul(f.q()));
            let mut expect = vec![BigInt::zero(); 2 * d];
            expect[target] = r.clone();
            assert_eq!(lhs, form(&expect));
        }
    }
}
