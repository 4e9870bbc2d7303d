#![allow(dead_code)]

use dynint_core::arith::{int, rat, Rational};
use dynint_core::{ProjPoint, RatMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(c: &[i64]) -> RatMap {
    let num: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
    RatMap::make_map(&num, &[int(1)]).unwrap()
}

pub fn map(num: &[i64], den: &[i64]) -> RatMap {
    let n: Vec<Rational> = num.iter().map(|&x| int(x)).collect();
    let d: Vec<Rational> = den.iter().map(|&x| int(x)).collect();
    RatMap::make_map(&n, &d).unwrap()
}

pub fn pt(s: &str) -> ProjPoint {
    s.parse().unwrap()
}

pub fn random_point(r: &mut ChaCha8Rng, bound: i64) -> ProjPoint {
    if r.random_ratio(1, 12) {
        return ProjPoint::infinity();
    }
    let den = r.random_range(1..=bound);
    ProjPoint::affine(&rat(r.random_range(-bound..=bound), den))
}

/// A random map of degree 2 or 3 with small coefficients; about a third
/// are not polynomials.
pub fn random_map(r: &mut ChaCha8Rng) -> RatMap {
    loop {
        let d = r.random_range(2..=3usize);
        let num: Vec<i64> = (0..=d).map(|_| r.random_range(-3..=3)).collect();
        let den: Vec<i64> = if r.random_ratio(1, 3) {
            (0..=r.random_range(1..=d)).map(|_| r.random_range(-3..=3)).collect()
        } else {
            vec![r.random_range(1..=3)]
        };
        let n: Vec<Rational> = num.iter().map(|&x| int(x)).collect();
        let q: Vec<Rational> = den.iter().map(|&x| int(x)).collect();
        if let Ok(f) = RatMap::make_map(&n, &q) {
            return f;
        }
    }
}

/// Affine evaluation straight from the rational-function definition.
pub fn eval_affine(num: &[Rational], den: &[Rational], x: &Rational) -> Option<Rational> {
    let ev = |c: &[Rational]| c.iter().rev().fold(int(0), |acc, a| acc * x + a);
    let d = ev(den);
    if d == int(0) {
        None
    } else {
        Some(ev(num) / d)
    }
}

/// Uniform nonnegative integer below `2^bits`.
pub fn random_biguint(r: &mut ChaCha8Rng, bits: u64) -> num_bigint::BigUint {
    let words = bits.div_ceil(32) as usize;
    let digits: Vec<u32> = (0..words).map(|_| r.random()).collect();
    num_bigint::BigUint::from_slice(&digits) >> (words as u64 * 32 - bits)
}
