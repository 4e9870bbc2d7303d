mod common;

use common::*;
use dynint_core::arith::{rat, PlaceSet};
use dynint_core::integrality::{
    check_functoriality, d_n_cross_form_value, is_integral_pair, is_integral_rel_dn, monotonicity_check,
};
use dynint_core::{Error, ProjPoint};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;

const SMALL_PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Cross term straight from affine coordinates: `(x − y)·den(x)·den(y)`,
/// or `den(y)` when `x = ∞`.
fn oracle_cross(p: &ProjPoint, q: &ProjPoint) -> BigInt {
    match (p.to_rational(), q.to_rational()) {
        (Some(x), Some(y)) => {
            let v = (&x - &y) * x.denom().clone() * y.denom();
            v.to_integer()
        }
        (None, Some(y)) => y.denom().clone(),
        (Some(x), None) => x.denom().clone(),
        (None, None) => BigInt::zero(),
    }
}

fn oracle_integral(cross: &BigInt, s: &[u32]) -> bool {
    if cross.is_zero() {
        return false;
    }
    let mut n = cross.abs();
    for &p in s {
        while (&n % p).is_zero() {
            n /= p;
        }
    }
    n == BigInt::from(1)
}

fn random_s(r: &mut rand_chacha::ChaCha8Rng) -> Vec<u32> {
    let k = r.random_range(0..=4);
    let mut s: Vec<u32> = SMALL_PRIMES.choose_multiple(r, k).copied().collect();
    s.sort();
    s
}

fn place_set(s: &[u32]) -> PlaceSet {
    PlaceSet::from_primes(s.iter().copied()).unwrap()
}

#[test]
fn pair_verdict_matches_oracle() {
    let mut r = rng(11);
    for _ in 0..2000 {
        let p = random_point(&mut r, 40);
        let q = random_point(&mut r, 40);
        let s = random_s(&mut r);
        let w = is_integral_pair(&p, &q, &place_set(&s));
        let cross = oracle_cross(&p, &q);
        assert_eq!(w.cross_term.abs(), cross.abs(), "{p} {q}");
        assert_eq!(w.verdict, oracle_integral(&cross, &s), "{p} {q} {s:?}");
        assert_eq!(w.verdict, w.violating_primes.is_empty() && !w.cross_term.is_zero());
        for v in &w.violating_primes {
            assert!(!s.contains(&v.try_into().unwrap()));
            assert!((&w.cross_term % BigInt::from(v.clone())).is_zero());
        }
    }
}

#[test]
fn pair_integrality_is_symmetric_and_monotone_in_s() {
    let mut r = rng(12);
    for _ in 0..1000 {
        let p = random_point(&mut r, 60);
        let q = random_point(&mut r, 60);
        let s = random_s(&mut r);
        let mut t = s.clone();
        t.extend(SMALL_PRIMES.choose(&mut r));
        t.sort();
        t.dedup();
        let small = is_integral_pair(&p, &q, &place_set(&s));
        let swapped = is_integral_pair(&q, &p, &place_set(&s));
        assert_eq!(small.verdict, swapped.verdict);
        assert_eq!(small.cross_term, -swapped.cross_term);
        if small.verdict {
            assert!(is_integral_pair(&p, &q, &place_set(&t)).verdict);
        }
    }
}

fn s_with_bad_primes(f: &dynint_core::RatMap, extra: &[u32]) -> PlaceSet {
    let mut s = f.bad_reduction_primes().unwrap();
    for &p in extra {
        s.insert(BigUint::from(p)).unwrap();
    }
    s
}

#[test]
fn functoriality_holds_on_random_instances() {
    let mut r = rng(13);
    for _ in 0..250 {
        let f = random_map(&mut r);
        let extra = random_s(&mut r);
        let s = s_with_bad_primes(&f, &extra);
        let a = random_point(&mut r, 8);
        let b = random_point(&mut r, 8);
        let n = r.random_range(0..=3);
        assert!(check_functoriality(&f, &a, &b, n, &s).unwrap(), "{f} {a} {b} n={n} S={s}");
    }
}

#[test]
fn monotonicity_holds_on_random_instances() {
    let mut r = rng(14);
    for _ in 0..250 {
        let f = random_map(&mut r);
        let s = s_with_bad_primes(&f, &random_s(&mut r));
        let a = random_point(&mut r, 8);
        let b = random_point(&mut r, 8);
        let n = r.random_range(0..=3);
        let m = r.random_range(0..=n);
        assert!(monotonicity_check(&f, &a, &b, m, n, &s).unwrap(), "{f} {a} {b} m={m} n={n}");
    }
}

#[test]
fn dn_value_vanishes_exactly_on_collisions() {
    let mut r = rng(15);
    for _ in 0..300 {
        let f = random_map(&mut r);
        let a = random_point(&mut r, 6);
        let b = if r.random_ratio(1, 4) { a.clone() } else { random_point(&mut r, 6) };
        let n = r.random_range(0..=2);
        let v = d_n_cross_form_value(&f, &a, &b, n).unwrap();
        assert_eq!(v.is_zero(), f.iterate(&a, n) == f.iterate(&b, n));
    }
}

#[test]
fn missing_bad_prime_is_reported() {
    let f = dynint_core::RatMap::make_map(&[rat(1, 2), rat(0, 1), rat(1, 1)], &[rat(1, 1)]).unwrap();
    let e = is_integral_rel_dn(&f, &pt("1"), &pt("3"), 1, &PlaceSet::new());
    assert_eq!(e, Err(Error::MissingBadPrime(BigUint::from(2u32))));
}
