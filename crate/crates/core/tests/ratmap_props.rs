mod common;

use common::*;
use dynint_core::arith::PlaceSet;
use dynint_core::ratmap::{
    critical_data, escape_constant, exceptional_points, is_powering_conjugate, CriticalLocus, OrbitVerdict,
};
use dynint_core::{Mobius, ProjPoint, RatMap};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;

#[test]
fn iterate_matches_composed_forms() {
    let mut r = rng(1);
    for _ in 0..60 {
        let f = random_map(&mut r);
        let n = r.random_range(0..=3usize);
        let m = r.random_range(0..=2usize);
        let (pn, qn) = f.iterated_forms(n).unwrap();
        let fmn = f.iterate_map(m + n).unwrap_or_else(|_| f.clone());
        for _ in 0..5 {
            let p = random_point(&mut r, 20);
            let via_forms = ProjPoint::from_ints(pn.eval(p.a0(), p.a1()), qn.eval(p.a0(), p.a1())).unwrap();
            assert_eq!(via_forms, f.iterate(&p, n), "{f} n={n} at {p}");
            if m + n >= 1 {
                assert_eq!(fmn.eval(&p), f.iterate(&f.iterate(&p, n), m), "{f} m={m} n={n}");
            }
            assert_eq!(f.orbit(&p, n).last().unwrap(), &f.iterate(&p, n));
        }
    }
}

#[test]
fn affine_evaluation_agrees_with_definition() {
    let mut r = rng(2);
    for _ in 0..200 {
        let f = random_map(&mut r);
        let (num, den) = f.affine_parts();
        let p = random_point(&mut r, 30);
        let Some(x) = p.to_rational() else { continue };
        match eval_affine(num.coeffs(), den.coeffs(), &x) {
            Some(y) => assert_eq!(f.eval(&p), ProjPoint::affine(&y)),
            None => assert!(f.eval(&p).is_infinity()),
        }
    }
}

#[test]
fn riemann_hurwitz() {
    let mut r = rng(3);
    for _ in 0..120 {
        let f = random_map(&mut r);
        let total: usize =
            critical_data(&f).iter().map(|c| (c.ramification_index - 1) * c.locus.point_count()).sum();
        assert_eq!(total, 2 * f.degree() - 2, "{f}");
    }
}

fn common_root_mod_p(f: &RatMap, p: u64) -> bool {
    let pb = BigInt::from(p);
    let vanish = |a0: &BigInt, a1: &BigInt| {
        (f.p().eval(a0, a1) % &pb).is_zero() && (f.q().eval(a0, a1) % &pb).is_zero()
    };
    vanish(&BigInt::one(), &BigInt::zero()) || (0..p).any(|x| vanish(&BigInt::from(x), &BigInt::one()))
}

#[test]
fn good_primes_have_no_common_root_mod_p() {
    let mut r = rng(4);
    let primes: Vec<u64> = (2..100u64).filter(|&n| (2..n).all(|k| n % k != 0)).collect();
    for _ in 0..80 {
        let f = random_map(&mut r);
        let bad = f.bad_reduction_primes().unwrap();
        for &p in &primes {
            if common_root_mod_p(&f, p) {
                assert!(bad.contains(&BigUint::from(p)), "{f} reduces badly at {p}");
            }
            let res = f.resultant();
            assert_eq!(bad.contains(&BigUint::from(p)), (res % p as i64).is_zero());
        }
    }
}

#[test]
fn iterates_do_not_add_bad_primes() {
    let mut r = rng(5);
    for _ in 0..40 {
        let f = random_map(&mut r);
        let bad = f.bad_reduction_primes().unwrap();
        for n in 2..=3 {
            let fnn = f.iterate_map(n).unwrap();
            let res = fnn.resultant();
            assert!(!res.is_zero());
            // Strip the primes of Res(f); nothing else may remain.
            let rest = dynint_core::arith::prime_to_s_part(&res, &bad);
            assert!(rest.is_one(), "{f} iterate {n} has extra bad primes");
        }
    }
}

#[test]
fn escape_threshold_forces_growth() {
    let mut r = rng(6);
    let maps = [poly(&[0, 0, 1]), poly(&[-1, 0, 1]), poly(&[1, 1, 1]), map(&[1, 0, 1], &[0, 1]), poly(&[0, -1, 0, 2])];
    for f in &maps {
        let e = escape_constant(f);
        let bits = ((e.threshold + 4.0) / std::f64::consts::LN_2).ceil() as u64;
        let mut checked = 0;
        while checked < 100 {
            let extra = r.random_range(0..40);
            let mut a = BigInt::from(random_biguint(&mut r, bits + extra));
            if r.random() {
                a = -a;
            }
            let b = BigInt::from(random_biguint(&mut r, bits)) + 1u32;
            let Ok(p) = ProjPoint::from_ints(a, b) else { continue };
            if !e.exceeds(&p.height(), f.degree()) {
                continue;
            }
            assert!(f.eval(&p).height() > p.height(), "{f} at {p}");
            checked += 1;
        }
    }
}

#[test]
fn exceptional_and_powering_counts() {
    let mut r = rng(7);
    for _ in 0..150 {
        let f = random_map(&mut r);
        let exc: usize = exceptional_points(&f).iter().map(CriticalLocus::point_count).sum();
        assert!(exc <= 2);
        if is_powering_conjugate(&f).is_some() {
            assert_eq!(exc, 2, "{f}");
        }
    }
}

#[test]
fn powering_is_conjugation_invariant() {
    let mut r = rng(8);
    let base = [poly(&[0, 0, 1]), poly(&[0, 0, 0, 1]), map(&[1], &[0, 0, 1]), poly(&[1, 0, 1]), map(&[-1, 0, 1], &[0, 1])];
    for f in &base {
        for _ in 0..6 {
            let s = loop {
                let m = Mobius::new(
                    r.random_range(-4..=4),
                    r.random_range(-4..=4),
                    r.random_range(-4..=4),
                    r.random_range(-4..=4),
                );
                if !m.det().is_zero() {
                    break m;
                }
            };
            let g = f.conjugate(&s).unwrap();
            assert_eq!(is_powering_conjugate(&g).is_some(), is_powering_conjugate(f).is_some(), "{f} by {s}");
            let p = random_point(&mut r, 9);
            assert_eq!(g.eval(&s.apply(&p)), s.apply(&f.eval(&p)));
        }
    }
}

#[test]
fn preperiodic_verdicts_are_real_cycles() {
    let mut r = rng(9);
    for _ in 0..60 {
        let f = random_map(&mut r);
        let u = random_point(&mut r, 4);
        if let OrbitVerdict::Preperiodic { tail, period } = dynint_core::ratmap::certify_wandering(&f, &u, 40) {
            let a = f.iterate(&u, tail);
            assert_eq!(f.iterate(&a, period), a);
            if tail > 0 {
                assert_ne!(f.iterate(&u, tail - 1), f.iterate(&u, tail - 1 + period));
            }
        }
    }
}

#[test]
fn place_sets_parse_round_trip() {
    let s: PlaceSet = "7, 2,3".parse().unwrap();
    assert_eq!(s.to_string().parse::<PlaceSet>().unwrap(), s);
    assert!("4".parse::<PlaceSet>().is_err());
}
