mod common;

use common::*;
use dynint_core::divisors::{g_form, leading_form_check, BiForm, DivisorTower};
use num_traits::Zero;
use rand::Rng;

#[test]
fn quotients_telescope() {
    let mut r = rng(21);
    for _ in 0..25 {
        let f = random_map(&mut r);
        let depth = if f.degree() == 2 { 3 } else { 2 };
        let tower = DivisorTower::build(&f, depth).unwrap();
        let mut prod = BiForm::diagonal();
        for i in 1..=depth {
            prod = prod.mul(tower.b_component(i).unwrap());
            assert_eq!(prod.normalized(), *tower.g(i), "{f} level {i}");
        }
    }
}

#[test]
fn bidegrees_and_antisymmetry() {
    let mut r = rng(22);
    for _ in 0..25 {
        let f = random_map(&mut r);
        let d = f.degree();
        let tower = DivisorTower::build(&f, 2).unwrap();
        for i in 0..=2 {
            let g = tower.g(i);
            assert_eq!(g.bidegree(), (d.pow(i as u32), d.pow(i as u32)));
            assert_eq!(g.swap(), g.neg());
            let expected = if i == 0 { 1 } else { d.pow(i as u32) - d.pow(i as u32 - 1) };
            assert_eq!(tower.b_component(i).unwrap().bidegree(), (expected, expected));
        }
    }
}

#[test]
fn g_vanishes_exactly_where_iterates_meet() {
    let mut r = rng(23);
    for _ in 0..40 {
        let f = random_map(&mut r);
        let n = r.random_range(1..=2);
        let g = g_form(&f, n).unwrap();
        for _ in 0..8 {
            let a = random_point(&mut r, 5);
            let b = if r.random_ratio(1, 3) { a.clone() } else { random_point(&mut r, 5) };
            let v = g.eval((a.a0(), a.a1()), (b.a0(), b.a1()));
            assert_eq!(v.is_zero(), f.iterate(&a, n) == f.iterate(&b, n), "{f} n={n} {a} {b}");
        }
    }
}

#[test]
fn polynomial_leading_forms() {
    for c in [[0, 0, 1, 0], [1, 0, 1, 0], [2, -1, 3, 0], [0, 0, 0, 1], [1, 1, 0, -2]] {
        let coeffs: Vec<i64> = if c[3] == 0 { c[..3].to_vec() } else { c.to_vec() };
        let f = poly(&coeffs);
        for n in 1..=2 {
            assert!(leading_form_check(&f, n).unwrap(), "{f} N={n}");
        }
    }
}

#[test]
fn sparse_text_is_sorted_and_parseable() {
    let tower = DivisorTower::build(&poly(&[0, 0, 1]), 2).unwrap();
    assert_eq!(tower.b_component(2).unwrap().to_sparse_string(), "(0,2,2,0):1; (2,0,0,2):1");
}
