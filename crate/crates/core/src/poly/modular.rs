//! Certified degree of the squarefree part of an integer polynomial.
//!
//! `deg gcd(f, f')` is computed modulo word-sized primes. Each modular degree
//! bounds the rational one from above (for primes not dividing `n·lc(f)`),
//! so a modular degree of 0 settles the question. Otherwise the modular
//! gcds are lifted by CRT and the candidate is confirmed by exact division
//! of both `f` and `f'` over Z, which bounds the rational degree from below.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::factor::is_prime_u64;
use crate::error::{Error, Result};

const MAX_PRIMES: usize = 256;

fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n: u64 = (1 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` by `b` mod p (b nonzero, trimmed).
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul_mod(a[top], inv, p);
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = top - db + j;
                a[idx] = (a[idx] + p - mul_mod(c, bc, p)) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Monic gcd mod p.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Exact division in Z[t]: whether `g` divides `f`.
pub fn divides_z(f: &[BigInt], g: &[BigInt]) -> bool {
    let dg = g.len() - 1;
    let lead = &g[dg];
    let mut rem: Vec<BigInt> = f.to_vec();
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    while rem.len() > dg {
        let top = rem.len() - 1;
        let (q, r) = rem[top].div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        for (j, gc) in g.iter().enumerate() {
            rem[top - dg + j] -= &q * gc;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    rem.is_empty()
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Degree of `gcd(f, f')` over Q for `f` in Z[t] (ascending, trimmed).
pub fn gcd_with_derivative_degree(f: &[BigInt]) -> Result<usize> {
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return Ok(0);
    }
    let df = derivative(f);
    let guard = &f[n] * BigInt::from(n);

    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for &p in primes() {
        if (&guard % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp: Vec<u64> = f.iter().map(|c| reduce(c, p)).collect();
        let dfp: Vec<u64> = df.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(fp, dfp, p);
        let e = g.len() - 1;
        if e == 0 {
            return Ok(0);
        }
        match best {
            Some(b) if e > b => continue,
            Some(b) if e == b => {}
            _ => {
                best = Some(e);
                acc = vec![BigInt::zero(); e + 1];
                modulus = BigInt::one();
            }
        }
        // Scale so the leading coefficient is lc(f) mod p, then CRT.
        let lc = reduce(&f[n], p);
        let scaled: Vec<u64> = g.iter().map(|&c| mul_mod(c, lc, p)).collect();
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
        for (a, &s) in acc.iter_mut().zip(&scaled) {
            let diff = (BigInt::from(s) - &*a).mod_floor(&pb);
            let t = (diff * &m_inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= &pb;
        let half = &modulus >> 1u32;
        let lifted: Vec<BigInt> = acc
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let cand = primitive(&lifted);
        if cand.last().is_some_and(|c| !c.is_zero()) && divides_z(f, &cand) && divides_z(&df, &cand) {
            return Ok(e);
        }
    }
    Err(Error::Invariant(format!(
        "modular gcd did not stabilise within {MAX_PRIMES} primes"
    )))
}

/// Number of distinct complex roots of `f` (nonzero, ascending coefficients).
pub fn distinct_root_count(f: &[BigInt]) -> Result<usize> {
    let mut v = f.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let n = v.len().saturating_sub(1);
    Ok(n - gcd_with_derivative_degree(&v)?)
}
