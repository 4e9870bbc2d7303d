//! Primality testing and integer factorization.
//!
//! Trial division by a sieve of small primes, then Miller-Rabin on the
//! cofactor, then Brent's variant of Pollard rho under an iteration budget.
//! Cofactors that survive the budget are reported as unfactored rather
//! than guessed at.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division bound used by [`factorize`].
pub const TRIAL_BOUND: u32 = 1 << 16;

/// Default number of Pollard rho iterations per cofactor.
pub const DEFAULT_RHO_BUDGET: u64 = 200_000;

const MR_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Primes below [`TRIAL_BOUND`].
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_BOUND))
}

fn sieve(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first sixteen prime bases.
///
/// Deterministic below 3.3e24; a probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial
/// factor of the composite `n`, or `None` once `budget` iterations are spent.
pub fn pollard_rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u32..=16 {
        let c = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let lim = BATCH.min(r - k);
                for _ in 0..lim {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += lim;
                spent += lim;
                if spent > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // Batched product overshot; replay one step at a time.
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization, possibly partial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: BTreeMap<BigUint, u32>,
    /// Composite cofactors the rho budget could not split.
    pub unfactored: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    fn push(&mut self, p: BigUint, e: u32) {
        *self.primes.entry(p).or_insert(0) += e;
    }
}

/// Factor `n` (n ≥ 1) completely, or as far as the rho budget allows.
pub fn factorize(n: &BigUint, rho_budget: u64) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push(pb, e);
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.push(m, 1);
            continue;
        }
        match pollard_rho(&m, rho_budget) {
            Some(f) => {
                let g = &m / &f;
                stack.push(f);
                stack.push(g);
            }
            None => out.unfactored.push(m),
        }
    }
    out.unfactored.sort();
    out
}

/// Smallest prime factor of `n` if it is below `bound`, or if `n` itself is
/// then known prime (no factor below `bound` and `n < bound²`).
pub fn smallest_prime_factor(n: &BigUint, bound: u32) -> Option<BigUint> {
    if n <= &BigUint::one() {
        return None;
    }
    let primes: Vec<u32> = if bound <= TRIAL_BOUND {
        small_primes().iter().copied().take_while(|&p| p < bound).collect()
    } else {
        sieve(bound)
    };
    // Reduce huge inputs once by the product of all candidate primes.
    let reduced;
    let m = if n.bits() > 4096 {
        let prod = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
        reduced = n % prod;
        &reduced
    } else {
        n
    };
    for &p in &primes {
        if (m % p).is_zero() {
            return Some(BigUint::from(p));
        }
    }
    let b = BigUint::from(bound);
    if n < &(&b * &b) {
        return Some(n.clone());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn u64_primality_matches_brute_force() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), brute_is_prime(n), "{n}");
        }
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        let composite = &m127 * BigUint::from(1_000_003u32);
        assert!(!is_probable_prime(&composite));
    }

    #[test]
    fn factors_semiprime_with_rho() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let f = factorize(&(&p * &q * 12u32), DEFAULT_RHO_BUDGET);
        assert!(f.is_complete());
        let expect: BTreeMap<BigUint, u32> = [
            (BigUint::from(2u32), 2),
            (BigUint::from(3u32), 1),
            (q, 1),
            (p, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(f.primes, expect);
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1u64..3000 {
            let f = factorize(&BigUint::from(n), DEFAULT_RHO_BUDGET);
            let prod = f
                .primes
                .iter()
                .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e));
            assert_eq!(prod, BigUint::from(n));
        }
    }

    #[test]
    fn smallest_factor() {
        assert_eq!(smallest_prime_factor(&BigUint::from(247u32), 100), Some(BigUint::from(13u32)));
        assert_eq!(smallest_prime_factor(&BigUint::from(97u32), 100), Some(BigUint::from(97u32)));
        assert_eq!(smallest_prime_factor(&BigUint::one(), 100), None);
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(1_000_000_009u64);
        assert_eq!(smallest_prime_factor(&big, 1000), None);
    }
}
