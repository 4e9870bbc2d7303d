//! S-integrality of one point relative to another, and relative to the
//! divisors `D_n` cut out by `P_n(x)Q_n(y) − P_n(y)Q_n(x)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::factor::{self, is_probable_prime, small_primes};
use crate::arith::{decimal_digits, prime_to_s_part, strip_prime, PlaceSet};
use crate::error::{Error, Result};
use crate::projective::ProjPoint;
use crate::ratmap::RatMap;

/// Inputs up to this many digits are factored completely (budget allowing).
const FULL_FACTOR_DIGITS: usize = 60;
/// Trial division stops at this bound for very large inputs.
const HUGE_TRIAL_BOUND: u32 = 1000;
const HUGE_DIGITS: usize = 10_000;
/// Probable-prime tests are skipped on cofactors longer than this.
const PRIMALITY_DIGITS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityWitness {
    /// `a0·b1 − a1·b0`, or the `D_n` cross value.
    pub cross_term: BigInt,
    /// Primes outside `S` dividing the cross term, ascending. May be
    /// incomplete when `unfactored` is set.
    pub violating_primes: Vec<BigUint>,
    /// Part of the cross term outside `S` left unfactored within budget.
    pub unfactored: Option<BigUint>,
    pub verdict: bool,
}

impl IntegralityWitness {
    pub fn from_value(cross_term: BigInt, s: &PlaceSet) -> Self {
        if cross_term.is_zero() {
            return IntegralityWitness { cross_term, violating_primes: Vec::new(), unfactored: None, verdict: false };
        }
        let rest = prime_to_s_part(&cross_term, s);
        let verdict = rest.is_one();
        let (violating_primes, unfactored) = partial_factor(rest);
        IntegralityWitness { cross_term, violating_primes, unfactored, verdict }
    }

    pub fn smallest_violating_prime(&self) -> Option<&BigUint> {
        self.violating_primes.first()
    }
}

/// Distinct prime factors of `n` found within budget, plus any leftover.
fn partial_factor(mut n: BigUint) -> (Vec<BigUint>, Option<BigUint>) {
    if n.is_one() {
        return (Vec::new(), None);
    }
    let digits = decimal_digits(&BigInt::from(n.clone()));
    if digits <= FULL_FACTOR_DIGITS {
        let f = factor::factorize(&n, factor::DEFAULT_RHO_BUDGET);
        let primes: Vec<BigUint> = f.primes.into_keys().collect();
        let rest = f.unfactored.into_iter().fold(BigUint::one(), |acc, c| acc * c);
        return (primes, (!rest.is_one()).then_some(rest));
    }
    let bound = if digits > HUGE_DIGITS { HUGE_TRIAL_BOUND } else { factor::TRIAL_BOUND };
    let mut primes = Vec::new();
    for &p in small_primes().iter().take_while(|&&p| p < bound) {
        let pb = BigUint::from(p);
        if strip_prime(&mut n, &pb) > 0 {
            primes.push(pb);
            if n.is_one() {
                break;
            }
        }
    }
    if n.is_one() {
        return (primes, None);
    }
    if decimal_digits(&BigInt::from(n.clone())) <= PRIMALITY_DIGITS && is_probable_prime(&n) {
        primes.push(n);
        primes.sort();
        return (primes, None);
    }
    (primes, Some(n))
}

/// Whether `P` is S-integral relative to `Q`: the cross term is a nonzero
/// S-unit. A point is never integral relative to itself.
pub fn is_integral_pair(p: &ProjPoint, q: &ProjPoint, s: &PlaceSet) -> IntegralityWitness {
    IntegralityWitness::from_value(p.cross(q), s)
}

/// `P_n(a)Q_n(b) − P_n(b)Q_n(a)`; `n = 0` gives the cross term.
pub fn d_n_cross_form_value(f: &RatMap, a: &ProjPoint, b: &ProjPoint, n: usize) -> Result<BigInt> {
    let (pn, qn) = f.iterated_forms(n)?;
    let pa = pn.eval(a.a0(), a.a1());
    let qa = qn.eval(a.a0(), a.a1());
    let pb = pn.eval(b.a0(), b.a1());
    let qb = qn.eval(b.a0(), b.a1());
    Ok(pa * qb - pb * qa)
}

/// Error naming the first bad-reduction prime missing from `s`.
pub fn require_bad_primes(f: &RatMap, s: &PlaceSet) -> Result<()> {
    match s.first_missing(&f.bad_reduction_primes()?) {
        Some(p) => Err(Error::MissingBadPrime(p)),
        None => Ok(()),
    }
}

/// Integrality of `(a, b)` relative to `D_n`; requires `S ⊇ bad primes`.
pub fn is_integral_rel_dn(
    f: &RatMap,
    a: &ProjPoint,
    b: &ProjPoint,
    n: usize,
    s: &PlaceSet,
) -> Result<IntegralityWitness> {
    require_bad_primes(f, s)?;
    Ok(IntegralityWitness::from_value(d_n_cross_form_value(f, a, b, n)?, s))
}

/// The biconditional: `(a, b)` integral relative to `D_n` iff
/// `(f^n(a), f^n(b))` integral relative to the diagonal.
pub fn check_functoriality(f: &RatMap, a: &ProjPoint, b: &ProjPoint, n: usize, s: &PlaceSet) -> Result<bool> {
    let lhs = is_integral_rel_dn(f, a, b, n, s)?.verdict;
    let rhs = is_integral_pair(&f.iterate(a, n), &f.iterate(b, n), s).verdict;
    Ok(lhs == rhs)
}

/// The implication: integral relative to `D_n` ⇒ integral relative to `D_m`.
pub fn monotonicity_check(
    f: &RatMap,
    a: &ProjPoint,
    b: &ProjPoint,
    m: usize,
    n: usize,
    s: &PlaceSet,
) -> Result<bool> {
    if m > n {
        return Err(Error::Invariant(format!("monotonicity needs m <= n, got m = {m}, n = {n}")));
    }
    if !is_integral_rel_dn(f, a, b, n, s)?.verdict {
        return Ok(true);
    }
    Ok(is_integral_rel_dn(f, a, b, m, s)?.verdict)
}
