//! Rational self-maps of the projective line as coprime integer binary forms.

mod certify;
mod critical;
mod preimage;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{PlaceSet, Rational};
use crate::error::{Error, Result};
use crate::poly::{BinaryForm, QPoly};
use crate::projective::ProjPoint;

pub use certify::{certify_wandering, escape_constant, EscapeCertificate, EscapeConstant, OrbitVerdict};
pub use critical::{
    critical_data, critical_period_lcm, exceptional_points, is_powering_conjugate, CriticalDatum, CriticalLocus,
    PoweringKind, PoweringPair, PoweringWitness,
};
pub use preimage::preimage_count;

pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// `f = [P : Q]` with `P`, `Q` coprime integer forms of degree `d ≥ 2`.
///
/// Normalization: the coefficients of `P` and `Q` jointly have content 1,
/// and the coefficient of the highest power of `x0` appearing in `Q` is
/// positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMap {
    p: BinaryForm,
    q: BinaryForm,
    degree_cap: usize,
}

fn normalize_pair(p: BinaryForm, q: BinaryForm) -> (BinaryForm, BinaryForm) {
    let g = p.content().gcd(&q.content());
    let mut g = if g.is_zero() { BigInt::one() } else { g };
    let lead = q.coeffs().iter().rev().find(|c| !c.is_zero()).or_else(|| {
        p.coeffs().iter().rev().find(|c| !c.is_zero())
    });
    if lead.is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    (p.div_scalar(&g), q.div_scalar(&g))
}

impl RatMap {
    /// Build from homogeneous forms of a common degree.
    pub fn from_forms(p: BinaryForm, q: BinaryForm) -> Result<Self> {
        if p.degree() != q.degree() {
            return Err(Error::Invariant("forms of unequal degree".into()));
        }
        if p.degree() < 2 {
            return Err(Error::DegreeBelowTwo);
        }
        if crate::poly::binary::resultant(&p, &q).is_zero() {
            return Err(Error::NotCoprime);
        }
        let (p, q) = normalize_pair(p, q);
        Ok(RatMap { p, q, degree_cap: DEFAULT_DEGREE_CAP })
    }

    /// `f = p/q` from ascending coefficient lists of `p` and `q`.
    pub fn make_map(num: &[Rational], den: &[Rational]) -> Result<Self> {
        let p = QPoly::from_coeffs(num.to_vec());
        let q = QPoly::from_coeffs(den.to_vec());
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
        if d < 2 {
            return Err(Error::DegreeBelowTwo);
        }
        if !p.gcd(&q).is_constant() {
            return Err(Error::NotCoprime);
        }
        let l = p
            .coeffs()
            .iter()
            .chain(q.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let clear = |f: &QPoly| -> Vec<BigInt> {
            f.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
        };
        Self::from_forms(BinaryForm::homogenize(&clear(&p), d), BinaryForm::homogenize(&clear(&q), d))
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn p(&self) -> &BinaryForm {
        &self.p
    }

    pub fn q(&self) -> &BinaryForm {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// `Q = c·x1^d`, i.e. `f` is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.q.coeffs().iter().skip(1).all(Zero::is_zero)
    }

    /// Affine numerator and denominator `p(t) = P(t,1)`, `q(t) = Q(t,1)`.
    pub fn affine_parts(&self) -> (QPoly, QPoly) {
        (self.p.to_qpoly(), self.q.to_qpoly())
    }

    pub fn eval(&self, pt: &ProjPoint) -> ProjPoint {
        let a = self.p.eval(pt.a0(), pt.a1());
        let b = self.q.eval(pt.a0(), pt.a1());
        ProjPoint::from_ints(a, b).expect("coprime forms never vanish together")
    }

    pub fn iterate(&self, pt: &ProjPoint, n: usize) -> ProjPoint {
        let mut x = pt.clone();
        for _ in 0..n {
            x = self.eval(&x);
        }
        x
    }

    /// `[P, f(P), …, f^n(P)]`.
    pub fn orbit(&self, pt: &ProjPoint, n: usize) -> Vec<ProjPoint> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(pt.clone());
        for i in 0..n {
            let next = self.eval(&out[i]);
            out.push(next);
        }
        out
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        let d = self.degree() as u128;
        let mut deg: u128 = 1;
        for _ in 0..n {
            deg = deg.saturating_mul(d);
            if deg > self.degree_cap as u128 {
                return Err(Error::DegreeCap { degree: deg, cap: self.degree_cap });
            }
        }
        Ok(())
    }

    /// `(P_k, Q_k)` for `k = 1..=n`, each content-normalized.
    pub fn iterated_forms_upto(&self, n: usize) -> Result<Vec<(BinaryForm, BinaryForm)>> {
        self.check_cap(n)?;
        let mut out: Vec<(BinaryForm, BinaryForm)> = Vec::with_capacity(n);
        for k in 0..n {
            let next = match out.last() {
                None => (self.p.clone(), self.q.clone()),
                Some((pk, qk)) => normalize_pair(self.p.compose(pk, qk), self.q.compose(pk, qk)),
            };
            debug_assert!(k == 0 || next.0.degree() == out[k - 1].0.degree() * self.degree());
            out.push(next);
        }
        Ok(out)
    }

    /// `(P_n, Q_n)` with `P_n/Q_n = f^n`; `n = 0` gives `(x0, x1)`.
    pub fn iterated_forms(&self, n: usize) -> Result<(BinaryForm, BinaryForm)> {
        if n == 0 {
            return Ok((BinaryForm::x0(), BinaryForm::x1()));
        }
        Ok(self.iterated_forms_upto(n)?.pop().unwrap())
    }

    /// `f^n` as a map.
    pub fn iterate_map(&self, n: usize) -> Result<RatMap> {
        let (p, q) = self.iterated_forms(n)?;
        Ok(RatMap { p, q, degree_cap: self.degree_cap })
    }

    pub fn resultant(&self) -> BigInt {
        crate::poly::binary::resultant(&self.p, &self.q)
    }

    /// Primes dividing `Res(P, Q)`.
    pub fn bad_reduction_primes(&self) -> Result<PlaceSet> {
        let mut s = PlaceSet::new();
        s.insert_factors_of(self.resultant().magnitude())?;
        Ok(s)
    }

    /// `∂P/∂x0·∂Q/∂x1 − ∂P/∂x1·∂Q/∂x0`, of degree `2d − 2`.
    pub fn wronskian(&self) -> BinaryForm {
        self.p.d_x0().mul(&self.q.d_x1()).sub(&self.p.d_x1().mul(&self.q.d_x0()))
    }

    /// `σ ∘ f ∘ σ⁻¹`.
    pub fn conjugate(&self, sigma: &Mobius) -> Result<RatMap> {
        let inv = sigma.adjugate();
        let (a, b) = inv.forms();
        let p1 = self.p.compose(&a, &b);
        let q1 = self.q.compose(&a, &b);
        let p2 = p1.scale(&sigma.a).add(&q1.scale(&sigma.b));
        let q2 = p1.scale(&sigma.c).add(&q1.scale(&sigma.d));
        Ok(RatMap::from_forms(p2, q2)?.with_degree_cap(self.degree_cap))
    }

    /// Canonical coefficient text `num=c_k,...,c_0;den=c_j,...,c_0`.
    pub fn to_coefficient_string(&self) -> String {
        let list = |f: &BinaryForm| {
            let v = f.dehomogenize();
            if v.is_empty() {
                return "0".to_string();
            }
            v.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("num={};den={}", list(&self.p), list(&self.q))
    }

    /// Parse the canonical coefficient text (rational entries allowed).
    pub fn from_coefficient_string(s: &str) -> Result<RatMap> {
        let mut num = None;
        let mut den = None;
        for part in s.split(';') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {part:?}")))?;
            let mut coeffs = val
                .split(',')
                .map(crate::arith::parse_rational)
                .collect::<Result<Vec<_>>>()?;
            coeffs.reverse();
            match key.trim() {
                "num" => num = Some(coeffs),
                "den" => den = Some(coeffs),
                k => return Err(Error::Parse(format!("unknown key {k:?}"))),
            }
        }
        let num = num.ok_or_else(|| Error::Parse("missing num".into()))?;
        let den = den.ok_or_else(|| Error::Parse("missing den".into()))?;
        RatMap::make_map(&num, &den)
    }
}

impl std::fmt::Display for RatMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} : {}]", self.p, self.q)
    }
}

/// `[x0:x1] ↦ [a·x0 + b·x1 : c·x0 + d·x1]`, i.e. `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mobius {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mobius { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// The inverse up to scaling.
    pub fn adjugate(&self) -> Mobius {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// The two linear forms `(a·x0 + b·x1, c·x0 + d·x1)`.
    pub fn forms(&self) -> (BinaryForm, BinaryForm) {
        (
            BinaryForm::from_coeffs(vec![self.b.clone(), self.a.clone()]),
            BinaryForm::from_coeffs(vec![self.d.clone(), self.c.clone()]),
        )
    }

    pub fn apply(&self, pt: &ProjPoint) -> ProjPoint {
        let x0 = &self.a * pt.a0() + &self.b * pt.a1();
        let x1 = &self.c * pt.a0() + &self.d * pt.a1();
        ProjPoint::from_ints(x0, x1).expect("invertible transformation")
    }

    /// An integer transformation of determinant 1 with `σ(p) = ∞`.
    pub fn sl2_to_infinity(p: &ProjPoint) -> Mobius {
        // σ⁻¹ = [[a0, r], [a1, s]] with a0·s − r·a1 = 1 sends ∞ to p.
        let e = p.a0().extended_gcd(p.a1());
        let unit = if e.gcd.is_one() { BigInt::one() } else { -BigInt::one() };
        let s = &e.x * &unit;
        let r = -(&e.y * &unit);
        let inv = Mobius { a: p.a0().clone(), b: r, c: p.a1().clone(), d: s };
        debug_assert!(inv.det().is_one());
        inv.adjugate()
    }

    pub fn det_primes(&self) -> Result<PlaceSet> {
        let mut s = PlaceSet::new();
        s.insert_factors_of(self.det().magnitude())?;
        Ok(s)
    }
}

impl std::fmt::Display for Mobius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn map(num: &[Rational], den: &[Rational]) -> RatMap {
        RatMap::make_map(num, den).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn make_map_examples() {
        let f = map(&[int(1), int(0), int(1)], &[int(1)]);
        assert_eq!(f.p(), &BinaryForm::from_i64(&[1, 0, 1]));
        assert_eq!(f.q(), &BinaryForm::from_i64(&[1, 0, 0]));
        assert_eq!(f.degree(), 2);

        let g = map(&[rat(1, 2), int(0), int(1)], &[int(1)]);
        assert_eq!(g.p(), &BinaryForm::from_i64(&[1, 0, 2]));
        assert_eq!(g.q(), &BinaryForm::from_i64(&[2, 0, 0]));

        let err = RatMap::make_map(&[int(-1), int(0), int(1)], &[int(-1), int(1)]);
        assert_eq!(err, Err(Error::NotCoprime));
        let err = RatMap::make_map(&[int(1), int(1)], &[int(1)]);
        assert_eq!(err, Err(Error::DegreeBelowTwo));
    }

    #[test]
    fn eval_examples() {
        let sq = map(&[int(0), int(0), int(1)], &[int(1)]);
        assert_eq!(sq.eval(&pt("3")), pt("9"));
        let f = map(&[int(1), int(0), int(1)], &[int(1)]);
        assert_eq!(f.eval(&ProjPoint::infinity()), ProjPoint::infinity());
        let g = map(&[int(1), int(0), int(1)], &[int(0), int(1)]);
        assert_eq!(g.eval(&pt("0")), ProjPoint::infinity());
    }

    #[test]
    fn iterate_examples() {
        let f = map(&[int(1), int(0), int(1)], &[int(1)]);
        assert_eq!(f.iterate(&pt("0"), 3), pt("5"));
        let cube = map(&[int(0), int(0), int(0), int(1)], &[int(1)]);
        assert_eq!(cube.iterate(&pt("2"), 2), pt("512"));
        assert_eq!(cube.iterate(&pt("7/3"), 0), pt("7/3"));
    }

    #[test]
    fn iterated_forms_examples() {
        let sq = map(&[int(0), int(0), int(1)], &[int(1)]);
        let (p, q) = sq.iterated_forms(3).unwrap();
        let mut x0_8 = vec![0i64; 9];
        x0_8[8] = 1;
        let mut x1_8 = vec![0i64; 9];
        x1_8[0] = 1;
        assert_eq!(p, BinaryForm::from_i64(&x0_8));
        assert_eq!(q, BinaryForm::from_i64(&x1_8));

        let f = map(&[int(1), int(0), int(1)], &[int(1)]);
        let (p, q) = f.iterated_forms(2).unwrap();
        assert_eq!(p, BinaryForm::from_i64(&[2, 0, 2, 0, 1]));
        assert_eq!(q, BinaryForm::from_i64(&[1, 0, 0, 0, 0]));

        let g = map(&[int(1), int(0), int(1)], &[int(0), int(1)]);
        let (p, q) = g.iterated_forms(2).unwrap();
        assert_eq!(p.degree(), 4);
        assert!(!crate::poly::binary::resultant(&p, &q).is_zero());
    }

    #[test]
    fn degree_cap() {
        let sq = map(&[int(0), int(0), int(1)], &[int(1)]);
        assert!(sq.iterated_forms(12).is_ok());
        assert!(matches!(sq.iterated_forms(13), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn bad_primes_examples() {
        let sq = map(&[int(0), int(0), int(1)], &[int(1)]);
        assert!(sq.bad_reduction_primes().unwrap().is_empty());
        let g = map(&[rat(1, 2), int(0), int(1)], &[int(1)]);
        assert_eq!(g.bad_reduction_primes().unwrap().to_string(), "2");
        let h = map(&[int(-1), int(0), int(1)], &[int(0), int(1)]);
        assert!(h.bad_reduction_primes().unwrap().is_empty());
    }

    #[test]
    fn conjugation() {
        // x ↦ x − 1 conjugates x² to (x+1)² − 1 = x² + 2x
        let sq = map(&[int(0), int(0), int(1)], &[int(1)]);
        let g = sq.conjugate(&Mobius::new(1, -1, 0, 1)).unwrap();
        assert_eq!(g, map(&[int(0), int(2), int(1)], &[int(1)]));
    }

    #[test]
    fn sl2_sends_point_to_infinity() {
        for s in ["0", "3/5", "-7/2", "inf", "1"] {
            let sigma = Mobius::sl2_to_infinity(&pt(s));
            assert_eq!(sigma.det(), BigInt::one());
            assert_eq!(sigma.apply(&pt(s)), ProjPoint::infinity());
        }
    }

    #[test]
    fn coefficient_string_round_trip() {
        let g = map(&[rat(1, 2), int(0), int(1)], &[int(1)]);
        assert_eq!(g.to_coefficient_string(), "num=2,0,1;den=2");
        assert_eq!(RatMap::from_coefficient_string("num=2,0,1;den=2").unwrap(), g);
        assert_eq!(RatMap::from_coefficient_string("num=1,0,1/2;den=1").unwrap(), g);
    }
}
