//! The two situations excluded from finiteness: maps conjugate to `x^{±d}`
//! and targets `w` that are exceptional points.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{find_integral_pairs, orbit_with_budget, PairReport, PairWindow, SearchOptions};
use crate::arith::{is_s_unit, PlaceSet, Rational};
use crate::error::{Error, Result};
use crate::integrality::is_integral_pair;
use crate::projective::ProjPoint;
use crate::ratmap::{exceptional_points, is_powering_conjugate, CriticalLocus, Mobius, PoweringPair, PoweringWitness, RatMap};

/// `τ = σ(f^m u)/σ(f^n w) − 1` for one integral pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TauAnnotation {
    pub m: usize,
    pub n: usize,
    pub tau: Rational,
    pub tau_unit: bool,
    pub tau_plus_one_unit: bool,
    /// The conjugated points give the same verdict over `S′`.
    pub conjugate_agrees: bool,
}

#[derive(Debug, Clone)]
pub struct PoweringReport {
    pub witness: PoweringWitness,
    /// Sends the powering pair to `{0, ∞}`.
    pub sigma: Mobius,
    pub conjugated: RatMap,
    pub s_prime: PlaceSet,
    pub report: PairReport,
    pub annotations: Vec<TauAnnotation>,
    /// Distinct `τ` values, ascending.
    pub taus: Vec<Rational>,
}

impl PoweringReport {
    /// Every `τ` and `τ + 1` is an `S′`-unit.
    pub fn all_units(&self) -> bool {
        self.annotations.iter().all(|a| a.tau_unit && a.tau_plus_one_unit && a.conjugate_agrees)
    }
}

fn add_factors(s: &mut PlaceSet, n: &BigInt) -> Result<()> {
    s.insert_factors_of(n.magnitude())
}

pub fn powering_pair_analysis(
    f: &RatMap,
    u: &ProjPoint,
    w: &ProjPoint,
    s: &PlaceSet,
    window: PairWindow,
    opts: &SearchOptions,
) -> Result<PoweringReport> {
    let witness = is_powering_conjugate(f).ok_or(Error::NotPowering)?;
    let (z1, z2) = match &witness.pair {
        PoweringPair::Rational(z1, z2) if z1.is_infinity() => (z2.clone(), z1.clone()),
        PoweringPair::Rational(z1, z2) => (z1.clone(), z2.clone()),
        PoweringPair::Quadratic(_) => return Err(Error::IrrationalPoweringPair),
    };
    let (a, b, c, e) = (z1.a0(), z1.a1(), z2.a0(), z2.a1());
    // [b·x0 − a·x1 : −e·x0 + c·x1] sends z1 to 0 and z2 to ∞.
    let sigma = Mobius { a: b.clone(), b: -a.clone(), c: -e.clone(), d: c.clone() };
    let su = sigma.apply(u);
    let sw = sigma.apply(w);
    let on_pair = |p: &ProjPoint| p.is_infinity() || p.a0().is_zero();
    if on_pair(&su) {
        return Err(Error::OnPoweringPair("u"));
    }
    if on_pair(&sw) {
        return Err(Error::OnPoweringPair("w"));
    }
    let conjugated = f.conjugate(&sigma)?;
    let mut s_prime = s.union(&f.bad_reduction_primes()?);
    s_prime = s_prime.union(&sigma.det_primes()?);
    s_prime = s_prime.union(&conjugated.bad_reduction_primes()?);
    for v in [su.a0(), su.a1(), sw.a0(), sw.a1()] {
        add_factors(&mut s_prime, v)?;
    }

    let report = find_integral_pairs(f, u, w, &s_prime, window, opts)?;
    let (orbit_u, _) = orbit_with_budget(f, u, report.window.m_max, opts.digit_budget);
    let (orbit_w, _) = orbit_with_budget(f, w, report.window.n_max, opts.digit_budget);
    let mut annotations = Vec::new();
    for pair in &report.pairs {
        let x = sigma.apply(&orbit_u[pair.m]);
        let y = sigma.apply(&orbit_w[pair.n]);
        let ratio = x.to_rational().expect("off the pair") / y.to_rational().expect("off the pair");
        let tau = ratio - Rational::one();
        let tau_unit = !tau.is_zero() && is_s_unit(&tau, &s_prime)?;
        let tau_plus_one_unit = is_s_unit(&(&tau + Rational::one()), &s_prime)?;
        let conjugate_agrees = is_integral_pair(&x, &y, &s_prime).verdict == pair.witness.verdict;
        annotations.push(TauAnnotation { m: pair.m, n: pair.n, tau, tau_unit, tau_plus_one_unit, conjugate_agrees });
    }
    let mut taus: Vec<Rational> = annotations.iter().map(|a| a.tau.clone()).collect();
    taus.sort();
    taus.dedup();
    Ok(PoweringReport { witness, sigma, conjugated, s_prime, report, annotations, taus })
}

#[derive(Debug, Clone)]
pub struct ExceptionalReport {
    /// Each point of the exceptional orbit of `w` with the transformation
    /// sending it to `∞`.
    pub sigmas: Vec<(ProjPoint, Mobius)>,
    pub s_prime: PlaceSet,
    pub report: PairReport,
    /// Window pairs that failed to be integral over `S′`.
    pub failures: Vec<(usize, usize)>,
}

impl ExceptionalReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For an exceptional `w`, enlarge `S` so that every `(m, n)` becomes an
/// integral pair, and check this over the window.
pub fn exceptional_case_enlarge(
    f: &RatMap,
    u: &ProjPoint,
    w: &ProjPoint,
    s: &PlaceSet,
    window: PairWindow,
    opts: &SearchOptions,
) -> Result<ExceptionalReport> {
    let exceptional = exceptional_points(f);
    if exceptional.is_empty() {
        return Err(Error::NoExceptionalPoint);
    }
    if !exceptional.iter().any(|l| matches!(l, CriticalLocus::Point(p) if p == w)) {
        return Err(Error::NotExceptional(w.to_string()));
    }
    let mut targets = vec![w.clone()];
    let fw = f.eval(w);
    if fw != *w {
        targets.push(fw);
    }
    let (orbit_u, _) = orbit_with_budget(f, u, window.m_max, opts.digit_budget);
    if orbit_u.iter().any(|p| targets.contains(p)) {
        return Err(Error::HitsExceptional);
    }

    let fu = f.eval(u);
    let mut s_prime = s.union(&f.bad_reduction_primes()?);
    let mut sigmas = Vec::new();
    for t in targets {
        let sigma = Mobius::sl2_to_infinity(&t);
        let g2 = f.conjugate(&sigma)?.with_degree_cap(usize::MAX).iterate_map(2)?;
        if !g2.is_polynomial() {
            return Err(Error::Invariant(format!("conjugate of f² at {t} is not a polynomial")));
        }
        let lead = g2.q().coeff(0);
        add_factors(&mut s_prime, lead)?;
        for p in [u, &fu] {
            add_factors(&mut s_prime, sigma.apply(p).a1())?;
        }
        sigmas.push((t, sigma));
    }

    let report = find_integral_pairs(f, u, w, &s_prime, window, opts)?;
    let failures = report.cells.iter().filter(|c| !c.verdict).map(|c| (c.m, c.n)).collect();
    Ok(ExceptionalReport { sigmas, s_prime, report, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::ratmap::PoweringKind;

    fn poly(c: &[i64]) -> RatMap {
        let num: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
        RatMap::make_map(&num, &[int(1)]).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn cube_taus() {
        let f = poly(&[0, 0, 0, 1]);
        let r = powering_pair_analysis(&f, &pt("2"), &pt("-2"), &"2".parse().unwrap(), PairWindow::new(6, 6), &SearchOptions::default())
            .unwrap();
        assert_eq!(r.witness.kind, PoweringKind::Fixed);
        assert_eq!(r.sigma, Mobius::new(1, 0, 0, 1));
        assert_eq!(r.taus, vec![int(-2)]);
        assert!(r.all_units());
        assert_eq!(r.report.pairs.len(), 7);
    }

    #[test]
    fn powering_errors() {
        let opts = SearchOptions::default();
        let win = PairWindow::new(2, 2);
        let none = PlaceSet::new();
        assert!(matches!(
            powering_pair_analysis(&poly(&[1, 0, 1]), &pt("2"), &pt("3"), &none, win, &opts),
            Err(Error::NotPowering)
        ));
        assert!(matches!(
            powering_pair_analysis(&poly(&[0, 0, 1]), &pt("0"), &pt("3"), &none, win, &opts),
            Err(Error::OnPoweringPair("u"))
        ));
        let newton = RatMap::make_map(&[int(2), int(0), int(1)], &[int(0), int(2)]).unwrap();
        assert!(matches!(
            powering_pair_analysis(&newton, &pt("1"), &pt("3"), &none, win, &opts),
            Err(Error::IrrationalPoweringPair)
        ));
    }

    #[test]
    fn shifted_pair() {
        // (x − 1)² + 1 fixes 1 and ∞, both totally ramified.
        let f = poly(&[2, -2, 1]);
        let r = powering_pair_analysis(&f, &pt("3"), &pt("-1"), &PlaceSet::new(), PairWindow::new(4, 4), &SearchOptions::default())
            .unwrap();
        assert!(r.all_units());
        assert!(!r.report.pairs.is_empty());
    }

    #[test]
    fn squaring_at_infinity() {
        let f = poly(&[0, 0, 1]);
        let opts = SearchOptions::default();
        for u in ["3", "1/3", "1/2"] {
            let r = exceptional_case_enlarge(&f, &pt(u), &ProjPoint::infinity(), &PlaceSet::new(), PairWindow::new(8, 8), &opts)
                .unwrap();
            assert!(r.verified(), "u = {u}");
        }
        let r = exceptional_case_enlarge(&f, &pt("3"), &ProjPoint::infinity(), &PlaceSet::new(), PairWindow::new(3, 3), &opts)
            .unwrap();
        assert!(r.s_prime.is_empty());
        let r = exceptional_case_enlarge(&f, &pt("1/2"), &ProjPoint::infinity(), &PlaceSet::new(), PairWindow::new(3, 3), &opts)
            .unwrap();
        assert_eq!(r.s_prime, "2".parse().unwrap());
    }

    #[test]
    fn exceptional_errors() {
        let opts = SearchOptions::default();
        let win = PairWindow::new(3, 3);
        let none = PlaceSet::new();
        let sq = poly(&[0, 0, 1]);
        assert!(matches!(exceptional_case_enlarge(&sq, &pt("2"), &pt("5"), &none, win, &opts), Err(Error::NotExceptional(_))));
        assert!(matches!(
            exceptional_case_enlarge(&sq, &ProjPoint::infinity(), &ProjPoint::infinity(), &none, win, &opts),
            Err(Error::HitsExceptional)
        ));
        let g = RatMap::make_map(&[int(1), int(0), int(1)], &[int(0), int(1)]).unwrap();
        assert!(matches!(exceptional_case_enlarge(&g, &pt("2"), &ProjPoint::infinity(), &none, win, &opts), Err(Error::NoExceptionalPoint)));
    }
}
