//! Ramification data from the Wronskian: critical points, exceptional
//! points, and the powering-map test.

use std::cmp::Ordering;

use num_integer::Integer;

use super::certify::{certify_wandering, OrbitVerdict};
use super::RatMap;
use crate::poly::{form_rational_roots, BinaryForm, QPoly};
use crate::projective::ProjPoint;

/// Iterations spent looking for a cycle through a rational critical point.
const CRITICAL_ORBIT_STEPS: usize = 64;

/// Where a critical datum lives: a rational point, or an irreducible factor
/// of the Wronskian whose roots are not rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriticalLocus {
    Point(ProjPoint),
    /// Irreducible quadratic binary form.
    Quadratic(BinaryForm),
    /// Factor of degree ≥ 3 without rational roots, left unresolved.
    Unresolved(BinaryForm),
}

impl CriticalLocus {
    /// Number of geometric points carried by the locus.
    pub fn point_count(&self) -> usize {
        match self {
            CriticalLocus::Point(_) => 1,
            CriticalLocus::Quadratic(q) | CriticalLocus::Unresolved(q) => q.degree(),
        }
    }

    pub fn as_point(&self) -> Option<&ProjPoint> {
        match self {
            CriticalLocus::Point(p) => Some(p),
            _ => None,
        }
    }
}

impl std::fmt::Display for CriticalLocus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CriticalLocus::Point(p) => write!(f, "{p}"),
            CriticalLocus::Quadratic(q) => write!(f, "roots({q})"),
            CriticalLocus::Unresolved(q) => write!(f, "unresolved({q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalDatum {
    pub locus: CriticalLocus,
    pub ramification_index: usize,
    pub totally_ramified: bool,
    pub periodic: bool,
    pub period: Option<usize>,
}

/// Squarefree pieces of a binary form: `(g, k)` with `g` primitive,
/// squarefree and `form = c·∏ g^k`. The factor `x1` is returned as `[1, 0]`.
fn form_squarefree_parts(form: &BinaryForm) -> Vec<(BinaryForm, usize)> {
    let mut out = Vec::new();
    let m = form.x1_multiplicity();
    if m > 0 {
        out.push((BinaryForm::x1(), m));
    }
    let affine = QPoly::from_ints(&form.dehomogenize());
    for (g, k) in affine.squarefree_decomposition() {
        let ints = g.primitive_ints();
        let deg = ints.len() - 1;
        out.push((BinaryForm::homogenize(&ints, deg), k as usize));
    }
    out
}

/// Split a squarefree form into its rational roots and the leftover factor
/// (`None` when fully split).
fn split_rational(g: &BinaryForm) -> (Vec<ProjPoint>, Option<BinaryForm>) {
    let roots = form_rational_roots(g).unwrap_or_default();
    let mut rest = g.to_qpoly();
    let mut rest_deg = g.degree();
    for r in &roots {
        if r.is_infinity() {
            rest_deg -= 1;
        } else {
            let lin = QPoly::from_ints(&[-r.a0().clone(), r.a1().clone()]);
            rest = rest.div_rem(&lin).0;
            rest_deg -= 1;
        }
    }
    if rest_deg == 0 {
        return (roots, None);
    }
    let ints = rest.primitive_ints();
    (roots, Some(BinaryForm::homogenize(&ints, rest_deg)))
}

fn wronskian_loci(w: &BinaryForm) -> Vec<(CriticalLocus, usize)> {
    let mut out = Vec::new();
    for (g, k) in form_squarefree_parts(w) {
        let (roots, rest) = split_rational(&g);
        for r in roots {
            out.push((CriticalLocus::Point(r), k));
        }
        match rest {
            Some(q) if q.degree() == 2 => out.push((CriticalLocus::Quadratic(q), k)),
            Some(q) => out.push((CriticalLocus::Unresolved(q), k)),
            None => {}
        }
    }
    out
}

/// All critical points with their ramification indices; rational ones carry
/// their periodicity.
pub fn critical_data(f: &RatMap) -> Vec<CriticalDatum> {
    let d = f.degree();
    let mut out: Vec<CriticalDatum> = wronskian_loci(&f.wronskian())
        .into_iter()
        .map(|(locus, k)| {
            let e = k + 1;
            let (periodic, period) = match &locus {
                CriticalLocus::Point(c) => match certify_wandering(f, c, CRITICAL_ORBIT_STEPS) {
                    OrbitVerdict::Preperiodic { tail: 0, period } => (true, Some(period)),
                    _ => (false, None),
                },
                _ => (false, None),
            };
            CriticalDatum { locus, ramification_index: e, totally_ramified: e == d, periodic, period }
        })
        .collect();
    out.sort_by(|a, b| locus_order(&a.locus, &b.locus));
    out
}

fn locus_order(a: &CriticalLocus, b: &CriticalLocus) -> Ordering {
    let rank = |l: &CriticalLocus| match l {
        CriticalLocus::Point(_) => 0,
        CriticalLocus::Quadratic(_) => 1,
        CriticalLocus::Unresolved(_) => 2,
    };
    match (a, b) {
        (CriticalLocus::Point(p), CriticalLocus::Point(q)) => p.cmp(q),
        (CriticalLocus::Quadratic(p), CriticalLocus::Quadratic(q))
        | (CriticalLocus::Unresolved(p), CriticalLocus::Unresolved(q)) => p.coeffs().cmp(q.coeffs()),
        _ => rank(a).cmp(&rank(b)),
    }
}

/// Least common multiple of the periods of periodic rational critical
/// points (1 when there are none).
pub fn critical_period_lcm(f: &RatMap) -> usize {
    critical_data(f).iter().filter_map(|c| c.period).fold(1, |acc, p| acc.lcm(&p))
}

/// Totally ramified loci of `f`: Wronskian pieces of multiplicity `d − 1`.
fn totally_ramified(f: &RatMap, order: usize) -> Vec<CriticalLocus> {
    wronskian_loci(&f.wronskian())
        .into_iter()
        .filter(|(_, k)| *k + 1 == order)
        .map(|(l, _)| l)
        .collect()
}

/// `x1·P − x0·Q`, whose roots are the fixed points.
fn fixed_point_form(f: &RatMap) -> BinaryForm {
    f.p().mul(&BinaryForm::x1()).sub(&f.q().mul(&BinaryForm::x0()))
}

/// Totally ramified fixed points of `f²`.
pub fn exceptional_points(f: &RatMap) -> Vec<CriticalLocus> {
    let d = f.degree();
    let f2 = f.clone().with_degree_cap(usize::MAX).iterate_map(2).expect("no cap");
    let fixed = fixed_point_form(&f2);
    totally_ramified(&f2, d * d)
        .into_iter()
        .filter(|l| match l {
            CriticalLocus::Point(z) => f2.eval(z) == *z,
            CriticalLocus::Quadratic(q) | CriticalLocus::Unresolved(q) => fixed.divisible_by(q),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoweringPair {
    Rational(ProjPoint, ProjPoint),
    /// The two conjugate roots of an irreducible quadratic form.
    Quadratic(BinaryForm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoweringKind {
    /// Both points fixed: conjugate to `x^d`.
    Fixed,
    /// Points exchanged: conjugate to `x^(−d)`.
    Swapped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoweringWitness {
    pub pair: PoweringPair,
    pub kind: PoweringKind,
}

/// `Some(witness)` iff two totally ramified points form an `f`-invariant pair.
pub fn is_powering_conjugate(f: &RatMap) -> Option<PoweringWitness> {
    let loci = totally_ramified(f, f.degree());
    let points: Vec<&ProjPoint> = loci.iter().filter_map(CriticalLocus::as_point).collect();
    if points.len() == 2 {
        let (z1, z2) = (points[0], points[1]);
        let (f1, f2) = (f.eval(z1), f.eval(z2));
        let kind = if &f1 == z1 && &f2 == z2 {
            PoweringKind::Fixed
        } else if &f1 == z2 && &f2 == z1 {
            PoweringKind::Swapped
        } else {
            return None;
        };
        return Some(PoweringWitness { pair: PoweringPair::Rational(z1.clone(), z2.clone()), kind });
    }
    for l in &loci {
        if let CriticalLocus::Quadratic(q) = l {
            let image = q.compose(f.p(), f.q());
            if !image.divisible_by(q) {
                return None;
            }
            let kind = if fixed_point_form(f).divisible_by(q) {
                PoweringKind::Fixed
            } else {
                PoweringKind::Swapped
            };
            return Some(PoweringWitness { pair: PoweringPair::Quadratic(q.clone()), kind });
        }
    }
    None
}
