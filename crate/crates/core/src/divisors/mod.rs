//! The forms `G_n = P_n(x)Q_n(y) − P_n(y)Q_n(x)` cutting out `D_n`, their
//! successive quotients `B_i = G_i / G_{i−1}`, and checks built on them.

mod biform;

use num_bigint::BigInt;
use num_traits::Zero;

pub use biform::{BiForm, Exponents};

use crate::error::{Error, Result};
use crate::poly::{form_rational_roots, BinaryForm};
use crate::projective::ProjPoint;
use crate::ratmap::RatMap;

/// `G_n`, content 1 with positive leading coefficient; `G_0 = x0y1 − x1y0`.
pub fn g_form(f: &RatMap, n: usize) -> Result<BiForm> {
    let (p, q) = f.iterated_forms(n)?;
    Ok(g_from_forms(&p, &q))
}

fn g_from_forms(p: &BinaryForm, q: &BinaryForm) -> BiForm {
    BiForm::outer(p, q).sub(&BiForm::outer(q, p)).normalized()
}

#[derive(Debug, Clone)]
pub struct DivisorTower {
    map: RatMap,
    depth: usize,
    /// `G_0 … G_depth`.
    g_forms: Vec<BiForm>,
    /// `B_0 … B_depth`, with `B_0 = G_0`.
    b_forms: Vec<BiForm>,
}

impl DivisorTower {
    /// Build `G_k` and `B_k` for `k ≤ depth`, asserting every division is exact.
    pub fn build(f: &RatMap, depth: usize) -> Result<Self> {
        let forms = f.iterated_forms_upto(depth)?;
        let mut g_forms = vec![BiForm::diagonal()];
        let mut b_forms = vec![BiForm::diagonal()];
        for (p, q) in &forms {
            let g = g_from_forms(p, q);
            let b = g.exact_div(g_forms.last().unwrap())?.normalized();
            g_forms.push(g);
            b_forms.push(b);
        }
        Ok(DivisorTower { map: f.clone(), depth, g_forms, b_forms })
    }

    pub fn map(&self) -> &RatMap {
        &self.map
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn g_forms(&self) -> &[BiForm] {
        &self.g_forms
    }

    pub fn b_forms(&self) -> &[BiForm] {
        &self.b_forms
    }

    pub fn g(&self, i: usize) -> &BiForm {
        &self.g_forms[i]
    }

    /// `B_i` for `0 ≤ i ≤ depth`.
    pub fn b_component(&self, i: usize) -> Result<&BiForm> {
        self.b_forms
            .get(i)
            .ok_or_else(|| Error::Invariant(format!("tower depth {} has no B_{i}", self.depth)))
    }
}

/// Top total-degree part of `B_N(x, 1; y, 1)` for a polynomial map is a
/// scalar multiple of `Σ_{j<d} x^{je} y^{(d−1−j)e}` with `e = d^(N−1)`.
pub fn leading_form_check(f: &RatMap, n: usize) -> Result<bool> {
    if !f.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    if n == 0 {
        return Err(Error::Invariant("leading form needs N ≥ 1".into()));
    }
    let tower = DivisorTower::build(f, n)?;
    let b = tower.b_component(n)?;
    let c = b.affine();
    let top = (0..c.len())
        .flat_map(|i| (0..c[i].len()).filter(move |&k| !c[i][k].is_zero()).map(move |k| i + k))
        .max()
        .unwrap_or(0);
    let d = f.degree();
    let e = d.pow((n - 1) as u32);
    if top != (d - 1) * e {
        return Ok(false);
    }
    let mut scalar: Option<&BigInt> = None;
    for (i, row) in c.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            if i + k != top {
                continue;
            }
            let expected = i % e == 0 && k % e == 0;
            if expected {
                match scalar {
                    None if !v.is_zero() => scalar = Some(v),
                    Some(s) if s == v => {}
                    _ => return Ok(false),
                }
            } else if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(scalar.is_some())
}

/// Rational `c` with `B_1(c, c) = 0`.
pub fn diagonal_critical_intersections(tower: &DivisorTower) -> Result<Vec<ProjPoint>> {
    let b1 = tower.b_component(1)?;
    let restricted = b1.restrict_to_diagonal();
    form_rational_roots(&restricted)
        .ok_or_else(|| Error::Invariant("rational root search exceeded its budget".into()))
}

/// One link of the chain: for a vanishing index `i`, the point
/// `f^{i−1}(ξ)` should equal `f^{i−1}(η)` and be critical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub index: usize,
    pub point: ProjPoint,
    pub coincide: bool,
    pub critical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    /// Indices `i` among those probed with `B_i(ξ, η) = 0`, ascending.
    pub vanishing: Vec<usize>,
    /// Links for every vanishing index above the smallest one.
    pub chain: Vec<ChainLink>,
    /// With at least `2d` vanishing indices two links share a critical
    /// point, which must then be periodic.
    pub periodic_critical: Option<bool>,
    pub consistent: bool,
}

/// Which `B_i` vanish at `(ξ, η)`, and whether the implied chain holds.
pub fn multi_intersection_probe(
    tower: &DivisorTower,
    point: (&ProjPoint, &ProjPoint),
    indices: &[usize],
) -> Result<ProbeReport> {
    let f = tower.map();
    let (xi, eta) = point;
    let mut vanishing = Vec::new();
    let mut idx: Vec<usize> = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    for &i in &idx {
        let b = tower.b_component(i)?;
        if b.eval((xi.a0(), xi.a1()), (eta.a0(), eta.a1())).is_zero() {
            vanishing.push(i);
        }
    }
    let w = f.wronskian();
    let mut chain = Vec::new();
    if vanishing.len() >= 2 {
        for &i in &vanishing[1..] {
            let a = f.iterate(xi, i - 1);
            let b = f.iterate(eta, i - 1);
            let critical = w.eval(a.a0(), a.a1()).is_zero();
            chain.push(ChainLink { index: i, coincide: a == b, critical, point: a });
        }
    }
    let periodic_critical = if vanishing.len() >= 2 * f.degree() {
        Some(chain.iter().enumerate().any(|(s, a)| {
            chain[s + 1..].iter().any(|b| {
                a.point == b.point && f.iterate(&a.point, b.index - a.index) == a.point
            })
        }))
    } else {
        None
    };
    let consistent = chain.iter().all(|l| l.coincide && l.critical) && periodic_critical != Some(false);
    Ok(ProbeReport { vanishing, chain, periodic_critical, consistent })
}
