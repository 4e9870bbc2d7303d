//! Enumeration of integral index pairs `(m, n)` with `f^m(u)` S-integral
//! relative to `f^n(w)` over a finite window.
//!
//! The search is exhaustive within the window only; it does not bound the
//! pair set on all of N².

mod cosets;
mod special;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arith::PlaceSet;
use crate::error::{Error, Result};
use crate::integrality::{is_integral_pair, IntegralityWitness};
use crate::projective::ProjPoint;
use crate::ratmap::{
    certify_wandering, exceptional_points, is_powering_conjugate, CriticalLocus, OrbitVerdict, PoweringWitness,
    RatMap,
};

pub use cosets::{coset_structure, detect_coset_structure, Coset, CosetStructure};
pub use special::{
    exceptional_case_enlarge, powering_pair_analysis, ExceptionalReport, PoweringReport, TauAnnotation,
};

pub const DEFAULT_DIGIT_BUDGET: usize = 1_000_000;
pub const DEFAULT_CERTIFY_ITERATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairWindow {
    pub m_max: usize,
    pub n_max: usize,
}

impl PairWindow {
    pub fn new(m_max: usize, n_max: usize) -> Self {
        PairWindow { m_max, n_max }
    }

    pub fn contains(&self, (m, n): (usize, usize)) -> bool {
        m <= self.m_max && n <= self.n_max
    }
}

impl std::fmt::Display for PairWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.m_max, self.n_max)
    }
}

impl std::str::FromStr for PairWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("window must look like MxN, got {s:?}"));
        let (m, n) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        Ok(PairWindow { m_max: m.trim().parse().map_err(|_| bad())?, n_max: n.trim().parse().map_err(|_| bad())? })
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Decimal digits allowed per orbit coordinate.
    pub digit_budget: usize,
    /// Prune with functoriality when `S` contains the bad primes.
    pub shortcut: bool,
    /// Iterations spent classifying `u` and `w`.
    pub certify_iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { digit_budget: DEFAULT_DIGIT_BUDGET, shortcut: true, certify_iterations: DEFAULT_CERTIFY_ITERATIONS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// `(m−1, n−1)` not integral ⇒ `(m, n)` not integral.
    FunctorialityShortcut,
    Pairwise,
}

/// An orbit value exceeded the digit budget at `index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub orbit: &'static str,
    pub index: usize,
    pub digits: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypotheses {
    pub u: OrbitVerdict,
    pub w: OrbitVerdict,
    pub powering: Option<PoweringWitness>,
    pub exceptional_points: Vec<CriticalLocus>,
}

impl Hypotheses {
    /// Both points certified wandering and `f` not a powering map.
    pub fn finiteness_applies(&self) -> bool {
        matches!(self.u, OrbitVerdict::Wandering(_))
            && matches!(self.w, OrbitVerdict::Wandering(_))
            && self.powering.is_none()
    }

    /// Either point proved preperiodic.
    pub fn preperiodic_input(&self) -> bool {
        matches!(self.u, OrbitVerdict::Preperiodic { .. }) || matches!(self.w, OrbitVerdict::Preperiodic { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub m: usize,
    pub n: usize,
    pub verdict: bool,
    /// Decided by the functoriality shortcut without a cross term.
    pub pruned: bool,
    /// Smallest prime outside `S` dividing the cross term, when found.
    pub smallest_violating_prime: Option<BigUint>,
    /// The cross term was zero (equal orbit points).
    pub coincident: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub m: usize,
    pub n: usize,
    pub witness: IntegralityWitness,
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub requested: PairWindow,
    /// The window actually searched (smaller than requested on truncation).
    pub window: PairWindow,
    pub truncation: Vec<Truncation>,
    pub mode: SearchMode,
    pub s: PlaceSet,
    pub pairs: Vec<PairEntry>,
    /// Every searched cell, ordered by `(m, n)`.
    pub cells: Vec<Cell>,
    pub hypotheses: Hypotheses,
}

impl PairReport {
    pub fn pair_set(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|p| (p.m, p.n)).collect()
    }

    /// Largest `max(m, n)` over the pairs found.
    pub fn frontier(&self) -> Option<usize> {
        self.pairs.iter().map(|p| p.m.max(p.n)).max()
    }

    pub fn is_truncated(&self) -> bool {
        !self.truncation.is_empty()
    }
}

/// Largest orbit index whose iterated forms stay under the degree cap.
pub fn orbit_cap(f: &RatMap) -> usize {
    let d = f.degree() as u128;
    let cap = f.degree_cap() as u128;
    let mut n = 0;
    let mut deg: u128 = 1;
    while deg.saturating_mul(d) <= cap {
        deg *= d;
        n += 1;
    }
    n
}

/// `[u, f(u), …]` up to `n` steps, stopping before a value above budget.
pub fn orbit_with_budget(f: &RatMap, u: &ProjPoint, n: usize, budget: usize) -> (Vec<ProjPoint>, Option<usize>) {
    let mut out = vec![u.clone()];
    for _ in 0..n {
        let next = f.eval(out.last().unwrap());
        let digits = next.digits();
        if digits > budget {
            return (out, Some(digits));
        }
        out.push(next);
    }
    (out, None)
}

fn evaluate_cell(m: usize, n: usize, a: &ProjPoint, b: &ProjPoint, s: &PlaceSet) -> (Cell, Option<IntegralityWitness>) {
    let w = is_integral_pair(a, b, s);
    let cell = Cell {
        m,
        n,
        verdict: w.verdict,
        pruned: false,
        smallest_violating_prime: w.smallest_violating_prime().cloned(),
        coincident: w.cross_term == num_bigint::BigInt::from(0),
    };
    (cell, w.verdict.then_some(w))
}

pub fn find_integral_pairs(
    f: &RatMap,
    u: &ProjPoint,
    w: &ProjPoint,
    s: &PlaceSet,
    window: PairWindow,
    opts: &SearchOptions,
) -> Result<PairReport> {
    let cap = orbit_cap(f);
    if window.m_max > cap || window.n_max > cap {
        return Err(Error::WindowCap { m_max: window.m_max, n_max: window.n_max, cap });
    }
    let good_s = f.bad_reduction_primes().map(|bad| s.is_superset(&bad)).unwrap_or(false);
    let mode = if opts.shortcut && good_s { SearchMode::FunctorialityShortcut } else { SearchMode::Pairwise };

    let (orbit_u, trunc_u) = orbit_with_budget(f, u, window.m_max, opts.digit_budget);
    let (orbit_w, trunc_w) = orbit_with_budget(f, w, window.n_max, opts.digit_budget);
    let mut truncation = Vec::new();
    if let Some(digits) = trunc_u {
        truncation.push(Truncation { orbit: "u", index: orbit_u.len(), digits });
    }
    if let Some(digits) = trunc_w {
        truncation.push(Truncation { orbit: "w", index: orbit_w.len(), digits });
    }
    let eff = PairWindow::new(orbit_u.len() - 1, orbit_w.len() - 1);

    let cols = eff.n_max + 1;
    let mut grid: Vec<Option<Cell>> = vec![None; (eff.m_max + 1) * cols];
    let mut witnesses: Vec<Option<IntegralityWitness>> = vec![None; grid.len()];
    // Level k holds the cells with min(m, n) = k; each depends only on level k − 1.
    for k in 0..=eff.m_max.min(eff.n_max) {
        let level: Vec<(usize, usize)> = (k..=eff.n_max)
            .map(|n| (k, n))
            .chain((k + 1..=eff.m_max).map(|m| (m, k)))
            .collect();
        let results: Vec<(Cell, Option<IntegralityWitness>)> = level
            .par_iter()
            .map(|&(m, n)| {
                if mode == SearchMode::FunctorialityShortcut && k > 0 {
                    let prev = grid[(m - 1) * cols + (n - 1)].as_ref().expect("previous level done");
                    if !prev.verdict {
                        let cell = Cell {
                            m,
                            n,
                            verdict: false,
                            pruned: true,
                            smallest_violating_prime: None,
                            coincident: false,
                        };
                        return (cell, None);
                    }
                }
                evaluate_cell(m, n, &orbit_u[m], &orbit_w[n], s)
            })
            .collect();
        for (cell, wit) in results {
            let idx = cell.m * cols + cell.n;
            grid[idx] = Some(cell);
            witnesses[idx] = wit;
        }
    }
    let cells: Vec<Cell> = grid.into_iter().map(|c| c.expect("every cell visited")).collect();
    let pairs: Vec<PairEntry> = cells
        .iter()
        .zip(witnesses)
        .filter_map(|(c, w)| w.map(|witness| PairEntry { m: c.m, n: c.n, witness }))
        .collect();

    let hypotheses = Hypotheses {
        u: certify_wandering(f, u, opts.certify_iterations),
        w: certify_wandering(f, w, opts.certify_iterations),
        powering: is_powering_conjugate(f),
        exceptional_points: exceptional_points(f),
    };
    Ok(PairReport { requested: window, window: eff, truncation, mode, s: s.clone(), pairs, cells, hypotheses })
}
