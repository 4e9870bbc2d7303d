//! Greedy description of a window's pair set as translated subsemigroups.

use std::collections::BTreeSet;

use super::{PairReport, PairWindow};

type Pair = (usize, usize);

/// `base + a·g1 + b·g2 + …` for nonnegative integers, restricted to a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub base: Pair,
    pub generators: Vec<Pair>,
}

impl Coset {
    /// Members inside `window`.
    pub fn points(&self, window: PairWindow) -> BTreeSet<Pair> {
        let mut out = BTreeSet::new();
        let mut frontier = vec![self.base];
        while let Some(p) = frontier.pop() {
            if !window.contains(p) || !out.insert(p) {
                continue;
            }
            for g in &self.generators {
                frontier.push((p.0 + g.0, p.1 + g.1));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CosetStructure {
    pub cosets: Vec<Coset>,
    pub residual: Vec<Pair>,
}

impl CosetStructure {
    /// The union of all cosets (within the window) and the residual pairs.
    pub fn points(&self, window: PairWindow) -> BTreeSet<Pair> {
        let mut out: BTreeSet<Pair> = self.residual.iter().copied().collect();
        for c in &self.cosets {
            out.extend(c.points(window));
        }
        out
    }
}

pub fn detect_coset_structure(report: &PairReport) -> CosetStructure {
    coset_structure(&report.pair_set(), report.window)
}

/// Greedy decomposition. Repeatedly take the smallest uncovered pair as a
/// base and try one or two generators drawn from differences to other
/// pairs; a candidate is valid when every window point it generates is a
/// pair. The candidate covering the most uncovered pairs wins if it covers
/// at least two; otherwise the base becomes residual.
pub fn coset_structure(pairs: &[Pair], window: PairWindow) -> CosetStructure {
    let all: BTreeSet<Pair> = pairs.iter().copied().filter(|&p| window.contains(p)).collect();
    let mut uncovered = all.clone();
    let mut out = CosetStructure::default();
    while let Some(&base) = uncovered.iter().next() {
        let gens: Vec<Pair> = all
            .iter()
            .filter(|&&p| p != base && p.0 >= base.0 && p.1 >= base.1)
            .map(|&p| (p.0 - base.0, p.1 - base.1))
            .collect();
        let mut candidates: Vec<Vec<Pair>> = gens.iter().map(|&g| vec![g]).collect();
        for (i, &g1) in gens.iter().enumerate() {
            for &g2 in &gens[i + 1..] {
                candidates.push(vec![g1, g2]);
            }
        }
        let mut best: Option<(usize, Coset)> = None;
        for generators in candidates {
            let coset = Coset { base, generators };
            let pts = coset.points(window);
            if !pts.is_subset(&all) {
                continue;
            }
            let gain = pts.intersection(&uncovered).count();
            let better = match &best {
                None => true,
                Some((g, c)) => gain > *g || (gain == *g && coset.generators.len() < c.generators.len()),
            };
            if better {
                best = Some((gain, coset));
            }
        }
        match best {
            Some((gain, coset)) if gain >= 2 => {
                for p in coset.points(window) {
                    uncovered.remove(&p);
                }
                out.cosets.push(coset);
            }
            _ => {
                uncovered.remove(&base);
                out.residual.push(base);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_one_coset() {
        let pairs: Vec<Pair> = (0..=6).map(|m| (m, m)).collect();
        let w = PairWindow::new(6, 6);
        let c = coset_structure(&pairs, w);
        assert_eq!(c.cosets, vec![Coset { base: (0, 0), generators: vec![(1, 1)] }]);
        assert!(c.residual.is_empty());
        assert_eq!(c.points(w), pairs.into_iter().collect());
    }

    #[test]
    fn isolated_pairs_are_residual() {
        let w = PairWindow::new(4, 4);
        let c = coset_structure(&[(0, 0), (1, 0)], w);
        assert!(c.cosets.is_empty());
        assert_eq!(c.residual, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn empty() {
        assert_eq!(coset_structure(&[], PairWindow::new(3, 3)), CosetStructure::default());
    }

    #[test]
    fn two_generator_lattice() {
        let w = PairWindow::new(4, 4);
        let pairs: Vec<Pair> = (0..=4).flat_map(|m| (0..=4).map(move |n| (m, n))).filter(|&(m, _)| m % 2 == 0).collect();
        let c = coset_structure(&pairs, w);
        assert_eq!(c.points(w), pairs.iter().copied().collect());
        assert_eq!(c.cosets.len(), 1);
    }
}
