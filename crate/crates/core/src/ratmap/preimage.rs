use super::RatMap;
use crate::error::Result;
use crate::poly::modular::distinct_root_count;
use crate::projective::ProjPoint;

/// Number of distinct points of `f^{-k}(b)` over the algebraic closure: the
/// number of distinct roots of `b1·P_k − b0·Q_k` on the projective line.
pub fn preimage_count(f: &RatMap, b: &ProjPoint, k: usize) -> Result<usize> {
    let (pk, qk) = f.iterated_forms(k)?;
    let form = pk.scale(b.a1()).sub(&qk.scale(b.a0()));
    let at_infinity = usize::from(form.x1_multiplicity() > 0);
    Ok(at_infinity + distinct_root_count(&form.dehomogenize())?)
}
