//! The standard strongly cofibrant replacement of B·S^{n-1}: D_{n-1} = B and
//! D_k = C Σ^{n-k-2} B for -1 <= k <= n-2, with boundaries i∘q.

use super::complex::FreeChainComplex;
use super::map::GradedMap;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct StandardReplacement {
    pub n: i64,
    /// levels[k + 1] = D_k for k = -1..=n-1.
    pub levels: Vec<Arc<FreeChainComplex>>,
    /// boundaries[k] = ∂: D_k -> D_{k-1} for k = 0..=n-1 (index k).
    pub boundaries: Vec<GradedMap>,
}

impl StandardReplacement {
    pub fn level(&self, k: i64) -> &Arc<FreeChainComplex> {
        &self.levels[(k + 1) as usize]
    }

    pub fn boundary(&self, k: i64) -> &GradedMap {
        &self.boundaries[k as usize]
    }

    /// ∂_{k-1}∘∂_k = 0 for every k and every boundary is a chain map.
    pub fn verify(&self) -> bool {
        let chain = self.boundaries.iter().all(|d| d.is_chain_map());
        let squares = self.boundaries.windows(2).all(|w| w[0].compose(&w[1]).is_zero());
        chain && squares
    }
}

/// i: ΣK -> C(ΣK), x ↦ (x, 0) composed after q: CK -> ΣK, (x, y) ↦ y.
fn cone_step(k: &FreeChainComplex, ck: &Arc<FreeChainComplex>, next: &Arc<FreeChainComplex>) -> GradedMap {
    let ring = k.ring();
    let mut mats = BTreeMap::new();
    for t in ck.degrees() {
        let r = k.rank(t - 1);
        if r == 0 {
            continue;
        }
        let mut m = Matrix::zeros(ring, next.rank(t), ck.rank(t));
        m.paste(0, k.rank(t), &Matrix::identity(ring, r));
        mats.insert(t, m);
    }
    GradedMap::new(ck.clone(), next.clone(), 0, mats).unwrap()
}

pub fn standard_replacement(b: &FreeChainComplex, n: i64) -> Result<StandardReplacement> {
    if n < 1 {
        return Err(Error::Precondition("the replacement needs n >= 1".into()));
    }
    let ring = b.ring();
    let top = Arc::new(b.clone());
    let mut levels = vec![top.clone()];
    let mut boundaries = Vec::new();
    // D_{n-2} first, building downward.
    let first = Arc::new(b.cone());
    let mut mats = BTreeMap::new();
    for t in b.degrees() {
        let mut m = Matrix::zeros(ring, first.rank(t), b.rank(t));
        m.paste(0, 0, &Matrix::identity(ring, b.rank(t)));
        mats.insert(t, m);
    }
    boundaries.push(GradedMap::new(top, first.clone(), 0, mats)?);
    levels.push(first);
    for m in 0..n - 1 {
        let k = b.shift_by(m);
        let ck = levels.last().unwrap().clone();
        let next = Arc::new(k.suspension().cone());
        boundaries.push(cone_step(&k, &ck, &next));
        levels.push(next);
    }
    levels.reverse();
    boundaries.reverse();
    Ok(StandardReplacement { n, levels, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn rank_one_integers_n2() {
        let b = FreeChainComplex::sphere(Ring::Integers, 1, 0);
        let r = standard_replacement(&b, 2).unwrap();
        assert_eq!(r.levels.len(), 3);
        assert_eq!(**r.level(1), b);
        assert_eq!(r.level(0).total_rank(), 2);
        assert!(r.level(0).is_acyclic());
        assert!(r.level(-1).is_acyclic());
        assert!(r.verify());
    }

    #[test]
    fn internal_levels_are_contractible() {
        let z = Ring::Integers;
        let mut b = FreeChainComplex::with_ranks(z, &[(0, 1), (1, 1)]);
        b.set_boundary(1, Matrix::from_i64(z, 1, 1, &[3])).unwrap();
        let r = standard_replacement(&b, 4).unwrap();
        for k in -1..=2 {
            assert!(r.level(k).is_acyclic(), "level {k}");
        }
        assert_eq!(**r.level(3), b);
        assert!(r.verify());
    }
}
