//! Subcomplexes cut out by kernels, factorization through inclusions, and
//! finite direct sums with their injections and projections.

use super::complex::FreeChainComplex;
use super::map::GradedMap;
use crate::linalg::{kernel, solve};
use crate::matrix::Matrix;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The common kernel of graded maps out of `src`, as a subcomplex with its
/// inclusion. The maps must be chain maps (up to sign) so the kernel is closed
/// under the boundary. Over ℤ the kernel is saturated.
pub fn kernel_subcomplex(src: &Arc<FreeChainComplex>, maps: &[GradedMap]) -> (Arc<FreeChainComplex>, GradedMap) {
    let ring = src.ring();
    let mut bases: BTreeMap<i64, Matrix> = BTreeMap::new();
    for t in src.degrees() {
        let n = src.rank(t);
        let mut stacked = Matrix::zeros(ring, 0, n);
        for m in maps {
            stacked = stacked.vstack(&m.component(t));
        }
        let k = kernel(&stacked);
        if k.cols() > 0 {
            bases.insert(t, k);
        }
    }
    let mut sub = FreeChainComplex::zero(ring);
    for (&t, k) in &bases {
        sub.set_rank(t, k.cols());
        if k.cols() == src.rank(t) && *k == Matrix::identity(ring, k.cols()) {
            sub.set_labels(t, src.labels(t)).unwrap();
        }
    }
    for (&t, k) in &bases {
        if let Some(below) = bases.get(&(t - 1)) {
            let image = src.boundary(t).mul(k);
            let x = solve(below, &image).expect("kernel of chain maps is a subcomplex");
            sub.set_boundary(t, x).unwrap();
        }
    }
    let sub = Arc::new(sub);
    let incl = GradedMap::new(sub.clone(), src.clone(), 0, bases).unwrap();
    (sub, incl)
}

/// x with incl∘x = g, where incl: A' -> A is injective and g: S -> A.
pub fn factor_through(incl: &GradedMap, g: &GradedMap) -> Option<GradedMap> {
    assert_eq!(incl.shift(), 0);
    assert!(**incl.target() == **g.target(), "factoring through an inclusion into another complex");
    let mut mats = BTreeMap::new();
    for (&t, m) in g.components() {
        let i = incl.component(t + g.shift());
        mats.insert(t, solve(&i, m)?);
    }
    Some(GradedMap::new(g.source().clone(), incl.source().clone(), g.shift(), mats).unwrap())
}

/// f: A -> B restricted to subcomplexes A' ⊂ A, B' ⊂ B, when f(A') ⊂ B'.
pub fn restrict(f: &GradedMap, incl_src: &GradedMap, incl_tgt: &GradedMap) -> Option<GradedMap> {
    factor_through(incl_tgt, &f.compose(incl_src))
}

/// A finite direct sum with structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub parts: Vec<Arc<FreeChainComplex>>,
    pub total: Arc<FreeChainComplex>,
}

impl DirectSum {
    pub fn new(ring: crate::ring::Ring, parts: Vec<Arc<FreeChainComplex>>) -> Self {
        let mut total = FreeChainComplex::zero(ring);
        for p in &parts {
            total = total.direct_sum(p);
        }
        DirectSum { parts, total: Arc::new(total) }
    }

    fn offset(&self, i: usize, t: i64) -> usize {
        self.parts[..i].iter().map(|p| p.rank(t)).sum()
    }

    pub fn inj(&self, i: usize) -> GradedMap {
        let ring = self.total.ring();
        let p = &self.parts[i];
        let mut mats = BTreeMap::new();
        for t in p.degrees() {
            let mut m = Matrix::zeros(ring, self.total.rank(t), p.rank(t));
            m.paste(self.offset(i, t), 0, &Matrix::identity(ring, p.rank(t)));
            mats.insert(t, m);
        }
        GradedMap::new(p.clone(), self.total.clone(), 0, mats).unwrap()
    }

    pub fn proj(&self, i: usize) -> GradedMap {
        let ring = self.total.ring();
        let p = &self.parts[i];
        let mut mats = BTreeMap::new();
        for t in p.degrees() {
            let mut m = Matrix::zeros(ring, p.rank(t), self.total.rank(t));
            m.paste(0, self.offset(i, t), &Matrix::identity(ring, p.rank(t)));
            mats.insert(t, m);
        }
        GradedMap::new(self.total.clone(), p.clone(), 0, mats).unwrap()
    }

    /// Σ_i maps[i]∘proj_i for maps out of the summands.
    pub fn copair(&self, maps: &[GradedMap], target: &Arc<FreeChainComplex>, shift: i64) -> GradedMap {
        let mut out = GradedMap::zero(self.total.clone(), target.clone(), shift);
        for (i, m) in maps.iter().enumerate() {
            out = out.add(&m.compose(&self.proj(i)));
        }
        out
    }

    /// Σ_i inj_i∘maps[i] for maps into the summands.
    pub fn pair(&self, maps: &[GradedMap], source: &Arc<FreeChainComplex>, shift: i64) -> GradedMap {
        let mut out = GradedMap::zero(source.clone(), self.total.clone(), shift);
        for (i, m) in maps.iter().enumerate() {
            out = out.add(&self.inj(i).compose(m));
        }
        out
    }
}
