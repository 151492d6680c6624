//! Graded maps between chain complexes; chain maps and homotopies are graded
//! maps satisfying an equation.

use super::complex::FreeChainComplex;
use crate::conventions::{chain_map_sign, hom_sign};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A family of matrices f_n: A_n -> B_{n+shift}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<FreeChainComplex>,
    target: Arc<FreeChainComplex>,
    shift: i64,
    mats: BTreeMap<i64, Matrix>,
}

/// Ordinary chain maps are graded maps of shift 0 commuting with boundaries.
pub type ChainMap = GradedMap;

/// A homotopy H together with the map it bounds: D(H) = target.
#[derive(Debug, Clone)]
pub struct GradedHomotopy {
    pub homotopy: GradedMap,
    pub bounds: GradedMap,
}

impl GradedHomotopy {
    pub fn verify(&self) -> bool {
        self.homotopy.hom_differential() == self.bounds
    }
}

impl GradedMap {
    pub fn new(
        source: Arc<FreeChainComplex>,
        target: Arc<FreeChainComplex>,
        shift: i64,
        mats: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let ring = source.ring();
        let mut clean = BTreeMap::new();
        for (n, m) in mats {
            let want = (target.rank(n + shift), source.rank(n));
            if m.shape() != want {
                return Err(Error::Shape(format!("component in degree {n} has shape {:?}, expected {want:?}", m.shape())));
            }
            let m = m.change_ring(ring);
            if !m.is_zero() {
                clean.insert(n, m);
            }
        }
        Ok(GradedMap { source, target, shift, mats: clean })
    }

    pub fn zero(source: Arc<FreeChainComplex>, target: Arc<FreeChainComplex>, shift: i64) -> Self {
        GradedMap { source, target, shift, mats: BTreeMap::new() }
    }

    pub fn identity(c: &FreeChainComplex) -> Self {
        let a = Arc::new(c.clone());
        let mats = c.degrees().into_iter().map(|n| (n, Matrix::identity(c.ring(), c.rank(n)))).collect();
        GradedMap { source: a.clone(), target: a, shift: 0, mats }
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn source(&self) -> &Arc<FreeChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeChainComplex> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.mats
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.mats
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring(), self.target.rank(n + self.shift), self.source.rank(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn set_component(&mut self, n: i64, m: Matrix) -> Result<()> {
        let want = (self.target.rank(n + self.shift), self.source.rank(n));
        if m.shape() != want {
            return Err(Error::Shape(format!("component in degree {n} has shape {:?}, expected {want:?}", m.shape())));
        }
        if m.is_zero() {
            self.mats.remove(&n);
        } else {
            self.mats.insert(n, m);
        }
        Ok(())
    }

    fn same_frame(&self, other: &GradedMap) -> bool {
        self.shift == other.shift && *self.source == *other.source && *self.target == *other.target
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert!(self.same_frame(other), "adding graded maps with different frames");
        let mut out = self.clone();
        for (&n, m) in &other.mats {
            let v = out.component(n).add(m);
            out.set_component(n, v).unwrap();
        }
        out
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedMap {
        self.signed(1)
    }

    pub fn signed(&self, exponent: i64) -> GradedMap {
        let mut out = self.clone();
        for m in out.mats.values_mut() {
            *m = m.signed(exponent);
        }
        out
    }

    pub fn scale(&self, s: &crate::ring::Scalar) -> GradedMap {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.shift);
        for (&n, m) in &self.mats {
            out.set_component(n, m.scale(s)).unwrap();
        }
        out
    }

    /// self ∘ first
    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        assert!(*first.target == *self.source, "composing maps with mismatched middle complex");
        let mut out = Self::zero(first.source.clone(), self.target.clone(), self.shift + first.shift);
        for (&n, m) in &first.mats {
            if let Some(s) = self.mats.get(&(n + first.shift)) {
                out.set_component(n, s.mul(m)).unwrap();
            }
        }
        out
    }

    /// D(f) = d f - (-1)^{|f|} f d, a graded map of shift |f| - 1.
    pub fn hom_differential(&self) -> GradedMap {
        let s = self.shift;
        let mut out = Self::zero(self.source.clone(), self.target.clone(), s - 1);
        let mut degs: Vec<i64> = self.mats.keys().copied().collect();
        degs.extend(self.mats.keys().map(|n| n + 1));
        degs.sort();
        degs.dedup();
        for n in degs {
            let mut v = Matrix::zeros(self.ring(), self.target.rank(n + s - 1), self.source.rank(n));
            if let Some(f) = self.mats.get(&n) {
                v = v.add(&self.target.boundary(n + s).mul(f));
            }
            if let Some(f) = self.mats.get(&(n - 1)) {
                let fd = f.mul(&self.source.boundary(n));
                v = v.sub(&fd.signed(if hom_sign(s) < 0 { 1 } else { 0 }));
            }
            out.set_component(n, v).unwrap();
        }
        out
    }

    /// d f = (-1)^s f d
    pub fn is_chain_map(&self) -> bool {
        debug_assert_eq!(chain_map_sign(self.shift), crate::conventions::hom_sign(self.shift));
        self.hom_differential().is_zero()
    }

    /// Induced map on homology in degree n, as a matrix between the homology
    /// coordinate systems of source and target.
    pub fn on_homology(&self, n: i64) -> Matrix {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n + self.shift);
        let gens = hs.generator_cycles();
        let mut m = Matrix::zeros(self.ring(), ht.coordinate_count(), gens.len());
        let f = self.component(n);
        for (j, g) in gens.iter().enumerate() {
            let img = f.mul_vec(g);
            let c = ht.class_of(&img).expect("chain map sends cycles to cycles");
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Mapping cone: C(f)_n = B_n + A_{n-1}, d(b, a) = (db + f a, -da).
    pub fn cone(&self) -> FreeChainComplex {
        assert_eq!(self.shift, 0, "cone of a degree-0 map");
        let (a, b) = (&*self.source, &*self.target);
        let ring = self.ring();
        let mut degs: Vec<i64> = b.degrees();
        degs.extend(a.degrees().into_iter().map(|n| n + 1));
        degs.sort();
        degs.dedup();
        let mut c = FreeChainComplex::zero(ring);
        for &n in &degs {
            c.set_rank(n, b.rank(n) + a.rank(n - 1));
            let mut l = b.labels(n);
            l.extend(a.labels(n - 1).into_iter().map(|x| format!("c({x})")));
            c.set_labels(n, l).unwrap();
        }
        let sign = FreeChainComplex::cone_shift_sign();
        for &n in &degs {
            let mut m = Matrix::zeros(ring, c.rank(n - 1), c.rank(n));
            m.paste(0, 0, &b.boundary(n));
            m.paste(0, b.rank(n), &self.component(n - 1));
            m.paste(b.rank(n - 1), b.rank(n), &a.boundary(n - 1).signed(if sign < 0 { 1 } else { 0 }));
            c.set_boundary(n, m).unwrap();
        }
        c
    }

    /// Reinterpret a shift-s map A -> B as a shift-0 map Σ^s A -> B (s >= 0).
    pub fn desuspend_source(&self) -> GradedMap {
        let src = Arc::new(self.source.shift_by(self.shift));
        let mats = self.mats.iter().map(|(&n, m)| (n + self.shift, m.clone())).collect();
        GradedMap::new(src, self.target.clone(), 0, mats).unwrap()
    }

    /// Replace the frame (same matrices) by complexes with identical ranks.
    pub fn reframe(&self, source: Arc<FreeChainComplex>, target: Arc<FreeChainComplex>, shift: i64) -> Result<GradedMap> {
        GradedMap::new(source, target, shift, self.mats.clone())
    }
}
