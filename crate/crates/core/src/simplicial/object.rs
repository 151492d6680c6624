//! Restricted augmented simplicial objects: levels G_{-1}, G_0, …, G_N with
//! face maps d_i: G_n -> G_{n-1} for 0 <= i <= n, where d_0 on G_0 is the
//! augmentation.
//!
//! Levels are chain complexes of free modules. A plain graded module is a
//! complex with zero boundary, which is how the linear models enter.

use crate::chaincx::sub::{factor_through, kernel_subcomplex, DirectSum};
use crate::chaincx::{FreeChainComplex, GradedMap, HomologyGroup};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialObject {
    ring: Ring,
    levels: Vec<Arc<FreeChainComplex>>,
    faces: Vec<Vec<GradedMap>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub n: i64,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub failures: Vec<IdentityFailure>,
    /// Faces that fail to commute with the internal boundary, as (n, i).
    pub non_chain_faces: Vec<(i64, usize)>,
}

/// Moore chains C_n = ∩_{i>=1} ker d_i with ∂̄ = d_0 restricted, and cycles.
#[derive(Debug, Clone)]
pub struct MooreData {
    /// chains[n + 1] = (C_n, w_n: C_n -> G_n)
    pub chains: Vec<(Arc<FreeChainComplex>, GradedMap)>,
    /// diffs[n] = ∂̄_n: C_n -> C_{n-1}, n >= 0
    pub diffs: Vec<GradedMap>,
    /// cycles[n + 1] = (Z_n, v_n: Z_n -> C_n)
    pub cycles: Vec<(Arc<FreeChainComplex>, GradedMap)>,
}

impl MooreData {
    pub fn chain(&self, n: i64) -> &Arc<FreeChainComplex> {
        &self.chains[(n + 1) as usize].0
    }

    pub fn incl(&self, n: i64) -> &GradedMap {
        &self.chains[(n + 1) as usize].1
    }

    pub fn diff(&self, n: i64) -> &GradedMap {
        &self.diffs[n as usize]
    }

    pub fn cycle(&self, n: i64) -> &Arc<FreeChainComplex> {
        &self.cycles[(n + 1) as usize].0
    }

    pub fn cycle_incl(&self, n: i64) -> &GradedMap {
        &self.cycles[(n + 1) as usize].1
    }

    /// ∂̄_n factored through the cycles Z_{n-1} (the attaching map).
    pub fn attaching(&self, n: i64) -> GradedMap {
        factor_through(self.cycle_incl(n - 1), self.diff(n)).expect("∂̄ lands in cycles")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AcyclicityFailure {
    pub internal_degree: i64,
    pub dimension: i64,
    pub homology: String,
    /// A cycle (in Moore chain coordinates) not hit by the attaching map.
    pub uncovered: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AcyclicityReport {
    pub passed: bool,
    pub formulations_agree: bool,
    pub failures: Vec<AcyclicityFailure>,
}

/// A levelwise map of simplicial objects commuting with faces.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialObject>,
    pub target: Arc<SimplicialObject>,
    /// maps[n + 1]: source G_n -> target G_n
    pub maps: Vec<GradedMap>,
}

impl SimplicialMap {
    pub fn at(&self, n: i64) -> &GradedMap {
        &self.maps[(n + 1) as usize]
    }

    pub fn check(&self) -> bool {
        let top = self.source.top().min(self.target.top());
        (0..=top).all(|n| {
            (0..=n as usize).all(|i| self.at(n - 1).compose(self.source.face(n, i)) == self.target.face(n, i).compose(self.at(n)))
        }) && self.maps.iter().all(|m| m.is_chain_map())
    }

    pub fn identity(x: &Arc<SimplicialObject>) -> Self {
        let maps = (-1..=x.top()).map(|n| GradedMap::identity(x.level(n))).collect();
        SimplicialMap { source: x.clone(), target: x.clone(), maps }
    }

    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        let maps = self.maps.iter().zip(&first.maps).map(|(a, b)| a.compose(b)).collect();
        SimplicialMap { source: first.source.clone(), target: self.target.clone(), maps }
    }
}

impl SimplicialObject {
    /// `levels[n + 1] = G_n`; `faces[n][i] = d_i: G_n -> G_{n-1}`.
    pub fn new(ring: Ring, levels: Vec<Arc<FreeChainComplex>>, faces: Vec<Vec<GradedMap>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Shape("a simplicial object needs at least the augmentation level".into()));
        }
        if faces.len() + 1 != levels.len() {
            return Err(Error::Shape(format!("{} levels need {} face families", levels.len(), levels.len() - 1)));
        }
        for (n, fs) in faces.iter().enumerate() {
            if fs.len() != n + 1 {
                return Err(Error::Shape(format!("dimension {n} needs {} faces, got {}", n + 1, fs.len())));
            }
            for (i, f) in fs.iter().enumerate() {
                if f.shift() != 0 || **f.source() != *levels[n + 1] || **f.target() != *levels[n] {
                    return Err(Error::Shape(format!("face d_{i} in dimension {n} has the wrong frame")));
                }
            }
        }
        Ok(SimplicialObject { ring, levels, faces })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest simplicial dimension present.
    pub fn top(&self) -> i64 {
        self.levels.len() as i64 - 2
    }

    pub fn level(&self, n: i64) -> &Arc<FreeChainComplex> {
        &self.levels[(n + 1) as usize]
    }

    pub fn levels(&self) -> &[Arc<FreeChainComplex>] {
        &self.levels
    }

    pub fn face(&self, n: i64, i: usize) -> &GradedMap {
        &self.faces[n as usize][i]
    }

    pub fn faces(&self, n: i64) -> &[GradedMap] {
        &self.faces[n as usize]
    }

    pub fn truncate(&self, n: i64) -> SimplicialObject {
        let k = (n + 2).max(1) as usize;
        SimplicialObject { ring: self.ring, levels: self.levels[..k].to_vec(), faces: self.faces[..k - 1].to_vec() }
    }

    /// True when every level has zero internal boundary.
    pub fn is_module_level(&self) -> bool {
        self.levels.iter().all(|l| l.degrees().iter().all(|&t| l.boundary(t).is_zero()))
    }

    pub fn internal_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.levels.iter().flat_map(|l| l.degrees()).collect();
        d.sort();
        d.dedup();
        d
    }

    /// d_i d_j = d_{j-1} d_i for i < j.
    pub fn check_identities(&self) -> IdentityReport {
        let mut failures = Vec::new();
        for n in 1..=self.top() {
            for j in 1..=n as usize {
                for i in 0..j {
                    let lhs = self.face(n - 1, i).compose(self.face(n, j));
                    let rhs = self.face(n - 1, j - 1).compose(self.face(n, i));
                    if lhs != rhs {
                        failures.push(IdentityFailure { n, i, j });
                    }
                }
            }
        }
        let mut non_chain_faces = Vec::new();
        for n in 0..=self.top() {
            for (i, f) in self.faces(n).iter().enumerate() {
                if !f.is_chain_map() {
                    non_chain_faces.push((n, i));
                }
            }
        }
        IdentityReport { passed: failures.is_empty() && non_chain_faces.is_empty(), failures, non_chain_faces }
    }

    pub fn moore(&self) -> MooreData {
        let mut chains = Vec::new();
        for n in -1..=self.top() {
            let g = self.level(n);
            if n <= 0 {
                chains.push((g.clone(), GradedMap::identity(g).reframe(g.clone(), g.clone(), 0).unwrap()));
            } else {
                let higher = &self.faces(n)[1..];
                chains.push(kernel_subcomplex(g, higher));
            }
        }
        let mut diffs = Vec::new();
        for n in 0..=self.top() {
            let w = &chains[(n + 1) as usize].1;
            let below = &chains[n as usize].1;
            let d = factor_through(below, &self.face(n, 0).compose(w)).expect("d_0 preserves Moore chains");
            diffs.push(d);
        }
        let mut cycles = Vec::new();
        for n in -1..=self.top() {
            let c = &chains[(n + 1) as usize].0;
            if n == -1 {
                cycles.push((c.clone(), GradedMap::identity(c).reframe(c.clone(), c.clone(), 0).unwrap()));
            } else {
                cycles.push(kernel_subcomplex(c, &[diffs[n as usize].clone()]));
            }
        }
        MooreData { chains, diffs, cycles }
    }

    /// The Moore complex in one internal degree, with simplicial dimension n
    /// placed in chain degree n (the augmentation sits in degree -1).
    pub fn moore_slice(&self, t: i64) -> FreeChainComplex {
        self.moore_slice_from(&self.moore(), t)
    }

    pub fn moore_slice_from(&self, m: &MooreData, t: i64) -> FreeChainComplex {
        let mut out = FreeChainComplex::zero(self.ring);
        for n in -1..=self.top() {
            let c = m.chain(n);
            if c.rank(t) > 0 {
                out.set_rank(n, c.rank(t));
                out.set_labels(n, c.labels(t)).unwrap();
            }
        }
        for n in 0..=self.top() {
            let d = m.diff(n).component(t);
            if d.rows() > 0 && d.cols() > 0 {
                out.set_boundary(n, d).unwrap();
            }
        }
        out
    }

    /// The simplicial object of internal homology H_t(G_n) (over a field).
    pub fn homology_level(&self, t: i64) -> Result<SimplicialObject> {
        if !self.ring.is_field() {
            return Err(Error::Precondition("homotopy-level objects are formed over a field".into()));
        }
        let groups: Vec<HomologyGroup> = self.levels.iter().map(|l| l.homology(t)).collect();
        let levels: Vec<Arc<FreeChainComplex>> =
            groups.iter().map(|g| Arc::new(FreeChainComplex::sphere(self.ring, g.coordinate_count(), 0))).collect();
        let mut faces = Vec::new();
        for n in 0..=self.top() {
            let mut fs = Vec::new();
            for f in self.faces(n) {
                let m = f.on_homology(t);
                let mut mats = BTreeMap::new();
                mats.insert(0, m);
                fs.push(GradedMap::new(levels[(n + 1) as usize].clone(), levels[n as usize].clone(), 0, mats)?);
            }
            faces.push(fs);
        }
        SimplicialObject::new(self.ring, levels, faces)
    }

    /// Exactness of the augmented Moore complex at dimensions -1..=max_dim in
    /// every internal degree, checked two ways: vanishing homology, and the
    /// attaching map C_{n+1} -> Z_n hitting every cycle.
    pub fn acyclicity_check(&self, max_dim: i64) -> AcyclicityReport {
        let m = self.moore();
        let mut failures = Vec::new();
        let mut agree = true;
        let top = max_dim.min(self.top());
        for t in self.internal_degrees() {
            let slice = self.moore_slice_from(&m, t);
            for n in -1..=top {
                let h = slice.homology(n);
                let zero_homology = h.is_trivial();
                let (surjective, uncovered) = self.attaching_surjective(&m, n, t);
                if zero_homology != surjective {
                    agree = false;
                }
                if !zero_homology || !surjective {
                    failures.push(AcyclicityFailure {
                        internal_degree: t,
                        dimension: n,
                        homology: h.describe(),
                        uncovered: uncovered.iter().map(crate::ring::fmt_scalar).collect(),
                    });
                }
            }
        }
        AcyclicityReport { passed: failures.is_empty(), formulations_agree: agree, failures }
    }

    fn attaching_surjective(&self, m: &MooreData, n: i64, t: i64) -> (bool, Vec<Scalar>) {
        let z = m.cycle(n).rank(t);
        if z == 0 {
            return (true, Vec::new());
        }
        let a = if n < self.top() { m.attaching(n + 1).component(t) } else { Matrix::zeros(self.ring, z, 0) };
        let v = m.cycle_incl(n).component(t);
        for j in 0..z {
            let e = Matrix::column(self.ring, (0..z).map(|i| if i == j { Scalar::from_integer(1.into()) } else { Scalar::from_integer(0.into()) }).collect());
            if crate::linalg::solve(&a, &e).is_none() {
                return (false, v.col(j));
            }
        }
        (true, Vec::new())
    }
}

/// E(A): the restricted object with G_n = A_n, d_0 = ∂ and higher faces 0.
pub fn e_functor(a: &FreeChainComplex) -> Result<SimplicialObject> {
    let ring = a.ring();
    let lo = a.min_degree().unwrap_or(0);
    if lo < -1 {
        return Err(Error::Degree("E needs a complex concentrated in degrees >= -1".into()));
    }
    let top = a.max_degree().unwrap_or(-1).max(-1);
    let mut levels = Vec::new();
    for n in -1..=top {
        let mut g = FreeChainComplex::sphere(ring, a.rank(n), 0);
        if a.rank(n) > 0 {
            g.set_labels(0, a.labels(n))?;
        }
        levels.push(Arc::new(g));
    }
    let mut faces = Vec::new();
    for n in 0..=top {
        let src = levels[(n + 1) as usize].clone();
        let tgt = levels[n as usize].clone();
        let mut fs = Vec::new();
        let mut mats = BTreeMap::new();
        mats.insert(0, a.boundary(n));
        fs.push(GradedMap::new(src.clone(), tgt.clone(), 0, mats)?);
        for _ in 1..=n {
            fs.push(GradedMap::zero(src.clone(), tgt.clone(), 0));
        }
        faces.push(fs);
    }
    SimplicialObject::new(ring, levels, faces)
}

/// Cone(f)_n = B_n + A_{n-1}; d_0(b, a) = (d_0 b + f a, 0), d_i(b, a) = (d_i b, d_{i-1} a).
pub fn cone_restricted(f: &SimplicialMap) -> Result<(SimplicialObject, SimplicialMap)> {
    let (a, b) = (&f.source, &f.target);
    let ring = b.ring();
    let top = b.top().max(a.top() + 1);
    let empty = Arc::new(FreeChainComplex::zero(ring));
    let b_at = |n: i64| if n <= b.top() { b.level(n).clone() } else { empty.clone() };
    let a_at = |n: i64| if n >= -1 && n <= a.top() { a.level(n).clone() } else { empty.clone() };
    let sums: Vec<DirectSum> = (-1..=top).map(|n| DirectSum::new(ring, vec![b_at(n), a_at(n - 1)])).collect();
    let sum = |n: i64| &sums[(n + 1) as usize];
    let b_face = |n: i64, i: usize| -> GradedMap {
        if n <= b.top() {
            b.face(n, i).clone()
        } else {
            GradedMap::zero(b_at(n), b_at(n - 1), 0)
        }
    };
    let a_face = |n: i64, i: usize| -> GradedMap {
        if n >= 0 && n <= a.top() {
            a.face(n, i).clone()
        } else {
            GradedMap::zero(a_at(n), a_at(n - 1), 0)
        }
    };
    let f_at = |n: i64| -> GradedMap {
        if n >= -1 && n <= a.top() && n <= b.top() {
            f.at(n).clone()
        } else {
            GradedMap::zero(a_at(n), b_at(n), 0)
        }
    };
    let mut faces = Vec::new();
    for n in 0..=top {
        let (s, t) = (sum(n), sum(n - 1));
        let mut fs = Vec::new();
        let top_part = b_face(n, 0).compose(&s.proj(0)).add(&f_at(n - 1).compose(&s.proj(1)));
        fs.push(t.inj(0).compose(&top_part));
        for i in 1..=n as usize {
            let bb = t.inj(0).compose(&b_face(n, i)).compose(&s.proj(0));
            let aa = t.inj(1).compose(&a_face(n - 1, i - 1)).compose(&s.proj(1));
            fs.push(bb.add(&aa));
        }
        faces.push(fs);
    }
    let levels: Vec<Arc<FreeChainComplex>> = sums.iter().map(|s| s.total.clone()).collect();
    let cone = Arc::new(SimplicialObject::new(ring, levels, faces)?);
    let maps = (-1..=b.top()).map(|n| sum(n).inj(0)).collect();
    let ell = SimplicialMap { source: b.clone(), target: cone.clone(), maps };
    Ok(((*cone).clone(), ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moore_cx() -> FreeChainComplex {
        let z = Ring::Integers;
        let mut m = FreeChainComplex::with_ranks(z, &[(0, 1), (1, 2), (2, 1)]);
        m.set_boundary(1, Matrix::from_i64(z, 1, 2, &[2, 0])).unwrap();
        m.set_boundary(2, Matrix::from_i64(z, 2, 1, &[0, 3])).unwrap();
        m
    }

    #[test]
    fn e_then_moore_is_identity() {
        let a = moore_cx();
        let e = e_functor(&a).unwrap();
        assert!(e.check_identities().passed);
        assert_eq!(e.moore_slice(0), a);
    }

    #[test]
    fn transposed_face_is_located() {
        let q = Ring::Rationals;
        let a = FreeChainComplex::disk(q, 1, 1);
        let e = e_functor(&a).unwrap();
        let mut faces = e.faces.clone();
        // Build a 2-dimensional object whose d_0 and d_1 disagree on purpose.
        let g2 = Arc::new(FreeChainComplex::sphere(q, 1, 0));
        let mut m = BTreeMap::new();
        m.insert(0, Matrix::from_i64(q, 1, 1, &[1]));
        let one = GradedMap::new(g2.clone(), e.level(1).clone(), 0, m).unwrap();
        let zero = GradedMap::zero(g2.clone(), e.level(1).clone(), 0);
        faces.push(vec![zero.clone(), one, zero]);
        let mut levels = e.levels.clone();
        levels.push(g2);
        let bad = SimplicialObject::new(q, levels, faces).unwrap();
        let r = bad.check_identities();
        assert!(!r.passed);
        assert!(r.failures.contains(&IdentityFailure { n: 2, i: 0, j: 1 }));
    }

    #[test]
    fn constant_object_has_no_higher_moore_chains() {
        let q = Ring::Rationals;
        let g = Arc::new(FreeChainComplex::sphere(q, 2, 0));
        let levels = vec![g.clone(); 4];
        let faces = (0..3).map(|n| vec![GradedMap::identity(&g); n + 1]).collect();
        let c = SimplicialObject::new(q, levels, faces).unwrap();
        assert!(c.check_identities().passed);
        let m = c.moore();
        for n in 1..=2 {
            assert_eq!(m.chain(n).total_rank(), 0);
        }
    }

    #[test]
    fn disk_is_acyclic_sphere_is_not() {
        let q = Ring::Rationals;
        let d = e_functor(&FreeChainComplex::disk(q, 2, 1)).unwrap();
        let r = d.acyclicity_check(1);
        assert!(r.passed && r.formulations_agree);
        let s = e_functor(&FreeChainComplex::sphere(q, 1, 1)).unwrap();
        assert!(s.acyclicity_check(0).passed);
        let r = s.acyclicity_check(1);
        assert!(!r.passed && r.formulations_agree);
        assert_eq!(r.failures[0].dimension, 1);
        assert_eq!(r.failures[0].uncovered, vec!["1"]);
    }

    #[test]
    fn cone_on_sphere_is_example_shape() {
        let q = Ring::Rationals;
        let a = Arc::new(e_functor(&FreeChainComplex::sphere(q, 1, 0)).unwrap());
        let b = Arc::new(e_functor(&FreeChainComplex::sphere(q, 1, 0)).unwrap().truncate(0));
        let mut m = BTreeMap::new();
        m.insert(0, Matrix::from_i64(q, 1, 1, &[1]));
        let f0 = GradedMap::new(a.level(0).clone(), b.level(0).clone(), 0, m).unwrap();
        let fm1 = GradedMap::zero(a.level(-1).clone(), b.level(-1).clone(), 0);
        let f = SimplicialMap { source: a, target: b, maps: vec![fm1, f0] };
        assert!(f.check());
        let (c, ell) = cone_restricted(&f).unwrap();
        assert!(c.check_identities().passed);
        assert!(ell.check());
        assert_eq!(c.level(1).total_rank(), 1);
        assert_eq!(c.face(1, 0).component(0), Matrix::from_i64(q, 1, 1, &[1]));
        assert!(c.face(1, 1).is_zero());
    }
}
