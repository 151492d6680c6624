//! Bounded chain complexes of finitely generated free modules.

use super::group::HomologyGroup;
use crate::conventions::{CONE_SHIFT_SIGN, SUSPENSION_SIGN};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeChainComplex {
    ring: Ring,
    ranks: BTreeMap<i64, usize>,
    labels: BTreeMap<i64, Vec<String>>,
    boundaries: BTreeMap<i64, Matrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationFailure {
    pub degree: i64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub failures: Vec<ValidationFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Sphere,
    Disk,
}

impl FreeChainComplex {
    pub fn zero(ring: Ring) -> Self {
        FreeChainComplex { ring, ranks: BTreeMap::new(), labels: BTreeMap::new(), boundaries: BTreeMap::new() }
    }

    /// Ranks per degree; boundaries are set afterwards with `set_boundary`.
    pub fn with_ranks(ring: Ring, ranks: &[(i64, usize)]) -> Self {
        let mut c = Self::zero(ring);
        for &(n, r) in ranks {
            c.set_rank(n, r);
        }
        c
    }

    /// One generator per entry `(degree, label)`.
    pub fn set_rank(&mut self, n: i64, r: usize) {
        if r == 0 {
            self.ranks.remove(&n);
            self.labels.remove(&n);
        } else {
            self.ranks.insert(n, r);
            self.labels.insert(n, (0..r).map(|i| format!("g{n}_{i}")).collect());
        }
        self.boundaries.remove(&n);
        self.boundaries.remove(&(n + 1));
    }

    pub fn set_labels(&mut self, n: i64, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.rank(n) {
            return Err(Error::Shape(format!("{} labels for rank {} in degree {n}", labels.len(), self.rank(n))));
        }
        if !labels.is_empty() {
            self.labels.insert(n, labels);
        }
        Ok(())
    }

    pub fn labels(&self, n: i64) -> Vec<String> {
        self.labels.get(&n).cloned().unwrap_or_default()
    }

    pub fn set_boundary(&mut self, n: i64, m: Matrix) -> Result<()> {
        if m.shape() != (self.rank(n - 1), self.rank(n)) {
            return Err(Error::Shape(format!(
                "boundary in degree {n} has shape {:?}, expected {:?}",
                m.shape(),
                (self.rank(n - 1), self.rank(n))
            )));
        }
        let m = m.change_ring(self.ring);
        if m.is_zero() {
            self.boundaries.remove(&n);
        } else {
            self.boundaries.insert(n, m);
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Degrees carrying a nonzero module, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.ranks.keys().copied().collect()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.ranks.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.ranks.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn boundary(&self, n: i64) -> Matrix {
        self.boundaries
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for (&n, m) in &self.boundaries {
            if m.shape() != (self.rank(n - 1), self.rank(n)) {
                failures.push(ValidationFailure { degree: n, detail: "boundary shape mismatch".into() });
            }
        }
        if failures.is_empty() {
            for &n in self.ranks.keys() {
                if self.rank(n - 2) == 0 {
                    continue;
                }
                if !self.boundary(n - 1).mul(&self.boundary(n)).is_zero() {
                    failures.push(ValidationFailure {
                        degree: n,
                        detail: format!("boundary({}) * boundary({n}) != 0", n - 1),
                    });
                }
            }
        }
        ValidationReport { passed: failures.is_empty(), failures }
    }

    pub fn homology(&self, n: i64) -> HomologyGroup {
        HomologyGroup::new(&self.boundary(n), &self.boundary(n + 1))
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.keys().all(|&n| self.homology(n).is_trivial())
    }

    /// B in degree n.
    pub fn sphere(ring: Ring, rank: usize, n: i64) -> Self {
        Self::with_ranks(ring, &[(n, rank)])
    }

    /// B in degrees n and n-1 with the identity between them.
    pub fn disk(ring: Ring, rank: usize, n: i64) -> Self {
        let mut c = Self::with_ranks(ring, &[(n, rank), (n - 1, rank)]);
        c.set_boundary(n, Matrix::identity(ring, rank)).unwrap();
        c
    }

    pub fn cell(ring: Ring, rank: usize, kind: CellKind, n: i64) -> Self {
        match kind {
            CellKind::Sphere => Self::sphere(ring, rank, n),
            CellKind::Disk => Self::disk(ring, rank, n),
        }
    }

    /// Degree shift with negated differential: (ΣC)_t = C_{t-1}.
    pub fn suspension(&self) -> Self {
        self.shift_by(1)
    }

    /// Σ^k C for k >= 0.
    pub fn shift_by(&self, k: i64) -> Self {
        let mut out = Self::zero(self.ring);
        for (&n, &r) in &self.ranks {
            out.ranks.insert(n + k, r);
            out.labels.insert(n + k, self.labels(n));
        }
        for (&n, m) in &self.boundaries {
            out.boundaries.insert(n + k, m.signed(if SUSPENSION_SIGN < 0 { k } else { 0 }));
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.ring);
        let degs: std::collections::BTreeSet<i64> = self.ranks.keys().chain(other.ranks.keys()).copied().collect();
        for &n in &degs {
            let r = self.rank(n) + other.rank(n);
            if r > 0 {
                out.ranks.insert(n, r);
                let mut l = self.labels(n);
                l.extend(other.labels(n));
                out.labels.insert(n, l);
            }
        }
        for &n in &degs {
            let m = self.boundary(n).direct_sum(&other.boundary(n));
            if !m.is_zero() {
                out.boundaries.insert(n, m);
            }
        }
        out
    }

    /// CK_t = K_t + K_{t-1}, d(x, y) = (dx + y, -dy).
    pub fn cone(&self) -> Self {
        super::map::GradedMap::identity(self).cone()
    }

    pub fn summary(&self) -> BTreeMap<i64, usize> {
        self.ranks.clone()
    }

    /// Attach cells of rank r in degree n along a map from r·S^{n-1}.
    pub fn attach_cell(&self, attaching: &super::map::GradedMap) -> Result<Self> {
        if attaching.shift() != 0 {
            return Err(Error::Degree("attaching map must have degree 0".into()));
        }
        let src = attaching.source();
        let degs = src.degrees();
        if degs.len() != 1 {
            return Err(Error::Degree("attaching map must start at a sphere complex".into()));
        }
        if attaching.target().as_ref() != self {
            return Err(Error::Precondition("attaching map does not land in the skeleton".into()));
        }
        let n = degs[0] + 1;
        let r = src.rank(n - 1);
        let a = attaching.component(n - 1);
        if !self.boundary(n - 1).mul(&a).is_zero() {
            return Err(Error::Precondition("attaching map is not a chain map".into()));
        }
        let mut out = self.clone();
        let old = self.rank(n);
        let above = self.boundary(n + 1);
        let below = self.boundary(n);
        out.ranks.insert(n, old + r);
        let mut labels = self.labels(n);
        labels.extend(src.labels(n - 1).into_iter().map(|l| format!("cell_{l}")));
        out.labels.insert(n, labels);
        out.boundaries.remove(&n);
        out.boundaries.remove(&(n + 1));
        out.set_boundary(n, below.hstack(&a))?;
        out.set_boundary(n + 1, above.vstack(&Matrix::zeros(self.ring, r, above.cols())))?;
        Ok(out)
    }

    /// Inclusion of the top degree of a disk: r·S^{n-1} -> r·D^n.
    pub fn disk_inclusion(ring: Ring, rank: usize, n: i64) -> super::map::GradedMap {
        let s = Self::sphere(ring, rank, n - 1);
        let d = Self::disk(ring, rank, n);
        let mut mats = BTreeMap::new();
        mats.insert(n - 1, Matrix::identity(ring, rank));
        super::map::GradedMap::new(s.into(), d.into(), 0, mats).unwrap()
    }

    pub(crate) fn cone_shift_sign() -> i64 {
        CONE_SHIFT_SIGN
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::map::GradedMap;

    #[test]
    fn moore_complex_validates_and_has_torsion() {
        let z = Ring::Integers;
        let mut m = FreeChainComplex::with_ranks(z, &[(3, 1), (4, 1)]);
        m.set_boundary(4, Matrix::from_i64(z, 1, 1, &[2])).unwrap();
        assert!(m.validate().passed);
        let h = m.homology(3);
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.torsion_strings(), vec!["2"]);
        assert!(m.homology(4).is_trivial());
    }

    #[test]
    fn bad_fixture_is_located() {
        let z = Ring::Integers;
        let mut c = FreeChainComplex::with_ranks(z, &[(0, 1), (1, 1), (2, 1)]);
        c.set_boundary(1, Matrix::from_i64(z, 1, 1, &[1])).unwrap();
        c.set_boundary(2, Matrix::from_i64(z, 1, 1, &[1])).unwrap();
        let r = c.validate();
        assert!(!r.passed);
        assert_eq!(r.failures[0].degree, 2);
        assert!(FreeChainComplex::zero(z).validate().passed);
    }

    #[test]
    fn cells() {
        let s = FreeChainComplex::sphere(Ring::Integers, 1, 3);
        assert_eq!(s.homology(3).free_rank(), 1);
        let d = FreeChainComplex::disk(Ring::Rationals, 2, 2);
        assert_eq!(d.rank(2), 2);
        assert_eq!(d.rank(1), 2);
        assert!(d.is_acyclic());
    }

    #[test]
    fn attaching_along_two_builds_moore() {
        let z = Ring::Integers;
        let skel = FreeChainComplex::sphere(z, 1, 3);
        let s = FreeChainComplex::sphere(z, 1, 3);
        let mut mats = BTreeMap::new();
        mats.insert(3, Matrix::from_i64(z, 1, 1, &[2]));
        let att = GradedMap::new(s.into(), skel.clone().into(), 0, mats).unwrap();
        let m = skel.attach_cell(&att).unwrap();
        assert_eq!(m.homology(3).torsion_strings(), vec!["2"]);
        let zero = GradedMap::zero(att.source().clone(), att.target().clone(), 0);
        let split = skel.attach_cell(&zero).unwrap();
        assert_eq!(split.homology(4).free_rank(), 1);
        let mut idm = BTreeMap::new();
        idm.insert(3, Matrix::identity(z, 1));
        let id = GradedMap::new(att.source().clone(), skel.clone().into(), 0, idm).unwrap();
        let disk = skel.attach_cell(&id).unwrap();
        assert!(disk.is_acyclic());
    }

    #[test]
    fn suspension_shifts_homology() {
        let z = Ring::Integers;
        let mut m = FreeChainComplex::with_ranks(z, &[(3, 1), (4, 1)]);
        m.set_boundary(4, Matrix::from_i64(z, 1, 1, &[2])).unwrap();
        let s = m.suspension();
        assert!(s.validate().passed);
        assert_eq!(s.homology(4).torsion_strings(), vec!["2"]);
    }
}
