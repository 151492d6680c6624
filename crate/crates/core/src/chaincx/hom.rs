//! The internal hom complex Hom(A, B) with D(f) = d f - (-1)^{|f|} f d,
//! flattened to coordinate vectors so homotopy problems become linear systems.

use super::complex::FreeChainComplex;
use super::group::HomologyGroup;
use super::map::{GradedHomotopy, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{kernel, solve};
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct HomComplex {
    src: Arc<FreeChainComplex>,
    tgt: Arc<FreeChainComplex>,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    n: i64,
    offset: usize,
    rows: usize,
    cols: usize,
}

impl HomComplex {
    pub fn new(src: Arc<FreeChainComplex>, tgt: Arc<FreeChainComplex>) -> Self {
        HomComplex { src, tgt }
    }

    pub fn ring(&self) -> Ring {
        self.src.ring()
    }

    pub fn source(&self) -> &Arc<FreeChainComplex> {
        &self.src
    }

    pub fn target(&self) -> &Arc<FreeChainComplex> {
        &self.tgt
    }

    fn blocks(&self, k: i64) -> Vec<Block> {
        let mut out = Vec::new();
        let mut offset = 0;
        for n in self.src.degrees() {
            let rows = self.tgt.rank(n + k);
            let cols = self.src.rank(n);
            if rows > 0 && cols > 0 {
                out.push(Block { n, offset, rows, cols });
                offset += rows * cols;
            }
        }
        out
    }

    pub fn dim(&self, k: i64) -> usize {
        self.blocks(k).iter().map(|b| b.rows * b.cols).sum()
    }

    pub fn to_vec(&self, f: &GradedMap) -> Vec<Scalar> {
        let k = f.shift();
        let mut v = vec![Scalar::zero(); self.dim(k)];
        for b in self.blocks(k) {
            if let Some(m) = f.components().get(&b.n) {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        v[b.offset + r * b.cols + c] = m[(r, c)].clone();
                    }
                }
            }
        }
        v
    }

    pub fn from_vec(&self, k: i64, v: &[Scalar]) -> GradedMap {
        let mut f = GradedMap::zero(self.src.clone(), self.tgt.clone(), k);
        for b in self.blocks(k) {
            let mut m = Matrix::zeros(self.ring(), b.rows, b.cols);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r, c)] = v[b.offset + r * b.cols + c].clone();
                }
            }
            f.set_component(b.n, m).unwrap();
        }
        f
    }

    fn unit(&self, k: i64, i: usize) -> GradedMap {
        let mut v = vec![Scalar::zero(); self.dim(k)];
        v[i] = Scalar::one();
        self.from_vec(k, &v)
    }

    /// Matrix of D: Hom_k -> Hom_{k-1}.
    pub fn differential(&self, k: i64) -> Matrix {
        self.linear_map(k, self.dim(k - 1), |f| self.to_vec(&f.hom_differential()))
    }

    /// Matrix of an arbitrary linear operation on Hom_k given as a closure.
    pub fn linear_map(&self, k: i64, out_dim: usize, op: impl Fn(&GradedMap) -> Vec<Scalar>) -> Matrix {
        let n = self.dim(k);
        let mut m = Matrix::zeros(self.ring(), out_dim, n);
        for j in 0..n {
            let col = op(&self.unit(k, j));
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// H_k(Hom(A, B)) = [Σ^k A, B].
    pub fn homology(&self, k: i64) -> HomologyGroup {
        HomologyGroup::new(&self.differential(k), &self.differential(k + 1))
    }

    /// A basis of the cycles in Hom_k (chain maps of degree k up to sign).
    pub fn cycles(&self, k: i64) -> Vec<GradedMap> {
        let d = self.differential(k);
        let z = kernel(&d);
        (0..z.cols()).map(|j| self.from_vec(k, &z.col(j))).collect()
    }
}

/// Find H with D(H) = g.
pub fn solve_nullhomotopy(g: &GradedMap) -> Result<Option<GradedHomotopy>> {
    if !g.hom_differential().is_zero() {
        return Err(Error::NotACycle("the map to be nullhomotoped is not a chain map".into()));
    }
    let hom = HomComplex::new(g.source().clone(), g.target().clone());
    let k = g.shift() + 1;
    let d = hom.differential(k);
    let rhs = Matrix::column(hom.ring(), hom.to_vec(g));
    Ok(solve(&d, &rhs).map(|x| GradedHomotopy { homotopy: hom.from_vec(k, &x.col(0)), bounds: g.clone() }))
}

/// [Σ^k A, B] as a presented group.
pub fn homotopy_classes(a: &FreeChainComplex, b: &FreeChainComplex, k: i64) -> HomologyGroup {
    HomComplex::new(Arc::new(a.clone()), Arc::new(b.clone())).homology(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn moore(n: i64) -> FreeChainComplex {
        let z = Ring::Integers;
        let mut m = FreeChainComplex::with_ranks(z, &[(n, 1), (n + 1, 1)]);
        m.set_boundary(n + 1, Matrix::from_i64(z, 1, 1, &[2])).unwrap();
        m
    }

    #[test]
    fn nullhomotopy_of_twice_inclusion() {
        let z = Ring::Integers;
        let s = Arc::new(FreeChainComplex::sphere(z, 1, 3));
        let m = Arc::new(moore(3));
        let mut mats = BTreeMap::new();
        mats.insert(3, Matrix::from_i64(z, 1, 1, &[2]));
        let g = GradedMap::new(s, m, 0, mats).unwrap();
        let h = solve_nullhomotopy(&g).unwrap().unwrap();
        assert!(h.verify());
        assert_eq!(h.homotopy.component(3), Matrix::from_i64(z, 1, 1, &[1]));
    }

    #[test]
    fn identity_of_sphere_is_essential() {
        let s = FreeChainComplex::sphere(Ring::Integers, 1, 2);
        assert!(solve_nullhomotopy(&GradedMap::identity(&s)).unwrap().is_none());
        let zero = GradedMap::zero(Arc::new(s.clone()), Arc::new(s), 0);
        let h = solve_nullhomotopy(&zero).unwrap().unwrap();
        assert!(h.homotopy.is_zero());
    }

    #[test]
    fn homotopy_class_groups() {
        let z = Ring::Integers;
        let a = FreeChainComplex::sphere(z, 1, 3);
        let b = FreeChainComplex::sphere(z, 1, 4);
        assert_eq!(homotopy_classes(&a, &b, 1).describe(), "Z");
        let m = moore(3);
        assert_eq!(homotopy_classes(&m, &m, 0).describe(), "Z/2");
        let d = FreeChainComplex::disk(z, 1, 5);
        assert!(homotopy_classes(&a, &d, 1).is_trivial());
    }
}
