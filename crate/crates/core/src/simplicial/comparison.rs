//! Algebraic comparison data between two augmented objects over the same
//! base: φ: V → W split by ρ: W → V.

use super::object::{SimplicialMap, SimplicialObject};
use crate::chaincx::GradedMap;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub passed: bool,
    pub phi_simplicial: bool,
    pub rho_simplicial: bool,
    pub rho_phi_identity: bool,
    /// φ is the identity on the augmentation level, so ε'∘φ_0 = ε.
    pub augmentation_compatible: bool,
    /// Every φ_n sends basis elements to distinct basis elements.
    pub summand_inclusions: bool,
    pub failures: Vec<String>,
}

fn is_identity(m: &GradedMap) -> bool {
    if **m.source() != **m.target() || m.shift() != 0 {
        return false;
    }
    m.source().degrees().iter().all(|&t| m.component(t) == crate::matrix::Matrix::identity(m.ring(), m.source().rank(t)))
}

fn is_coordinate_inclusion(m: &GradedMap) -> bool {
    m.source().degrees().iter().all(|&t| {
        let c = m.component(t);
        let mut seen = vec![false; c.rows()];
        (0..c.cols()).all(|j| {
            let nz: Vec<usize> = (0..c.rows()).filter(|&i| !c[(i, j)].is_zero()).collect();
            if nz.len() != 1 || !c[(nz[0], j)].is_one() || seen[nz[0]] {
                return false;
            }
            seen[nz[0]] = true;
            true
        })
    })
}

pub fn check_algebraic_comparison(phi: &SimplicialMap, rho: &SimplicialMap) -> ComparisonReport {
    let mut failures = Vec::new();
    let phi_ok = phi.check();
    let rho_ok = rho.check();
    if !phi_ok {
        failures.push("φ does not commute with the faces".into());
    }
    if !rho_ok {
        failures.push("ρ does not commute with the faces".into());
    }
    let same_frame = *rho.source == *phi.target && *rho.target == *phi.source;
    let mut rho_phi = same_frame;
    if !same_frame {
        failures.push("ρ does not run back from the target of φ".into());
    } else {
        for n in -1..=phi.source.top() {
            if !is_identity(&rho.at(n).compose(phi.at(n))) {
                rho_phi = false;
                failures.push(format!("ρ∘φ is not the identity in dimension {n}"));
            }
        }
    }
    let aug = is_identity(phi.at(-1));
    if !aug {
        failures.push("φ is not the identity on the augmentation level".into());
    }
    let mut incl = true;
    for n in 0..=phi.source.top() {
        if !is_coordinate_inclusion(phi.at(n)) {
            incl = false;
            failures.push(format!("φ is not a summand inclusion in dimension {n}"));
        }
    }
    ComparisonReport {
        passed: failures.is_empty(),
        phi_simplicial: phi_ok,
        rho_simplicial: rho_ok,
        rho_phi_identity: rho_phi,
        augmentation_compatible: aug,
        summand_inclusions: incl,
        failures,
    }
}

/// The identity comparison of an object with itself.
pub fn identity_comparison(x: &SimplicialObject) -> (SimplicialMap, SimplicialMap) {
    let x = std::sync::Arc::new(x.clone());
    (SimplicialMap::identity(&x), SimplicialMap::identity(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::FreeChainComplex;
    use crate::matrix::Matrix;
    use crate::ring::{Ring, Scalar};
    use crate::simplicial::e_functor;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn augmented() -> FreeChainComplex {
        let q = Ring::Rationals;
        let mut a = FreeChainComplex::with_ranks(q, &[(-1, 1), (0, 2), (1, 1)]);
        a.set_boundary(0, Matrix::from_i64(q, 1, 2, &[1, 1])).unwrap();
        a.set_boundary(1, Matrix::from_i64(q, 2, 1, &[1, -1])).unwrap();
        a
    }

    /// V = E(A) and W = E(A ⊕ D) with D a disk in degrees 0, 1.
    fn split_pair(scale_rho: i64) -> (SimplicialMap, SimplicialMap) {
        let q = Ring::Rationals;
        let a = augmented();
        let d = FreeChainComplex::disk(q, 1, 1);
        let v = Arc::new(e_functor(&a).unwrap());
        let w = Arc::new(e_functor(&a.direct_sum(&d)).unwrap());
        let mut phi = Vec::new();
        let mut rho = Vec::new();
        for n in -1..=v.top() {
            let (vs, ws) = (v.level(n), w.level(n));
            let (r, c) = (ws.rank(0), vs.rank(0));
            let mut i = Matrix::zeros(q, r, c);
            i.paste(0, 0, &Matrix::identity(q, c));
            let p = i.transpose().scale(&Scalar::from_integer(scale_rho.into()));
            let m = |x: Matrix| if x.rows() > 0 && x.cols() > 0 { BTreeMap::from([(0, x)]) } else { BTreeMap::new() };
            phi.push(GradedMap::new(vs.clone(), ws.clone(), 0, m(i)).unwrap());
            rho.push(GradedMap::new(ws.clone(), vs.clone(), 0, m(p)).unwrap());
        }
        (
            SimplicialMap { source: v.clone(), target: w.clone(), maps: phi },
            SimplicialMap { source: w, target: v, maps: rho },
        )
    }

    #[test]
    fn identity_passes() {
        let x = e_functor(&augmented()).unwrap();
        let (p, r) = identity_comparison(&x);
        assert!(check_algebraic_comparison(&p, &r).passed);
    }

    #[test]
    fn inclusion_into_acyclic_summand_passes() {
        let (p, r) = split_pair(1);
        let rep = check_algebraic_comparison(&p, &r);
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn wrong_retraction_fails() {
        let (p, r) = split_pair(2);
        let rep = check_algebraic_comparison(&p, &r);
        assert!(!rep.passed && !rep.rho_phi_identity && rep.rho_simplicial);
    }
}
