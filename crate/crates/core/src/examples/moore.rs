//! The mod-2 Moore space bracket ⟨∇, inc, 2⟩ over ℤ and the filtration index
//! it certifies.
//!
//! S^n --2--> S^n --inc--> M = S^n ∪₂ e^{n+1} --∇--> S^{n+1}

use crate::chaincx::group::BracketCoset;
use crate::chaincx::{toda_coset, FreeChainComplex, GradedMap, HomComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct MooreBracketFixture {
    pub n: i64,
    pub sphere: Arc<FreeChainComplex>,
    pub top: Arc<FreeChainComplex>,
    pub moore: Arc<FreeChainComplex>,
    /// ∇: M -> S^{n+1}
    pub pinch: GradedMap,
    /// inc: S^n -> M
    pub inc: GradedMap,
    /// multiplication by `degree` on S^n
    pub mult: GradedMap,
}

fn single(src: &Arc<FreeChainComplex>, tgt: &Arc<FreeChainComplex>, t: i64, v: i64) -> GradedMap {
    let mut mats = BTreeMap::new();
    mats.insert(t, Matrix::from_i64(Ring::Integers, 1, 1, &[v]));
    GradedMap::new(src.clone(), tgt.clone(), 0, mats).unwrap()
}

/// The fixture with the self-map of S^n of the given degree (2 for the
/// actual bracket).
pub fn moore_fixture(n: i64, degree: i64) -> MooreBracketFixture {
    let z = Ring::Integers;
    let sphere = Arc::new(FreeChainComplex::sphere(z, 1, n));
    let top = Arc::new(FreeChainComplex::sphere(z, 1, n + 1));
    let mut m = FreeChainComplex::with_ranks(z, &[(n, 1), (n + 1, 1)]);
    m.set_labels(n, vec!["s".into()]).unwrap();
    m.set_labels(n + 1, vec!["e".into()]).unwrap();
    m.set_boundary(n + 1, Matrix::from_i64(z, 1, 1, &[2])).unwrap();
    let moore = Arc::new(m);
    MooreBracketFixture {
        n,
        pinch: single(&moore, &top, n + 1, 1),
        inc: single(&sphere, &moore, n, 1),
        mult: single(&sphere, &sphere, n, degree),
        sphere,
        top,
        moore,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MooreBracketReport {
    pub n: i64,
    pub degree: i64,
    pub coset: BracketCoset,
    pub nonvanishing: bool,
}

fn check_n(n: i64) -> Result<()> {
    if n < 3 {
        return Err(Error::Precondition(format!("the Moore space bracket is taken in the stable range n >= 3, got {n}")));
    }
    Ok(())
}

/// ⟨∇, inc, 2⟩ ⊂ [ΣS^n, S^{n+1}] = ℤ.
pub fn moore_space_bracket(n: i64) -> Result<MooreBracketReport> {
    moore_bracket_with(n, 2)
}

/// ⟨∇, inc, k⟩ for an arbitrary degree k of the self-map; k = 0 gives a
/// bracket containing zero.
pub fn moore_bracket_with(n: i64, degree: i64) -> Result<MooreBracketReport> {
    check_n(n)?;
    let fx = moore_fixture(n, degree);
    let r = toda_coset(&fx.pinch, &fx.inc, &fx.mult)?;
    let coset = r.coset.view();
    Ok(MooreBracketReport { n, degree, nonvanishing: !coset.contains_zero, coset })
}

/// Every k in `range` for which H = k·e (from the generator of S^n to the
/// top cell) is a nullhomotopy of inc∘(degree).
pub fn nullhomotopy_search(n: i64, degree: i64, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    let fx = moore_fixture(n, degree);
    let target = fx.inc.compose(&fx.mult);
    let hom = HomComplex::new(fx.sphere.clone(), fx.moore.clone());
    range
        .filter(|&k| {
            let mut mats = BTreeMap::new();
            mats.insert(n, Matrix::from_i64(Ring::Integers, 1, 1, &[k]));
            let h = GradedMap::new(fx.sphere.clone(), fx.moore.clone(), 1, mats).unwrap();
            debug_assert_eq!(hom.dim(1), 1);
            h.hom_differential() == target
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub n: i64,
    /// 1 when the first-order obstruction is certified nonzero; `None` when
    /// the chain-level model cannot decide.
    pub index: Option<u32>,
    pub bracket: MooreBracketReport,
    pub note: String,
}

/// The filtration index of γ = Sq¹∘p, read off from the nonvanishing of
/// ⟨∇, inc, 2⟩. The spectral sequence itself is not computed.
pub fn filtration_example(n: i64) -> Result<FiltrationReport> {
    filtration_from(moore_space_bracket(n)?)
}

pub fn filtration_from(bracket: MooreBracketReport) -> Result<FiltrationReport> {
    let index = bracket.nonvanishing.then_some(1);
    let note = if bracket.nonvanishing {
        "first-order obstruction <g, inc, 2> is nonzero in the chain-level model; index 1. \
         The spectral-sequence computation is out of scope."
    } else {
        "bracket contains zero; the chain-level model does not determine the index. \
         The spectral-sequence computation is out of scope."
    };
    Ok(FiltrationReport { n: bracket.n, index, bracket, note: note.into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_is_odd_integers() {
        let r = moore_space_bracket(3).unwrap();
        assert_eq!(r.coset.group, "Z");
        assert_eq!(r.coset.representative, "1");
        assert_eq!(r.coset.indeterminacy, vec!["2"]);
        assert!(r.nonvanishing);
        for n in [4, 5] {
            let s = moore_space_bracket(n).unwrap();
            assert_eq!((s.coset.representative.as_str(), s.coset.indeterminacy.clone()), ("1", vec!["2".to_string()]));
        }
        assert!(moore_space_bracket(2).is_err());
    }

    #[test]
    fn zero_self_map_gives_vanishing_bracket() {
        let r = moore_bracket_with(3, 0).unwrap();
        assert!(r.coset.contains_zero);
        let f = filtration_from(r).unwrap();
        assert_eq!(f.index, None);
    }

    #[test]
    fn nullhomotopy_is_unique() {
        assert_eq!(nullhomotopy_search(3, 2, -20..=20), vec![1]);
    }

    #[test]
    fn filtration_index_one() {
        let f = filtration_example(3).unwrap();
        assert_eq!(f.index, Some(1));
        assert_eq!(f.bracket.coset, moore_space_bracket(3).unwrap().coset);
    }
}
