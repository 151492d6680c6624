//! The 2-truncated simplicial resolution W → A of the rational pair, its
//! verification, and the degree-by-degree search for an augmentation into a
//! chosen target DGL.
//!
//! Generator names: `ua ub uc ue` (the basis in dimension 0), `xb yb zb` with
//! partners `xbb ybb zbb` (the cone on the dimension-1 basis), `wh` with
//! partner `hwh` (the cone on the suspended dimension-2 basis); `ux uy uz`,
//! `wb` with partner `wbb` in dimension 1; `uw` in dimension 2.

use super::rational::{build_rational_pair, massey_f};
use crate::error::{Error, Result};
use crate::lie::{DGLMorphism, FreeDGL, LieElement, LieExpr};
use crate::linalg::solve;
use crate::matrix::Matrix;
use crate::ring::{fmt_scalar, Ring, Scalar};
use crate::simplicial::object::AcyclicityReport;
use crate::simplicial::{DglBlock, DglCell, SimplicialDGL, SimplicialDglReport};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

fn g(n: &str) -> LieExpr {
    LieExpr::gen(n)
}

fn br(x: &str, y: &str) -> LieExpr {
    LieExpr::bracket(g(x), g(y))
}

fn zero() -> LieExpr {
    LieExpr::zero()
}

/// The cells of W in simplicial dimensions 0, 1, 2, transcribed as printed.
/// The one reading choice: the correction terms of d_0(uw) are taken as s_0
/// applied to [ua, xb] = [ua, d_1 ux] (and cyclically), the only typing under
/// which they lie in W_1; d_2(uw) is not printed and is taken to be 0.
pub fn resolution_blocks(m: i64) -> Vec<DglBlock> {
    let cell = DglCell::new;
    vec![
        DglBlock {
            name: "W0bar".into(),
            dim: 0,
            cells: vec![cell("ua", m), cell("ub", m), cell("uc", m), cell("ue", 3 * m + 1)],
        },
        DglBlock {
            name: "CW1bar".into(),
            dim: 0,
            cells: vec![
                cell("xb", 2 * m),
                cell("yb", 2 * m),
                cell("zb", 2 * m),
                cell("xbb", 2 * m + 1).with_differential(g("xb")),
                cell("ybb", 2 * m + 1).with_differential(g("yb")),
                cell("zbb", 2 * m + 1).with_differential(g("zb")),
            ],
        },
        DglBlock {
            name: "CSW2bar".into(),
            dim: 0,
            cells: vec![cell("wh", 3 * m + 1), cell("hwh", 3 * m + 2).with_differential(g("wh"))],
        },
        DglBlock {
            name: "W1bar".into(),
            dim: 1,
            cells: vec![
                cell("ux", 2 * m).with_faces(vec![br("ub", "uc"), g("xb")]),
                cell("uy", 2 * m).with_faces(vec![br("uc", "ua"), g("yb")]),
                cell("uz", 2 * m).with_faces(vec![br("ua", "ub"), g("zb")]),
            ],
        },
        DglBlock {
            name: "CW2bar".into(),
            dim: 1,
            cells: vec![
                cell("wb", 3 * m).with_faces(vec![
                    br("ua", "xb").plus(br("ub", "yb")).plus(br("uc", "zb")).neg(),
                    zero(),
                ]),
                cell("wbb", 3 * m + 1).with_differential(g("wb")).with_faces(vec![
                    br("ua", "xbb").plus(br("ub", "ybb")).plus(br("uc", "zbb")).neg(),
                    g("wh"),
                ]),
            ],
        },
        DglBlock {
            name: "W2bar".into(),
            dim: 2,
            cells: vec![cell("uw", 3 * m).with_faces(vec![
                br("s0_ua", "ux")
                    .plus(br("s0_ub", "uy"))
                    .plus(br("s0_uc", "uz"))
                    .minus(br("s0_ua", "s0_xb"))
                    .minus(br("s0_ub", "s0_yb"))
                    .minus(br("s0_uc", "s0_zb")),
                g("wb"),
                zero(),
            ])],
        },
    ]
}

#[derive(Debug, Clone)]
pub struct ResolutionFixture {
    pub m: i64,
    pub w: SimplicialDGL,
    pub a: Arc<FreeDGL>,
    pub b: Arc<FreeDGL>,
}

pub fn build_resolution_fixture(m: i64) -> Result<ResolutionFixture> {
    let pair = build_rational_pair(m)?;
    let w = SimplicialDGL::from_blocks("W", &resolution_blocks(m), 2, 4 * m)?;
    Ok(ResolutionFixture { m, w, a: pair.a, b: pair.b })
}

/// The augmentation W_0 → A exactly as printed.
pub fn printed_augmentation() -> Vec<(&'static str, LieExpr)> {
    vec![
        ("ua", g("a")),
        ("ub", g("b")),
        ("uc", g("c")),
        ("ue", g("e")),
        ("xb", br("b", "c")),
        ("yb", br("c", "a")),
        ("zb", br("a", "b")),
        ("xbb", g("x")),
        ("ybb", g("y")),
        ("zbb", g("z")),
        ("wh", massey_f()),
        ("hwh", g("w").neg()),
    ]
}

/// Images of the dimension-0 basis, which realize the chosen isomorphism on
/// homology. In B the class of e is represented by f.
pub fn base_images(target_has_e: bool) -> Vec<(&'static str, LieExpr)> {
    let e = if target_has_e { g("e") } else { massey_f() };
    vec![("ua", g("a")), ("ub", g("b")), ("uc", g("c")), ("ue", e)]
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentationObstruction {
    pub generator: String,
    pub degree: i64,
    /// The element the image of the generator would have to bound, or the
    /// compatibility defect when the failure is a face condition.
    pub residual: String,
    pub residual_is_cycle: bool,
    /// Coordinates of the residual's homology class, when it is a cycle.
    pub class: Vec<String>,
    pub class_nonzero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentationReport {
    pub target: String,
    pub success: bool,
    pub images: BTreeMap<String, String>,
    pub obstruction: Option<AugmentationObstruction>,
    #[serde(skip)]
    pub morphism: Option<DGLMorphism>,
}

/// Solve for ε: W_0 → target with ε fixed on `base`, ε a DGL morphism and
/// ε∘d_0 = ε∘d_1 on W_1. Generators are handled in increasing degree; within
/// a degree, constraints are added one generator at a time so that a failure
/// names the first generator with nowhere to go.
pub fn attempt_augmentation(
    w: &SimplicialDGL,
    target: &Arc<FreeDGL>,
    base: &[(&str, LieExpr)],
) -> Result<AugmentationReport> {
    let x0 = w.level(0).clone();
    let x1 = w.level(1).clone();
    let mut images: BTreeMap<String, LieExpr> = BTreeMap::new();
    for (n, e) in base {
        x0.generator_index(n)?;
        images.insert(n.to_string(), e.clone());
    }
    let mut degrees: Vec<i64> = x0.degrees().to_vec();
    degrees.sort();
    degrees.dedup();
    let defects: Vec<LieElement> = x1
        .generators()
        .iter()
        .map(|u| {
            let x = x1.generator(&u.name).unwrap();
            w.face(1, 0).apply(&x).minus(&w.face(1, 1).apply(&x))
        })
        .collect();
    for &deg in &degrees {
        let unknown: Vec<usize> = x0
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, gen)| gen.degree == deg && !images.contains_key(&gen.name))
            .map(|(i, _)| i)
            .collect();
        if unknown.is_empty() {
            continue;
        }
        if deg > target.truncation() {
            for &i in &unknown {
                images.insert(x0.generators()[i].name.clone(), zero());
            }
            continue;
        }
        let partial = morphism(&x0, target, &images)?;
        let piece = target.piece(deg);
        let dim = piece.dim();
        let dmat = target.differential_matrix(deg);
        // face conditions in this degree: linear part on the unknowns, and the
        // value with unknowns set to zero
        let mut faces = Vec::new();
        for (u, e) in x1.generators().iter().zip(&defects) {
            if u.degree != deg {
                continue;
            }
            let coeffs: Vec<Scalar> = unknown.iter().map(|&i| e.tensor.coeff(&[i as u32])).collect();
            let rest = partial.apply(e);
            faces.push((u.name.clone(), coeffs, rest));
        }
        let mut solution = None;
        for k in 0..=unknown.len() {
            let vars = k * dim;
            let mut lhs = Matrix::zeros(Ring::Rationals, 0, vars);
            let mut rhs: Vec<Scalar> = Vec::new();
            let mut last_d_rhs = None;
            for (slot, &i) in unknown[..k].iter().enumerate() {
                let gen = &x0.generators()[i];
                let dg = partial.apply(&x0.differential(&x0.generator(&gen.name)?));
                let mut block = Matrix::zeros(Ring::Rationals, dmat.rows(), vars);
                block.paste(0, slot * dim, &dmat);
                lhs = lhs.vstack(&block);
                let c = if dmat.rows() == 0 { Vec::new() } else { target.coords(&dg)? };
                if dmat.rows() == 0 && !dg.is_zero() {
                    return Err(Error::Precondition(format!("image of d({}) is nonzero below degree 1", gen.name)));
                }
                rhs.extend(c);
                last_d_rhs = Some(dg);
            }
            let mut last_face = None;
            for (name, coeffs, rest) in &faces {
                let involved = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, _)| j).max();
                if involved.map_or(k != 0, |j| j >= k) {
                    continue;
                }
                let mut block = Matrix::zeros(Ring::Rationals, dim, vars);
                for (slot, c) in coeffs[..k].iter().enumerate() {
                    for r in 0..dim {
                        block[(r, slot * dim + r)] = c.clone();
                    }
                }
                lhs = lhs.vstack(&block);
                rhs.extend(target.coords(&rest.scale(&Scalar::from_integer((-1).into())))?);
                if involved.is_none_or(|j| j + 1 == k) {
                    last_face = Some((name.clone(), rest.clone()));
                }
            }
            match solve(&lhs, &Matrix::column(Ring::Rationals, rhs)) {
                Some(x) => solution = Some(x),
                None => {
                    let (generator, residual) = if k == 0 {
                        let (n, r) = last_face.expect("a failing system has a constraint");
                        (n, r)
                    } else {
                        (x0.generators()[unknown[k - 1]].name.clone(), last_d_rhs.unwrap())
                    };
                    let obstruction = describe_obstruction(target, generator, deg, &residual)?;
                    return Ok(AugmentationReport {
                        target: target.name().to_string(),
                        success: false,
                        images: render(&images),
                        obstruction: Some(obstruction),
                        morphism: None,
                    });
                }
            }
        }
        let x = solution.expect("the full system was solved");
        let col = x.col(0);
        for (slot, &i) in unknown.iter().enumerate() {
            let e = piece.combine_expr(&col[slot * dim..(slot + 1) * dim]);
            images.insert(x0.generators()[i].name.clone(), e);
        }
    }
    let eps = morphism(&x0, target, &images)?;
    let check = w.clone().with_augmentation(eps.clone())?.check();
    if !check.passed {
        return Err(Error::Precondition(format!("solved augmentation fails its own checks: {:?}", check)));
    }
    Ok(AugmentationReport {
        target: target.name().to_string(),
        success: true,
        images: render(&images),
        obstruction: None,
        morphism: Some(eps),
    })
}

fn morphism(x0: &Arc<FreeDGL>, target: &Arc<FreeDGL>, images: &BTreeMap<String, LieExpr>) -> Result<DGLMorphism> {
    let v: Vec<(&str, LieExpr)> = images.iter().map(|(k, e)| (k.as_str(), e.clone())).collect();
    DGLMorphism::new(x0.clone(), target.clone(), &v)
}

fn render(images: &BTreeMap<String, LieExpr>) -> BTreeMap<String, String> {
    images.iter().map(|(k, e)| (k.clone(), e.to_string())).collect()
}

fn describe_obstruction(target: &FreeDGL, generator: String, degree: i64, r: &LieElement) -> Result<AugmentationObstruction> {
    let is_cycle = target.differential(r).is_zero();
    let class: Vec<Scalar> = if is_cycle { target.homology_class(r)? } else { Vec::new() };
    Ok(AugmentationObstruction {
        generator,
        degree,
        residual: target.to_expr(r).to_string(),
        residual_is_cycle: is_cycle,
        class_nonzero: class.iter().any(|c| !c.is_zero()),
        class: class.iter().map(fmt_scalar).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeSweep {
    pub degree: i64,
    pub identities: bool,
    /// Moore homology dimensions of the linearized levels, dimensions -1..=2.
    pub module_moore_homology: Vec<usize>,
    /// The same for the levelwise internal homology.
    pub homotopy_moore_homology: Vec<usize>,
    pub module_acyclic: bool,
    pub homotopy_acyclic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub m: i64,
    pub structure: SimplicialDglReport,
    /// The printed augmentation attached to W; sign problems show up here.
    pub printed_augmentation: SimplicialDglReport,
    pub solved_augmentation: AugmentationReport,
    pub sweep: Vec<DegreeSweep>,
    pub acyclic_through_dimension_2: bool,
}

pub fn verify_resolution_fixture(m: i64) -> Result<ResolutionReport> {
    let fx = build_resolution_fixture(m)?;
    let structure = fx.w.check();
    let printed = DGLMorphism::new(fx.w.level(0).clone(), fx.a.clone(), &printed_augmentation())?;
    let printed_augmentation = fx.w.clone().with_augmentation(printed)?.check();
    let solved = attempt_augmentation(&fx.w, &fx.a, &base_images(true))?;
    let mut sweep = Vec::new();
    if let Some(eps) = &solved.morphism {
        let aug = fx.w.clone().with_augmentation(eps.clone())?;
        for t in 1..=4 * m {
            let lin = aug.linearize(t - 1, t + 1)?;
            let module = aug.per_degree_linearize(t)?;
            let pi = lin.homology_level(t)?;
            let dims = |o: &crate::simplicial::SimplicialObject| -> Vec<usize> {
                let slice = o.moore_slice(if o.internal_degrees().contains(&0) { 0 } else { t });
                (-1..=2).map(|n| slice.homology(n).coordinate_count()).collect()
            };
            let acyc: AcyclicityReport = pi.acyclicity_check(2);
            sweep.push(DegreeSweep {
                degree: t,
                identities: lin.check_identities().passed,
                module_moore_homology: dims(&module),
                homotopy_moore_homology: dims(&pi),
                module_acyclic: module.acyclicity_check(2).passed,
                homotopy_acyclic: acyc.passed,
            });
        }
    }
    let acyclic = !sweep.is_empty() && sweep.iter().all(|s| s.homotopy_acyclic && s.module_acyclic);
    Ok(ResolutionReport {
        m,
        structure,
        printed_augmentation,
        solved_augmentation: solved,
        sweep,
        acyclic_through_dimension_2: acyclic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::fmt_scalar;

    #[test]
    fn fixture_faces_are_morphisms_and_satisfy_identities() {
        let fx = build_resolution_fixture(2).unwrap();
        let r = fx.w.check();
        assert!(r.passed, "{r:?}");
        // d_1(wb) = d_1(d wbb) = d(wh) = 0
        let wb = fx.w.level(1).generator("wb").unwrap();
        assert!(fx.w.face(1, 1).apply(&wb).is_zero());
    }

    #[test]
    fn printed_augmentation_has_one_sign_defect() {
        let r = verify_resolution_fixture(2).unwrap();
        let p = &r.printed_augmentation;
        let gens: Vec<&str> = p.identity_failures.iter().map(|f| f.generator.as_str()).collect();
        assert_eq!(gens, ["wbb"]);
        let faces: Vec<&str> = p.face_failures.iter().map(|f| f.failure.generator.as_str()).collect();
        assert_eq!(faces, ["hwh"]);
        assert!(r.acyclic_through_dimension_2);
        assert!(r.sweep.iter().all(|s| s.identities));
    }

    #[test]
    fn augments_to_a() {
        let fx = build_resolution_fixture(2).unwrap();
        let r = attempt_augmentation(&fx.w, &fx.a, &base_images(true)).unwrap();
        assert!(r.success);
        assert_eq!(r.images["hwh"], "-w");
        let eps = r.morphism.unwrap();
        let wh = eps.apply(&fx.w.level(0).generator("wh").unwrap());
        assert_eq!(wh.tensor, fx.a.expand(&massey_f()).unwrap().tensor.scale(&Scalar::from_integer((-1).into())));
    }

    #[test]
    fn obstructed_in_b_by_the_triple_product() {
        let fx = build_resolution_fixture(2).unwrap();
        let r = attempt_augmentation(&fx.w, &fx.b, &base_images(false)).unwrap();
        assert!(!r.success);
        let o = r.obstruction.unwrap();
        assert_eq!((o.generator.as_str(), o.degree), ("hwh", 8));
        assert!(o.residual_is_cycle && o.class_nonzero);
        let b = &fx.b;
        let e = |n: &str| b.generator(n).unwrap();
        let mp = b.lie_massey(&e("a"), &e("b"), &e("c"), &e("x"), &e("y"), &e("z")).unwrap();
        let mc: Vec<String> = mp.class.iter().map(fmt_scalar).collect();
        let neg: Vec<String> = mp.class.iter().map(|c| fmt_scalar(&-c.clone())).collect();
        assert!(o.class == mc || o.class == neg, "{:?} vs {:?}", o.class, mc);
        // leaving e unconstrained does not help
        let r0 = attempt_augmentation(&fx.w, &fx.b, &base_images(true)[..3]).unwrap();
        assert_eq!(r0.obstruction.unwrap().generator, "hwh");
    }

    #[test]
    fn removing_w_from_a_obstructs() {
        let fx = build_resolution_fixture(2).unwrap();
        let gens: Vec<_> = fx.a.generators().iter().filter(|g| g.name != "w").cloned().collect();
        let mut a = FreeDGL::new("A-w", gens, 8).unwrap();
        for n in ["x", "y", "z"] {
            a.set_differential(n, fx.a.declared_differential(n).unwrap().clone()).unwrap();
        }
        let r = attempt_augmentation(&fx.w, &Arc::new(a), &base_images(true)).unwrap();
        assert_eq!(r.obstruction.unwrap().generator, "hwh");
    }
}
