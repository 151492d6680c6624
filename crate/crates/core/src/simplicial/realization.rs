//! Linear model of the realization descent: given a truncated object X and an
//! attaching map α: B̄ -> C_{n-1}X, build a chain map F from the standard
//! replacement D★ into the Moore complex of X, correcting earlier homotopies
//! when a stage obstruction can be killed, then glue D★ onto X by cones.

use super::cellular::CellularObject;
use super::object::{MooreData, SimplicialObject};
use crate::chaincx::sub::factor_through;
use crate::chaincx::{standard_replacement, FreeChainComplex, GradedMap, HomComplex, StandardReplacement};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::matrix::Matrix;
use crate::ring::Scalar;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize)]
pub struct DescentStage {
    /// The stage builds the nullhomotopy u_k into C_k.
    pub k: i64,
    pub group: String,
    pub obstruction: String,
    pub indeterminacy: Vec<String>,
    pub contains_zero: bool,
    /// Whether the earlier homotopy u_{k+1} had to be changed.
    pub corrected: bool,
}

#[derive(Debug, Clone)]
pub struct Descent {
    pub n: i64,
    pub replacement: StandardReplacement,
    pub stages: Vec<DescentStage>,
    /// First stage whose obstruction coset misses 0.
    pub obstruction: Option<i64>,
    /// maps[k + 1] = F_k: D_k -> C_k X, when the descent completes.
    pub maps: Option<Vec<GradedMap>>,
    /// a_{k-1}: K_{k-1} -> C_{k-1} X, keyed by k-1.
    pub obstructions: BTreeMap<i64, GradedMap>,
    pub chain_map_holds: bool,
    pub stage_relation_holds: bool,
}

impl Descent {
    pub fn succeeded(&self) -> bool {
        self.obstruction.is_none() && self.maps.is_some()
    }

    pub fn map(&self, k: i64) -> Option<&GradedMap> {
        self.maps.as_ref().map(|m| &m[(k + 1) as usize])
    }
}

/// Reinterpret a shift-1 map out of K as a shift-0 map out of ΣK = `sk`.
fn desuspend(m: &GradedMap, sk: &Arc<FreeChainComplex>) -> GradedMap {
    m.desuspend_source().reframe(sk.clone(), m.target().clone(), 0).unwrap()
}

/// The map CK -> Y with components φ on K and u on the shifted copy.
fn cone_map(ck: &Arc<FreeChainComplex>, k: &FreeChainComplex, phi: &GradedMap, u: &GradedMap) -> GradedMap {
    let ring = phi.ring();
    let y = phi.target();
    let mut mats = BTreeMap::new();
    for t in ck.degrees() {
        let mut m = Matrix::zeros(ring, y.rank(t), ck.rank(t));
        m.paste(0, 0, &phi.component(t));
        if k.rank(t - 1) > 0 {
            m.paste(0, k.rank(t), &u.component(t - 1));
        }
        mats.insert(t, m);
    }
    GradedMap::new(ck.clone(), y.clone(), 0, mats).unwrap()
}

/// Run the descent for α: B̄ -> C_{n-1}X (a chain map into Moore chains).
pub fn realize_attaching(x: &SimplicialObject, moore: &MooreData, bbar: &FreeChainComplex, alpha: &GradedMap, n: i64) -> Result<Descent> {
    if n < 1 {
        return Err(Error::Precondition("descent needs n >= 1".into()));
    }
    if x.top() < n - 1 {
        return Err(Error::Precondition(format!("the object must reach dimension {}", n - 1)));
    }
    if **alpha.source() != *bbar || **alpha.target() != **moore.chain(n - 1) || !alpha.is_chain_map() {
        return Err(Error::Precondition("α must be a chain map from B̄ into the Moore chains C_{n-1}".into()));
    }
    let rep = standard_replacement(bbar, n)?;
    let base = |k: i64| -> Arc<FreeChainComplex> { Arc::new(bbar.shift_by(n - k - 2)) };
    let mut us: BTreeMap<i64, GradedMap> = BTreeMap::new();
    let mut phis: BTreeMap<i64, GradedMap> = BTreeMap::new();
    let mut stages = Vec::new();
    let mut obstruction = None;
    phis.insert(n - 2, moore.diff(n - 1).compose(alpha).reframe(base(n - 2), moore.chain(n - 2).clone(), 0)?);
    for k in (-1..=n - 2).rev() {
        let kk = base(k);
        let ck = moore.chain(k).clone();
        let phi = phis[&k].clone();
        let p = HomComplex::new(kk.clone(), ck.clone());
        let correctable = k < n - 2;
        let q = HomComplex::new(base(k + 1), moore.chain(k + 1).clone());
        let l = |eta: &GradedMap| -> Vec<Scalar> { p.to_vec(&desuspend(&moore.diff(k + 1).compose(eta), &kk)) };
        let etas = if correctable { q.cycles(1) } else { Vec::new() };
        let group = p.homology(0);
        let gens: Vec<Vec<Scalar>> = etas.iter().map(&l).collect();
        let coset = group.coset(&p.to_vec(&phi), &gens);
        let view = coset.view();
        let mut stage = DescentStage {
            k,
            group: view.group.clone(),
            obstruction: view.representative.clone(),
            indeterminacy: view.indeterminacy.clone(),
            contains_zero: coset.contains_zero,
            corrected: false,
        };
        if !coset.contains_zero {
            stages.push(stage);
            obstruction = Some(k);
            break;
        }
        // D(u) - L(η) = φ, D(η) = 0
        let dp = p.differential(1);
        let (ny, rows_top) = (dp.cols(), dp.rows());
        let (nz, rows_bot) = if correctable { (q.dim(1), q.dim(0)) } else { (0, 0) };
        let mut a = Matrix::zeros(x.ring(), rows_top + rows_bot, ny + nz);
        a.paste(0, 0, &dp);
        if correctable {
            a.paste(0, ny, &q.linear_map(1, rows_top, |e| l(e)).neg());
            a.paste(rows_top, ny, &q.differential(1));
        }
        let mut rhs = p.to_vec(&phi);
        rhs.extend(std::iter::repeat_n(Scalar::zero(), rows_bot));
        let sol = solve(&a, &Matrix::column(x.ring(), rhs))
            .ok_or_else(|| Error::Precondition("stage coset contains zero but the lift failed".into()))?
            .col(0);
        let u = p.from_vec(1, &sol[..ny]);
        if correctable {
            let eta = q.from_vec(1, &sol[ny..]);
            if !eta.is_zero() {
                stage.corrected = true;
                let old = us[&(k + 1)].clone();
                us.insert(k + 1, old.add(&eta));
                let new_phi = phi.add(&desuspend(&moore.diff(k + 1).compose(&eta), &kk));
                phis.insert(k, new_phi);
            }
        }
        stages.push(stage);
        if k >= 0 {
            phis.insert(k - 1, desuspend(&moore.diff(k).compose(&u), &base(k - 1)));
        }
        us.insert(k, u);
    }
    let mut obstructions = BTreeMap::new();
    for (&k, phi) in &phis {
        if k < n - 2 {
            obstructions.insert(k, phi.clone());
        }
    }
    if obstruction.is_some() {
        return Ok(Descent {
            n,
            replacement: rep,
            stages,
            obstruction,
            maps: None,
            obstructions,
            chain_map_holds: false,
            stage_relation_holds: false,
        });
    }
    let mut maps = Vec::new();
    for k in -1..=n - 2 {
        maps.push(cone_map(rep.level(k), &base(k), &phis[&k], &us[&k]));
    }
    maps.push(alpha.clone());
    let chain_map_holds = maps.iter().all(|f| f.is_chain_map())
        && (0..=n - 1).all(|k| moore.diff(k).compose(&maps[(k + 1) as usize]) == maps[k as usize].compose(rep.boundary(k)));
    // v_{k-1}∘a_{k-1}∘q = ∂̄_k∘F_k with a_{k-1} landing in the cycles.
    let mut stage_relation_holds = true;
    for k in 0..=n - 2 {
        let a = &phis[&(k - 1)];
        let v = moore.cycle_incl(k - 1);
        if factor_through(v, a).is_none() {
            stage_relation_holds = false;
            continue;
        }
        let kk = base(k);
        let q = cone_map(rep.level(k), &kk, &GradedMap::zero(kk.clone(), base(k - 1), 0), &identity_shift(&kk, &base(k - 1)));
        if a.compose(&q) != moore.diff(k).compose(&maps[(k + 1) as usize]) {
            stage_relation_holds = false;
        }
    }
    Ok(Descent { n, replacement: rep, stages, obstruction: None, maps: Some(maps), obstructions, chain_map_holds, stage_relation_holds })
}

/// The identity K -> ΣK viewed as a shift-1 graded map.
fn identity_shift(k: &Arc<FreeChainComplex>, sk: &Arc<FreeChainComplex>) -> GradedMap {
    let mats = k.degrees().into_iter().map(|t| (t, Matrix::identity(k.ring(), k.rank(t)))).collect();
    GradedMap::new(k.clone(), sk.clone(), 1, mats).unwrap()
}

/// Glue the replacement onto X along F: block D_{k-1} in dimension k with
/// d_0 = F_{k-1}, d_1 = ∂^D and all other faces zero. The top block is named
/// `name`; the cone blocks are `name/D{k}`.
pub fn extend_by_cone(x: &CellularObject, descent: &Descent, moore: &MooreData, name: &str) -> Result<CellularObject> {
    let maps = descent.maps.as_ref().ok_or_else(|| Error::Precondition("the descent did not complete".into()))?;
    let n = descent.n;
    let rep = &descent.replacement;
    let mut out = x.clone();
    let block_name = |k: i64| if k == n - 1 { name.to_string() } else { format!("{name}/D{k}") };
    for dim in 0..=n {
        let k = dim - 1;
        let d = rep.level(k);
        let f = moore.incl(k).compose(&maps[(k + 1) as usize]);
        let mut faces = vec![f];
        if dim >= 1 {
            let below = out.block_index(&block_name(k - 1)).unwrap();
            let inj = out.cell_inj(below);
            faces.push(inj.compose(rep.boundary(k)));
            let target = out.level(dim - 1).clone();
            for _ in 2..=dim {
                faces.push(GradedMap::zero(d.clone(), target.clone(), 0));
            }
        }
        out.attach_block(&block_name(k), dim, (**d).clone(), faces)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    /// B̄ = Q[0]; X_0 = disk (p, r); X_{-1} = Q[1] with ε(r) = t; X_1 has g with
    /// d_0 g = p, d_1 g = 0; α picks g. The last stage cannot be corrected.
    #[test]
    fn broken_fixture_reports_obstruction() {
        let q = Ring::Rationals;
        let mut c = CellularObject::empty(q, -1);
        c.attach_block("t", -1, FreeChainComplex::sphere(q, 1, 1), vec![]).unwrap();
        let disk = FreeChainComplex::disk(q, 1, 1);
        let mut m = BTreeMap::new();
        m.insert(1, Matrix::from_i64(q, 1, 1, &[1]));
        let eps = GradedMap::new(Arc::new(disk.clone()), c.level(-1).clone(), 0, m).unwrap();
        c.attach_block("pr", 0, disk, vec![eps]).unwrap();
        let g = FreeChainComplex::sphere(q, 1, 0);
        let mut m = BTreeMap::new();
        m.insert(0, Matrix::from_i64(q, 1, 1, &[1]));
        let d0 = GradedMap::new(Arc::new(g.clone()), c.level(0).clone(), 0, m).unwrap();
        let d1 = GradedMap::zero(Arc::new(g.clone()), c.level(0).clone(), 0);
        c.attach_block("g", 1, g.clone(), vec![d0, d1]).unwrap();
        let moore = c.object().moore();
        let alpha = factor_through(moore.incl(1), &c.cell_inj(2)).unwrap();
        let d = realize_attaching(c.object(), &moore, &g, &alpha, 2).unwrap();
        assert_eq!(d.obstruction, Some(-1));
        assert!(!d.stages.last().unwrap().contains_zero);
        assert!(d.stages[0].contains_zero);
    }

    #[test]
    fn zero_attaching_map_is_accepted() {
        let q = Ring::Rationals;
        let mut c = CellularObject::empty(q, -1);
        c.attach_block("l", -1, FreeChainComplex::sphere(q, 1, 0), vec![]).unwrap();
        let v = FreeChainComplex::sphere(q, 1, 0);
        let mut m = BTreeMap::new();
        m.insert(0, Matrix::from_i64(q, 1, 1, &[1]));
        c.attach_cw("v0", v.clone(), GradedMap::new(Arc::new(v.clone()), c.level(-1).clone(), 0, m).unwrap()).unwrap();
        c.extend_top(2).unwrap();
        let moore = c.object().moore();
        let b = FreeChainComplex::sphere(q, 2, 0);
        let alpha = GradedMap::zero(Arc::new(b.clone()), moore.chain(2).clone(), 0);
        let d = realize_attaching(c.object(), &moore, &b, &alpha, 3).unwrap();
        assert!(d.succeeded());
        assert!(d.chain_map_holds && d.stage_relation_holds);
        let w = extend_by_cone(&c, &d, &moore, "b").unwrap();
        assert!(w.object().check_identities().passed);
        assert_eq!(w.top(), 3);
    }
}
