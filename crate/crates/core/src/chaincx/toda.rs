//! Triple and long Toda brackets of chain maps.
//!
//! All maps are degree-0 chain maps; homotopies are graded maps H with
//! D(H) = ∂H + H∂ equal to the composite they trivialize.

use super::group::{Coset, HomologyGroup};
use super::hom::{solve_nullhomotopy, HomComplex};
use super::map::GradedMap;
use crate::conventions::{sign, TODA_LEFT, TODA_RIGHT};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// θ = f∘H_gh − H_fg∘h for maps A -h-> B -g-> C -f-> D.
pub fn triple_toda(f: &GradedMap, g: &GradedMap, h: &GradedMap, h_gh: &GradedMap, h_fg: &GradedMap) -> Result<GradedMap> {
    for m in [f, g, h] {
        if m.shift() != 0 || !m.is_chain_map() {
            return Err(Error::Precondition("bracket inputs must be degree-0 chain maps".into()));
        }
    }
    if h_gh.hom_differential() != g.compose(h) {
        return Err(Error::Precondition("H_gh does not bound g∘h".into()));
    }
    if h_fg.hom_differential() != f.compose(g) {
        return Err(Error::Precondition("H_fg does not bound f∘g".into()));
    }
    let left = f.compose(h_gh).scale(&Scalar::from_integer(TODA_LEFT.into()));
    let right = h_fg.compose(h).scale(&Scalar::from_integer(TODA_RIGHT.into()));
    Ok(left.add(&right))
}

#[derive(Debug, Clone)]
pub struct TodaResult {
    pub theta: GradedMap,
    pub h_gh: GradedMap,
    pub h_fg: GradedMap,
    pub group: HomologyGroup,
    pub coset: Coset,
}

fn composite_class(x: &GradedMap, what: &str) -> Error {
    let hom = HomComplex::new(x.source().clone(), x.target().clone());
    let grp = hom.homology(x.shift());
    let class = grp.class_of(&hom.to_vec(x)).unwrap_or_default();
    Error::Precondition(format!(
        "{what} is not nullhomotopic: class {} in {}",
        super::group::fmt_element(&class),
        grp.describe()
    ))
}

fn check_composable(f: &GradedMap, g: &GradedMap, h: &GradedMap) -> Result<()> {
    if **g.source() != **h.target() || **f.source() != **g.target() {
        return Err(Error::Shape("bracket inputs are not composable".into()));
    }
    Ok(())
}

/// The bracket ⟨f, g, h⟩ as a coset in [ΣA, D].
pub fn toda_coset(f: &GradedMap, g: &GradedMap, h: &GradedMap) -> Result<TodaResult> {
    check_composable(f, g, h)?;
    let gh = g.compose(h);
    let fg = f.compose(g);
    let h_gh = solve_nullhomotopy(&gh)?.ok_or_else(|| composite_class(&gh, "g∘h"))?.homotopy;
    let h_fg = solve_nullhomotopy(&fg)?.ok_or_else(|| composite_class(&fg, "f∘g"))?.homotopy;
    let theta = triple_toda(f, g, h, &h_gh, &h_fg)?;
    let (group, coset) = bracket_coset(f, h, &theta);
    Ok(TodaResult { theta, h_gh, h_fg, group, coset })
}

fn bracket_coset(f: &GradedMap, h: &GradedMap, theta: &GradedMap) -> (HomologyGroup, Coset) {
    let k = theta.shift();
    let out = HomComplex::new(h.source().clone(), f.target().clone());
    let group = out.homology(k);
    let gens = indeterminacy(f, h, k);
    let gens: Vec<Vec<Scalar>> = gens.iter().map(|m| out.to_vec(m)).collect();
    let coset = group.coset(&out.to_vec(theta), &gens);
    (group, coset)
}

/// f∘Z_k(Hom(A, C)) + Z_k(Hom(B, D))∘h, where h: A -> B and f: C -> D.
fn indeterminacy(f: &GradedMap, h: &GradedMap, k: i64) -> Vec<GradedMap> {
    let mut gens = Vec::new();
    let left = HomComplex::new(h.source().clone(), f.source().clone());
    for z in left.cycles(k) {
        gens.push(f.compose(&z));
    }
    let right = HomComplex::new(h.target().clone(), f.target().clone());
    for z in right.cycles(k) {
        gens.push(z.compose(h));
    }
    gens
}

/// Every class f∘H_gh − H_fg∘h over all nullhomotopy pairs, by exhaustion.
/// Only meaningful over a finite field; refuses search spaces above `limit`.
pub fn enumerate_bracket_values(f: &GradedMap, g: &GradedMap, h: &GradedMap, limit: usize) -> Result<BTreeSet<Vec<Scalar>>> {
    let ring = f.ring();
    let p = match ring {
        Ring::PrimeField(p) => p as usize,
        _ => return Err(Error::Precondition("exhaustive enumeration needs a finite field".into())),
    };
    let base = toda_coset(f, g, h)?;
    let a = HomComplex::new(h.source().clone(), g.target().clone());
    let b = HomComplex::new(g.source().clone(), f.target().clone());
    let za = a.cycles(1);
    let zb = b.cycles(1);
    let n = za.len() + zb.len();
    let total = p.checked_pow(n as u32).filter(|&t| t <= limit);
    let Some(total) = total else {
        return Err(Error::Precondition(format!("search space {p}^{n} exceeds the limit {limit}")));
    };
    let out = HomComplex::new(h.source().clone(), f.target().clone());
    let mut values = BTreeSet::new();
    for mut idx in 0..total {
        let mut hgh = base.h_gh.clone();
        let mut hfg = base.h_fg.clone();
        for z in za.iter().chain(zb.iter()).enumerate() {
            let c = idx % p;
            idx /= p;
            if c == 0 {
                continue;
            }
            let s = Scalar::from_integer((c as i64).into());
            if z.0 < za.len() {
                hgh = hgh.add(&z.1.scale(&s));
            } else {
                hfg = hfg.add(&z.1.scale(&s));
            }
        }
        let theta = triple_toda(f, g, h, &hgh, &hfg)?;
        let class = base.group.class_of(&out.to_vec(&theta)).expect("bracket values are cycles");
        values.insert(class.into_iter().map(|x| ring.coerce(&x)).collect());
    }
    Ok(values)
}

/// All elements of a coset over F_p, in homology coordinates.
pub fn coset_elements(ring: Ring, coset: &Coset) -> Vec<Vec<Scalar>> {
    let p = match ring {
        Ring::PrimeField(p) => p as usize,
        _ => panic!("coset_elements needs a finite field"),
    };
    let mut seen = BTreeSet::new();
    seen.insert(coset.representative.iter().map(|x| ring.coerce(x)).collect::<Vec<_>>());
    for g in &coset.generators {
        let cur: Vec<Vec<Scalar>> = seen.iter().cloned().collect();
        for v in cur {
            let mut w = v.clone();
            for _ in 1..p {
                w = w.iter().zip(g).map(|(a, b)| ring.add(a, b)).collect();
                seen.insert(w.clone());
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct StageReport {
    /// Source index i of the homotopy H_{i,j} being constructed.
    pub i: usize,
    pub j: usize,
    pub group: String,
    pub coset: Coset,
}

#[derive(Debug, Clone)]
pub struct LongTodaResult {
    pub stages: Vec<StageReport>,
    /// Set when some stage coset excludes 0.
    pub obstruction: Option<(usize, usize)>,
    pub final_value: Option<Coset>,
    pub final_map: Option<GradedMap>,
    pub homotopies: BTreeMap<(usize, usize), GradedMap>,
}

impl LongTodaResult {
    pub fn vanishes(&self) -> Option<bool> {
        self.final_value.as_ref().map(|c| c.contains_zero)
    }
}

/// Descent for maps X_n -d_n-> … -d_1-> X_0, given as `maps[k] = d_{k+1}`.
pub fn long_toda(maps: &[GradedMap]) -> Result<LongTodaResult> {
    let n = maps.len();
    if n < 3 {
        return Err(Error::Precondition("a long bracket needs at least three maps".into()));
    }
    for m in maps {
        if m.shift() != 0 || !m.is_chain_map() {
            return Err(Error::Precondition("bracket inputs must be degree-0 chain maps".into()));
        }
    }
    for w in maps.windows(2) {
        if **w[0].source() != **w[1].target() {
            return Err(Error::Shape("bracket inputs are not composable".into()));
        }
    }
    let mut xs: Vec<Arc<_>> = vec![maps[0].target().clone()];
    xs.extend(maps.iter().map(|m| m.source().clone()));
    let d = |i: usize| &maps[i - 1];

    let mut hs: BTreeMap<(usize, usize), GradedMap> = BTreeMap::new();
    for i in 1..=n {
        hs.insert((i, i - 1), d(i).clone());
    }
    let obstruction_at = |hs: &BTreeMap<(usize, usize), GradedMap>, i: usize, j: usize| -> GradedMap {
        let mut o = GradedMap::zero(xs[i].clone(), xs[j].clone(), (i - j) as i64 - 2);
        for k in j + 1..i {
            let term = hs[&(k, j)].compose(&hs[&(i, k)]);
            o = o.add(&term.signed(if sign((k - j) as i64 - 1) < 0 { 1 } else { 0 }));
        }
        o
    };

    let mut stages = Vec::new();
    for i in 2..=n {
        for j in (0..=i - 2).rev() {
            if i == n && j == 0 {
                continue;
            }
            let o = obstruction_at(&hs, i, j);
            let e = (i - j) as i64 - 1;
            let p = HomComplex::new(xs[i].clone(), xs[j].clone());
            let group = p.homology(e - 1);
            let correctable = j < i - 2;
            let q = HomComplex::new(xs[i].clone(), xs[j + 1].clone());
            let zs = if correctable { q.cycles(e - 1) } else { Vec::new() };
            let gens: Vec<Vec<Scalar>> = zs.iter().map(|z| p.to_vec(&d(j + 1).compose(z))).collect();
            let coset = group.coset(&p.to_vec(&o), &gens);
            let ok = coset.contains_zero;
            stages.push(StageReport { i, j, group: group.describe(), coset });
            if !ok {
                return Ok(LongTodaResult { stages, obstruction: Some((i, j)), final_value: None, final_map: None, homotopies: hs });
            }
            let (y, z) = solve_stage(&p, &q, d(j + 1), &o, e, correctable)?;
            if let Some(z) = z {
                let cur = hs[&(i, j + 1)].add(&z);
                hs.insert((i, j + 1), cur);
            }
            hs.insert((i, j), y);
        }
    }
    let theta = obstruction_at(&hs, n, 0);
    debug_assert!(theta.hom_differential().is_zero());
    let k = n as i64 - 2;
    let out = HomComplex::new(xs[n].clone(), xs[0].clone());
    let group = out.homology(k);
    let mut gens = Vec::new();
    for z in HomComplex::new(xs[n].clone(), xs[1].clone()).cycles(k) {
        gens.push(out.to_vec(&d(1).compose(&z)));
    }
    for z in HomComplex::new(xs[n - 1].clone(), xs[0].clone()).cycles(k) {
        gens.push(out.to_vec(&z.compose(d(n))));
    }
    let coset = group.coset(&out.to_vec(&theta), &gens);
    Ok(LongTodaResult { stages, obstruction: None, final_value: Some(coset), final_map: Some(theta), homotopies: hs })
}

/// Solve D(y) − d∘z = o with D(z) = 0 (z absent when not correctable).
fn solve_stage(
    p: &HomComplex,
    q: &HomComplex,
    d: &GradedMap,
    o: &GradedMap,
    e: i64,
    correctable: bool,
) -> Result<(GradedMap, Option<GradedMap>)> {
    let ring = p.ring();
    let dy = p.differential(e);
    let (ny, rows_top) = (dy.cols(), dy.rows());
    let (nz, rows_bot) = if correctable { (q.dim(e - 1), q.dim(e - 2)) } else { (0, 0) };
    let mut a = Matrix::zeros(ring, rows_top + rows_bot, ny + nz);
    a.paste(0, 0, &dy);
    if correctable {
        let l = q.linear_map(e - 1, rows_top, |z| p.to_vec(&d.compose(z)));
        a.paste(0, ny, &l.neg());
        a.paste(rows_top, ny, &q.differential(e - 1));
    }
    let mut rhs = p.to_vec(o);
    rhs.extend(std::iter::repeat_n(Scalar::zero(), rows_bot));
    let x = solve(&a, &Matrix::column(ring, rhs))
        .ok_or_else(|| Error::Precondition("stage coset contains zero but the lift failed".into()))?;
    let x = x.col(0);
    let y = p.from_vec(e, &x[..ny]);
    let z = correctable.then(|| q.from_vec(e - 1, &x[ny..]));
    Ok((y, z))
}
