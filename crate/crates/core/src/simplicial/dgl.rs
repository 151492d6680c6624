//! Simplicial free DGLs assembled from cells, with degenerate copies derived
//! from surjections, and their linear shadows in a fixed internal degree.
//!
//! A cell of simplicial dimension r lives in X_r; in X_k it appears once per
//! surjection θ: [k] ↠ [r], named after the degeneracy labels of θ
//! (`s1s0_a` for θ = (0,0,0) applied to `a`).

use super::cellular::{degeneracy_labels, epi_mono, surjections};
use super::object::SimplicialObject;
use crate::chaincx::{FreeChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::lie::morphism::MorphismFailure;
use crate::lie::{DGLMorphism, FreeDGL, Generator, LieElement, LieExpr};
use crate::ring::Ring;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct DglCell {
    pub name: String,
    pub degree: i64,
    /// Internal differential, written in the level of the cell.
    pub differential: LieExpr,
    /// d_0, …, d_r, written in the level below. Empty in dimension 0.
    pub faces: Vec<LieExpr>,
}

impl DglCell {
    pub fn new(name: &str, degree: i64) -> Self {
        DglCell { name: name.to_string(), degree, differential: LieExpr::zero(), faces: Vec::new() }
    }

    pub fn with_differential(mut self, d: LieExpr) -> Self {
        self.differential = d;
        self
    }

    pub fn with_faces(mut self, faces: Vec<LieExpr>) -> Self {
        self.faces = faces;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DglBlock {
    pub name: String,
    pub dim: i64,
    pub cells: Vec<DglCell>,
}

/// Levels X_0..X_top, faces d_i: X_n -> X_{n-1} for n >= 1, and an optional
/// augmentation X_0 -> X_{-1}.
#[derive(Debug, Clone)]
pub struct SimplicialDGL {
    levels: Vec<Arc<FreeDGL>>,
    faces: Vec<Vec<DGLMorphism>>,
    augmentation: Option<DGLMorphism>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DglIdentityFailure {
    pub n: i64,
    pub i: usize,
    pub j: usize,
    pub generator: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DglFaceFailure {
    /// Simplicial dimension of the source; 0 for the augmentation.
    pub n: i64,
    pub i: usize,
    pub failure: MorphismFailure,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicialDglReport {
    pub passed: bool,
    pub identity_failures: Vec<DglIdentityFailure>,
    pub face_failures: Vec<DglFaceFailure>,
}

/// Generator name of the copy of `cell` indexed by θ.
pub fn copy_name(cell: &str, theta: &[usize]) -> String {
    let labels = degeneracy_labels(theta);
    if labels.is_empty() {
        return cell.to_string();
    }
    let prefix: String = labels.iter().rev().map(|j| format!("s{j}")).collect();
    format!("{prefix}_{cell}")
}

struct LevelIndex {
    /// (block, cell, θ) per generator, in generator order.
    gens: Vec<(usize, usize, Vec<usize>)>,
    by_name: HashMap<String, usize>,
}

/// Rewrite an expression of X_r into X_k along ε: [k] ↠ [r], sending the
/// copy (c, φ) to (c, φ∘ε).
fn pull_back(
    e: &LieExpr,
    from: &LieIndexView,
    eps: &[usize],
    blocks: &[DglBlock],
) -> Result<LieExpr> {
    for g in e.generators() {
        if !from.index.by_name.contains_key(&g) {
            return Err(Error::UndeclaredGenerator(format!("{g} (in dimension {})", from.dim)));
        }
    }
    Ok(e.map_gens(&|g: &str| {
        let (b, c, phi) = &from.index.gens[from.index.by_name[g]];
        let comp: Vec<usize> = eps.iter().map(|&a| phi[a]).collect();
        copy_name(&blocks[*b].cells[*c].name, &comp)
    }))
}

struct LieIndexView<'a> {
    dim: i64,
    index: &'a LevelIndex,
}

impl SimplicialDGL {
    /// Assemble levels 0..=top from cells. Every cell of dimension r >= 1 must
    /// list r + 1 faces.
    pub fn from_blocks(name: &str, blocks: &[DglBlock], top: i64, truncation: i64) -> Result<Self> {
        for b in blocks {
            if b.dim < 0 || b.dim > top {
                return Err(Error::Precondition(format!("block `{}` has dimension {} outside 0..={top}", b.name, b.dim)));
            }
            for c in &b.cells {
                let want = if b.dim == 0 { 0 } else { b.dim as usize + 1 };
                if c.faces.len() != want {
                    return Err(Error::Shape(format!("cell `{}` lists {} faces, expected {want}", c.name, c.faces.len())));
                }
            }
        }
        let mut indices: Vec<LevelIndex> = Vec::new();
        let mut levels: Vec<Arc<FreeDGL>> = Vec::new();
        for k in 0..=top {
            let mut gens = Vec::new();
            let mut by_name = HashMap::new();
            let mut decl = Vec::new();
            for (bi, b) in blocks.iter().enumerate() {
                for theta in surjections(k, b.dim) {
                    for (ci, c) in b.cells.iter().enumerate() {
                        let nm = copy_name(&c.name, &theta);
                        if by_name.insert(nm.clone(), gens.len()).is_some() {
                            return Err(Error::Precondition(format!("generator `{nm}` appears twice in dimension {k}")));
                        }
                        decl.push(Generator::new(&nm, c.degree));
                        gens.push((bi, ci, theta.clone()));
                    }
                }
            }
            indices.push(LevelIndex { gens, by_name });
            let mut dgl = FreeDGL::new(&format!("{name}{k}"), decl, truncation)?;
            let idx = &indices[k as usize];
            for (bi, ci, theta) in &idx.gens {
                let b = &blocks[*bi];
                let c = &b.cells[*ci];
                if c.differential.is_empty() {
                    continue;
                }
                let view = LieIndexView { dim: b.dim, index: &indices[b.dim as usize] };
                let d = pull_back(&c.differential, &view, theta, blocks)?;
                dgl.set_differential(&copy_name(&c.name, theta), d)?;
            }
            levels.push(Arc::new(dgl));
        }
        let mut faces = Vec::new();
        for k in 1..=top {
            let idx = &indices[k as usize];
            let mut fs = Vec::new();
            for i in 0..=k as usize {
                let mut values: Vec<(String, LieExpr)> = Vec::new();
                for (bi, ci, theta) in &idx.gens {
                    let b = &blocks[*bi];
                    let c = &b.cells[*ci];
                    let mut t = theta.clone();
                    t.remove(i);
                    let (eps, image) = epi_mono(&t);
                    let img = if image.len() == b.dim as usize + 1 {
                        LieExpr::gen(&copy_name(&c.name, &t))
                    } else {
                        let j = (0..=b.dim as usize).find(|v| !image.contains(v)).unwrap();
                        let view = LieIndexView { dim: b.dim - 1, index: &indices[(b.dim - 1) as usize] };
                        pull_back(&c.faces[j], &view, &eps, blocks)?
                    };
                    values.push((copy_name(&c.name, theta), img));
                }
                let refs: Vec<(&str, LieExpr)> = values.iter().map(|(n, e)| (n.as_str(), e.clone())).collect();
                fs.push(DGLMorphism::new(levels[k as usize].clone(), levels[k as usize - 1].clone(), &refs)?);
            }
            faces.push(fs);
        }
        Ok(SimplicialDGL { levels, faces, augmentation: None })
    }

    /// Explicit levels and faces; `faces[n - 1][i] = d_i: X_n -> X_{n-1}`.
    pub fn new(levels: Vec<Arc<FreeDGL>>, faces: Vec<Vec<DGLMorphism>>) -> Result<Self> {
        if levels.is_empty() || faces.len() + 1 != levels.len() {
            return Err(Error::Shape("need one face family per positive dimension".into()));
        }
        for (k, fs) in faces.iter().enumerate() {
            if fs.len() != k + 2 {
                return Err(Error::Shape(format!("dimension {} needs {} faces", k + 1, k + 2)));
            }
        }
        Ok(SimplicialDGL { levels, faces, augmentation: None })
    }

    pub fn with_augmentation(mut self, eps: DGLMorphism) -> Result<Self> {
        if *eps.source != *self.levels[0] {
            return Err(Error::Shape("augmentation must start at dimension 0".into()));
        }
        self.augmentation = Some(eps);
        Ok(self)
    }

    pub fn top(&self) -> i64 {
        self.levels.len() as i64 - 1
    }

    pub fn level(&self, n: i64) -> &Arc<FreeDGL> {
        &self.levels[n as usize]
    }

    pub fn face(&self, n: i64, i: usize) -> &DGLMorphism {
        &self.faces[n as usize - 1][i]
    }

    pub fn augmentation(&self) -> Option<&DGLMorphism> {
        self.augmentation.as_ref()
    }

    /// d_i on X_n, with d_0 on X_0 the augmentation.
    fn face_or_aug(&self, n: i64, i: usize) -> Option<&DGLMorphism> {
        if n == 0 {
            self.augmentation.as_ref()
        } else {
            Some(self.face(n, i))
        }
    }

    /// Simplicial identities on generators, including ε∘d_0 = ε∘d_1 when an
    /// augmentation is present, and the DGL morphism conditions of every face.
    pub fn check(&self) -> SimplicialDglReport {
        let mut identity_failures = Vec::new();
        for n in 1..=self.top() {
            for j in 1..=n as usize {
                for i in 0..j {
                    let (Some(a), Some(b)) = (self.face_or_aug(n - 1, i), self.face_or_aug(n - 1, j - 1)) else {
                        continue;
                    };
                    let lhs = a.compose(self.face(n, j));
                    let rhs = b.compose(self.face(n, i));
                    for (g, l, r) in disagreements(&lhs, &rhs) {
                        identity_failures.push(DglIdentityFailure {
                            n,
                            i,
                            j,
                            generator: g,
                            lhs: lhs.target.to_expr(&l).to_string(),
                            rhs: rhs.target.to_expr(&r).to_string(),
                        });
                    }
                }
            }
        }
        let mut face_failures = Vec::new();
        if let Some(e) = &self.augmentation {
            face_failures.extend(e.check().into_iter().map(|failure| DglFaceFailure { n: 0, i: 0, failure }));
        }
        for n in 1..=self.top() {
            for i in 0..=n as usize {
                face_failures.extend(self.face(n, i).check().into_iter().map(|failure| DglFaceFailure { n, i, failure }));
            }
        }
        SimplicialDglReport { passed: identity_failures.is_empty() && face_failures.is_empty(), identity_failures, face_failures }
    }

    /// The degree-t pieces as plain vector spaces with the induced face
    /// matrices. The augmentation level is the target's piece, or zero.
    pub fn per_degree_linearize(&self, t: i64) -> Result<SimplicialObject> {
        self.linearize(t, t)
    }

    /// Degrees lo..=hi of every level as chain complexes under the internal
    /// differential, with the induced chain maps as faces. Homology of the
    /// result is correct strictly inside the window.
    pub fn linearize(&self, lo: i64, hi: i64) -> Result<SimplicialObject> {
        let report = self.check();
        if let Some(f) = report.face_failures.first() {
            return Err(Error::Precondition(format!(
                "face d_{} in dimension {} is not a DGL morphism: {}",
                f.i, f.n, f.failure.detail
            )));
        }
        let aug_level = match &self.augmentation {
            Some(e) => Arc::new(window(&e.target, lo, hi)),
            None => Arc::new(FreeChainComplex::zero(Ring::Rationals)),
        };
        let mut levels = vec![aug_level];
        for l in &self.levels {
            levels.push(Arc::new(window(l, lo, hi)));
        }
        let mut faces = Vec::new();
        let d0 = match &self.augmentation {
            Some(e) => linear_map(e, &levels[1], &levels[0], lo, hi)?,
            None => GradedMap::zero(levels[1].clone(), levels[0].clone(), 0),
        };
        faces.push(vec![d0]);
        for n in 1..=self.top() {
            let mut fs = Vec::new();
            for i in 0..=n as usize {
                let (s, t) = (&levels[n as usize + 1], &levels[n as usize]);
                fs.push(linear_map(self.face(n, i), s, t, lo, hi)?);
            }
            faces.push(fs);
        }
        SimplicialObject::new(Ring::Rationals, levels, faces)
    }
}

fn window(d: &FreeDGL, lo: i64, hi: i64) -> FreeChainComplex {
    let mut c = FreeChainComplex::zero(Ring::Rationals);
    for t in lo..=hi {
        let p = d.piece(t);
        if p.dim() > 0 {
            c.set_rank(t, p.dim());
            c.set_labels(t, p.exprs.iter().map(|e| e.to_string()).collect()).unwrap();
        }
    }
    for t in lo + 1..=hi {
        if c.rank(t) > 0 && c.rank(t - 1) > 0 {
            c.set_boundary(t, (*d.differential_matrix(t)).clone()).unwrap();
        }
    }
    c
}

fn linear_map(
    f: &DGLMorphism,
    src: &Arc<FreeChainComplex>,
    tgt: &Arc<FreeChainComplex>,
    lo: i64,
    hi: i64,
) -> Result<GradedMap> {
    let mut mats = BTreeMap::new();
    for t in lo..=hi {
        if src.rank(t) > 0 && tgt.rank(t) > 0 {
            mats.insert(t, f.linearize(t)?);
        }
    }
    GradedMap::new(src.clone(), tgt.clone(), 0, mats)
}

/// Generators on which two morphisms with the same frame differ.
pub fn disagreements(a: &DGLMorphism, b: &DGLMorphism) -> Vec<(String, LieElement, LieElement)> {
    let mut out = Vec::new();
    for g in a.source.generators() {
        let x = a.source.generator(&g.name).unwrap();
        let (l, r) = (a.apply(&x), b.apply(&x));
        if l.tensor != r.tensor {
            out.push((g.name.clone(), l, r));
        }
    }
    out
}
