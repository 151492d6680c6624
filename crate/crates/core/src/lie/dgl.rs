//! Free graded Lie algebras over Q with a degree -1 differential.

use super::expr::{Factor, LieExpr};
use super::tensor::{Tensor, Word};
use crate::conventions::{koszul, leibniz, massey_coeffs};
use crate::error::{Error, Result};
use crate::linalg::{extend_basis, independent_columns, is_invertible, kernel, rank, solve};
use crate::matrix::Matrix;
use crate::ring::{int, Ring, Scalar};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: &str, degree: i64) -> Self {
        Generator { name: name.to_string(), degree }
    }
}

/// A homogeneous element in tensor normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub degree: i64,
    pub tensor: Tensor,
}

impl LieElement {
    pub fn zero(degree: i64) -> Self {
        LieElement { degree, tensor: Tensor::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        LieElement { degree: self.degree, tensor: self.tensor.plus(&other.tensor) }
    }

    pub fn minus(&self, other: &LieElement) -> LieElement {
        LieElement { degree: self.degree, tensor: self.tensor.minus(&other.tensor) }
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        LieElement { degree: self.degree, tensor: self.tensor.scale(c) }
    }
}

/// One graded piece of the free Lie algebra: a basis of Lie elements together
/// with the bracket trees that produced them.
#[derive(Debug)]
pub struct GradedPiece {
    pub degree: i64,
    pub basis: Vec<Tensor>,
    pub exprs: Vec<LieExpr>,
    span: EchelonSpan,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `t` in the basis, or `None` if `t` is not in this piece.
    pub fn coords(&self, t: &Tensor) -> Option<Vec<Scalar>> {
        let (rem, c) = self.span.reduce(t, self.basis.len());
        rem.is_zero().then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Tensor {
        let mut t = Tensor::zero();
        for (b, c) in self.basis.iter().zip(coeffs) {
            t.add_scaled(b, c);
        }
        t
    }

    pub fn combine_expr(&self, coeffs: &[Scalar]) -> LieExpr {
        let mut e = LieExpr::zero();
        for (x, c) in self.exprs.iter().zip(coeffs) {
            if !c.is_zero() {
                e = e.plus(x.clone().scale(c));
            }
        }
        e
    }
}

/// Sparse row echelon keyed by leading word; each row remembers how it is
/// written in terms of the basis.
#[derive(Debug, Default)]
struct EchelonSpan {
    rows: BTreeMap<Word, (Tensor, Vec<Scalar>)>,
}

impl EchelonSpan {
    fn reduce(&self, t: &Tensor, dim: usize) -> (Tensor, Vec<Scalar>) {
        let mut x = t.clone();
        let mut coeffs = vec![Scalar::zero(); dim];
        while let Some((w, c)) = x.leading().map(|(w, c)| (w.clone(), c.clone())) {
            let Some((row, comb)) = self.rows.get(&w) else { break };
            let lam = &c / row.coeff(&w);
            x.add_scaled(row, &-lam.clone());
            for (i, k) in comb.iter().enumerate() {
                if !k.is_zero() {
                    coeffs[i] = &coeffs[i] + &lam * k;
                }
            }
        }
        (x, coeffs)
    }

    /// Insert a candidate; returns true if it enlarged the span.
    fn insert(&mut self, t: &Tensor, dim: usize) -> bool {
        let (rem, coeffs) = self.reduce(t, dim);
        if rem.is_zero() {
            return false;
        }
        let mut comb: Vec<Scalar> = coeffs.into_iter().map(|c| -c).collect();
        comb.push(int(1));
        for (_, c) in self.rows.values_mut() {
            c.resize(dim + 1, Scalar::zero());
        }
        let lead = rem.leading().unwrap().0.clone();
        self.rows.insert(lead, (rem, comb));
        true
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DglFailure {
    pub generator: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DglReport {
    pub passed: bool,
    pub failures: Vec<DglFailure>,
}

#[derive(Debug, Clone)]
pub struct MasseyProduct {
    pub degree: i64,
    pub representative: LieElement,
    /// Coordinates of the class in the chosen homology basis.
    pub class: Vec<Scalar>,
    /// Basis of the indeterminacy subspace, in the same coordinates.
    pub indeterminacy: Vec<Vec<Scalar>>,
    pub vanishes: bool,
}

pub struct FreeDGL {
    name: String,
    gens: Vec<Generator>,
    index: BTreeMap<String, usize>,
    diff_exprs: Vec<LieExpr>,
    diff: Vec<Tensor>,
    degs: Vec<i64>,
    truncation: i64,
    pieces: Mutex<BTreeMap<i64, Arc<GradedPiece>>>,
    dmats: Mutex<BTreeMap<i64, Arc<Matrix>>>,
}

impl Clone for FreeDGL {
    fn clone(&self) -> Self {
        FreeDGL {
            name: self.name.clone(),
            gens: self.gens.clone(),
            index: self.index.clone(),
            diff_exprs: self.diff_exprs.clone(),
            diff: self.diff.clone(),
            degs: self.degs.clone(),
            truncation: self.truncation,
            pieces: Mutex::new(BTreeMap::new()),
            dmats: Mutex::new(BTreeMap::new()),
        }
    }
}

impl std::fmt::Debug for FreeDGL {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeDGL")
            .field("name", &self.name)
            .field("gens", &self.gens)
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl PartialEq for FreeDGL {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.gens == other.gens
            && self.diff_exprs == other.diff_exprs
            && self.truncation == other.truncation
    }
}

impl FreeDGL {
    pub fn new(name: &str, gens: Vec<Generator>, truncation: i64) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::Degree(format!("generator {} has degree {} < 1", g.name, g.degree)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate generator {}", g.name)));
            }
        }
        let n = gens.len();
        let degs = gens.iter().map(|g| g.degree).collect();
        Ok(FreeDGL {
            name: name.to_string(),
            gens,
            index,
            diff_exprs: vec![LieExpr::zero(); n],
            diff: vec![Tensor::zero(); n],
            degs,
            truncation,
            pieces: Mutex::new(BTreeMap::new()),
            dmats: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degs
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UndeclaredGenerator(name.to_string()))
    }

    pub fn declared_differential(&self, name: &str) -> Result<&LieExpr> {
        Ok(&self.diff_exprs[self.generator_index(name)?])
    }

    /// Declare d(name) = expr. Degree consistency is left to `check`.
    pub fn set_differential(&mut self, name: &str, expr: LieExpr) -> Result<()> {
        let i = self.generator_index(name)?;
        let t = self.expand_loose(&expr)?;
        self.diff[i] = t;
        self.diff_exprs[i] = expr;
        self.pieces.lock().unwrap().clear();
        self.dmats.lock().unwrap().clear();
        Ok(())
    }

    pub fn generator(&self, name: &str) -> Result<LieElement> {
        let i = self.generator_index(name)?;
        let deg = self.degs[i];
        if deg > self.truncation {
            return Ok(LieElement::zero(deg));
        }
        Ok(LieElement { degree: deg, tensor: Tensor::letter(i as u32) })
    }

    fn expand_inner(&self, e: &LieExpr) -> Result<(Option<i64>, Tensor)> {
        let mut deg: Option<i64> = None;
        let mut out = Tensor::zero();
        for (c, f) in &e.terms {
            let (d, t) = match f {
                Factor::Gen(g) => {
                    let i = self.generator_index(g)?;
                    let d = self.degs[i];
                    let t = if d > self.truncation { Tensor::zero() } else { Tensor::letter(i as u32) };
                    (Some(d), t)
                }
                Factor::Bracket(a, b) => {
                    let (da, ta) = self.expand_inner(a)?;
                    let (db, tb) = self.expand_inner(b)?;
                    match (da, db) {
                        (Some(da), Some(db)) => {
                            (Some(da + db), ta.bracket(da, &tb, db, &self.degs, self.truncation))
                        }
                        _ => (None, Tensor::zero()),
                    }
                }
            };
            if let Some(d) = d {
                if c.is_zero() {
                    continue;
                }
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => {
                        return Err(Error::Degree(format!(
                            "inhomogeneous expression `{e}`: summands of degrees {d0} and {d}"
                        )))
                    }
                    _ => {}
                }
                out.add_scaled(&t, c);
            }
        }
        Ok((deg, out))
    }

    fn expand_loose(&self, e: &LieExpr) -> Result<Tensor> {
        Ok(self.expand_inner(e)?.1)
    }

    /// Expand into tensor normal form. Empty expressions get `default_degree`.
    pub fn expand_at(&self, e: &LieExpr, default_degree: i64) -> Result<LieElement> {
        let (d, t) = self.expand_inner(e)?;
        Ok(LieElement { degree: d.unwrap_or(default_degree), tensor: t })
    }

    pub fn expand(&self, e: &LieExpr) -> Result<LieElement> {
        self.expand_at(e, 0)
    }

    pub fn expression_degree(&self, e: &LieExpr) -> Result<Option<i64>> {
        Ok(self.expand_inner(e)?.0)
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> LieElement {
        LieElement {
            degree: u.degree + v.degree,
            tensor: u.tensor.bracket(u.degree, &v.tensor, v.degree, &self.degs, self.truncation),
        }
    }

    /// Leibniz extension of the differential.
    pub fn differential(&self, e: &LieElement) -> LieElement {
        LieElement {
            degree: e.degree - 1,
            tensor: e.tensor.derive(&self.diff, 1, &self.degs, self.truncation),
        }
    }

    pub fn differential_expr(&self, e: &LieExpr) -> Result<LieElement> {
        let x = self.expand(e)?;
        Ok(self.differential(&x))
    }

    pub fn check(&self) -> DglReport {
        let mut failures = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            match self.expand_inner(&self.diff_exprs[i]) {
                Err(e) => failures.push(DglFailure {
                    generator: g.name.clone(),
                    kind: "degree".into(),
                    detail: e.to_string(),
                }),
                Ok((Some(d), t)) if d != g.degree - 1 && !t.is_zero() => failures.push(DglFailure {
                    generator: g.name.clone(),
                    kind: "degree".into(),
                    detail: format!("d({}) has degree {d}, expected {}", g.name, g.degree - 1),
                }),
                Ok(_) => {}
            }
            if g.degree <= self.truncation {
                let x = LieElement { degree: g.degree, tensor: Tensor::letter(i as u32) };
                let dd = self.differential(&self.differential(&x));
                if !dd.is_zero() {
                    failures.push(DglFailure {
                        generator: g.name.clone(),
                        kind: "d_squared".into(),
                        detail: format!("d(d({})) != 0", g.name),
                    });
                }
            }
            let t = &self.diff[i];
            if !t.is_zero() && !self.is_lie(t) {
                failures.push(DglFailure {
                    generator: g.name.clone(),
                    kind: "not_lie".into(),
                    detail: format!("d({}) is not a Lie element", g.name),
                });
            }
        }
        DglReport { passed: failures.is_empty(), failures }
    }

    /// Whether a homogeneous tensor lies in the free Lie algebra.
    fn is_lie(&self, t: &Tensor) -> bool {
        let Some((w, _)) = t.leading() else { return true };
        let d = super::tensor::word_degree(w, &self.degs);
        if t.terms().keys().any(|w| super::tensor::word_degree(w, &self.degs) != d) {
            return false;
        }
        self.piece(d).coords(t).is_some()
    }

    /// Basis of the degree-d piece, computed by spanning with right-normed
    /// brackets [g, b] and reducing; memoized.
    pub fn piece(&self, d: i64) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&d) {
            return p.clone();
        }
        let mut span = EchelonSpan::default();
        let mut basis = Vec::new();
        let mut exprs = Vec::new();
        if d >= 1 && d <= self.truncation {
            for (i, g) in self.gens.iter().enumerate() {
                if g.degree == d {
                    let t = Tensor::letter(i as u32);
                    if span.insert(&t, basis.len()) {
                        basis.push(t);
                        exprs.push(LieExpr::gen(&g.name));
                    }
                }
            }
            for (i, g) in self.gens.iter().enumerate() {
                if g.degree >= d {
                    continue;
                }
                let sub = self.piece(d - g.degree);
                let gt = Tensor::letter(i as u32);
                for (b, be) in sub.basis.iter().zip(&sub.exprs) {
                    let t = gt.bracket(g.degree, b, d - g.degree, &self.degs, self.truncation);
                    if span.insert(&t, basis.len()) {
                        basis.push(t);
                        exprs.push(LieExpr::bracket(LieExpr::gen(&g.name), be.clone()));
                    }
                }
            }
        }
        let p = Arc::new(GradedPiece { degree: d, basis, exprs, span });
        self.pieces.lock().unwrap().insert(d, p.clone());
        p
    }

    pub fn graded_basis(&self, d: i64) -> Result<Vec<Tensor>> {
        if d > self.truncation {
            return Err(Error::Degree(format!("degree {d} exceeds truncation {}", self.truncation)));
        }
        Ok(self.piece(d).basis.clone())
    }

    pub fn coords(&self, e: &LieElement) -> Result<Vec<Scalar>> {
        self.piece(e.degree)
            .coords(&e.tensor)
            .ok_or_else(|| Error::Precondition(format!("element is not in degree {} of {}", e.degree, self.name)))
    }

    /// Matrix of d: L_k -> L_{k-1} in the chosen bases.
    pub fn differential_matrix(&self, k: i64) -> Arc<Matrix> {
        if let Some(m) = self.dmats.lock().unwrap().get(&k) {
            return m.clone();
        }
        let src = self.piece(k);
        let tgt = self.piece(k - 1);
        let mut m = Matrix::zeros(Ring::Rationals, tgt.dim(), src.dim());
        for (j, b) in src.basis.iter().enumerate() {
            let db = b.derive(&self.diff, 1, &self.degs, self.truncation);
            let c = tgt.coords(&db).expect("differential leaves the free Lie algebra");
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        let m = Arc::new(m);
        self.dmats.lock().unwrap().insert(k, m.clone());
        m
    }

    pub fn homology_dim(&self, k: i64) -> usize {
        let dim = self.piece(k).dim();
        let out = rank(&self.differential_matrix(k));
        let inc = if k < self.truncation { rank(&self.differential_matrix(k + 1)) } else { 0 };
        dim - out - inc
    }

    pub fn homology_dims(&self, lo: i64, hi: i64) -> BTreeMap<i64, usize> {
        (lo.max(1)..=hi.min(self.truncation)).map(|k| (k, self.homology_dim(k))).collect()
    }

    /// A witness u with d(u) = z, or `None` when z survives in homology.
    pub fn is_boundary(&self, z: &LieElement) -> Result<Option<LieElement>> {
        if !self.differential(z).is_zero() {
            return Err(Error::NotACycle(format!("d(z) != 0 in {}", self.name)));
        }
        if z.is_zero() {
            return Ok(Some(LieElement::zero(z.degree + 1)));
        }
        if z.degree + 1 > self.truncation {
            return Ok(None);
        }
        let target = Matrix::column(Ring::Rationals, self.coords(z)?);
        let d = self.differential_matrix(z.degree + 1);
        Ok(solve(&d, &target).map(|x| {
            let p = self.piece(z.degree + 1);
            LieElement { degree: z.degree + 1, tensor: p.combine(&x.col(0)) }
        }))
    }

    /// Witness rendered as a bracket expression.
    pub fn boundary_witness_expr(&self, z: &LieElement) -> Result<Option<LieExpr>> {
        Ok(self.is_boundary(z)?.map(|u| {
            let p = self.piece(u.degree);
            match p.coords(&u.tensor) {
                Some(c) => p.combine_expr(&c),
                None => LieExpr::zero(),
            }
        }))
    }

    /// Boundaries B_k and a complement R_k inside the cycles, as coordinate
    /// columns in the degree-k basis.
    fn homology_frame(&self, k: i64) -> (Matrix, Matrix) {
        let dim = self.piece(k).dim();
        let z = kernel(&self.differential_matrix(k));
        let b = if k < self.truncation {
            let d = self.differential_matrix(k + 1);
            d.select_cols(&independent_columns(&d))
        } else {
            Matrix::zeros(Ring::Rationals, dim, 0)
        };
        let r = z.select_cols(&extend_basis(&b, &z));
        (b, r)
    }

    /// Cycle representatives of a basis of H_k.
    pub fn homology_representatives(&self, k: i64) -> Vec<LieElement> {
        if k < 1 || k > self.truncation {
            return Vec::new();
        }
        let (_, r) = self.homology_frame(k);
        let p = self.piece(k);
        (0..r.cols()).map(|j| LieElement { degree: k, tensor: p.combine(&r.col(j)) }).collect()
    }

    /// Coordinates of a cycle's class in the basis of `homology_representatives`.
    pub fn homology_class(&self, z: &LieElement) -> Result<Vec<Scalar>> {
        if !self.differential(z).is_zero() {
            return Err(Error::NotACycle(format!("d(z) != 0 in {}", self.name)));
        }
        if z.degree > self.truncation {
            return Ok(Vec::new());
        }
        let (b, r) = self.homology_frame(z.degree);
        let m = b.hstack(&r);
        let c = Matrix::column(Ring::Rationals, self.coords(z)?);
        let x = solve(&m, &c).expect("cycle outside boundaries + complement");
        Ok((b.cols()..m.cols()).map(|i| x[(i, 0)].clone()).collect())
    }

    /// Lie triple product of cycles u, v, w with bounding elements
    /// d(a_vw) = [v,w], d(a_wu) = [w,u], d(a_uv) = [u,v].
    pub fn lie_massey(
        &self,
        u: &LieElement,
        v: &LieElement,
        w: &LieElement,
        a_vw: &LieElement,
        a_wu: &LieElement,
        a_uv: &LieElement,
    ) -> Result<MasseyProduct> {
        for (name, x) in [("u", u), ("v", v), ("w", w)] {
            if !self.differential(x).is_zero() {
                return Err(Error::NotACycle(format!("{name} is not a cycle")));
            }
        }
        let checks = [
            ("a_vw", a_vw, self.bracket(v, w)),
            ("a_wu", a_wu, self.bracket(w, u)),
            ("a_uv", a_uv, self.bracket(u, v)),
        ];
        for (name, a, target) in &checks {
            let da = self.differential(a);
            if da.tensor != target.tensor || (!a.is_zero() && a.degree != target.degree + 1) {
                return Err(Error::Precondition(format!("bounding condition fails for {name}")));
            }
        }
        let (p, q, r) = (u.degree, v.degree, w.degree);
        let k = massey_coeffs(p, q, r);
        let degree = p + q + r + 1;
        let mut rep = LieElement::zero(degree);
        for (c, (x, a)) in k.iter().zip([(u, a_vw), (v, a_wu), (w, a_uv)]) {
            rep = rep.plus(&self.bracket(x, a).scale(&int(*c)));
        }
        debug_assert!(self.differential(&rep).is_zero());
        if degree > self.truncation {
            return Ok(MasseyProduct { degree, representative: rep, class: Vec::new(), indeterminacy: Vec::new(), vanishes: true });
        }
        let class = self.homology_class(&rep)?;
        let mut gens = Vec::new();
        for (x, other) in [(u, q + r + 1), (v, r + p + 1), (w, p + q + 1)] {
            for h in self.homology_representatives(other) {
                gens.push(self.homology_class(&self.bracket(x, &h))?);
            }
        }
        let hdim = class.len();
        let indeterminacy = span_basis(&gens, hdim);
        let vanishes = if hdim == 0 {
            true
        } else {
            let mut m = Matrix::zeros(Ring::Rationals, hdim, indeterminacy.len());
            for (j, g) in indeterminacy.iter().enumerate() {
                for i in 0..hdim {
                    m[(i, j)] = g[i].clone();
                }
            }
            solve(&m, &Matrix::column(Ring::Rationals, class.clone())).is_some()
        };
        Ok(MasseyProduct { degree, representative: rep, class, indeterminacy, vanishes })
    }

    /// Whether the given degree-n classes freely replace the degree-n generators:
    /// their indecomposable parts form an invertible matrix against them.
    pub fn generation_check(&self, classes: &[LieElement], n: i64) -> Result<bool> {
        for c in classes {
            if c.degree != n && !c.is_zero() {
                return Err(Error::Degree(format!("class of degree {} in a degree-{n} check", c.degree)));
            }
        }
        let gens: Vec<usize> = (0..self.gens.len()).filter(|&i| self.degs[i] == n).collect();
        if gens.len() != classes.len() {
            return Ok(false);
        }
        if gens.is_empty() {
            return Ok(true);
        }
        let mut m = Matrix::zeros(Ring::Rationals, gens.len(), classes.len());
        for (j, c) in classes.iter().enumerate() {
            for (i, &g) in gens.iter().enumerate() {
                m[(i, j)] = c.tensor.coeff(&[g as u32]);
            }
        }
        Ok(is_invertible(&m))
    }

    /// Graded antisymmetry residue expand([u,v]) + (-1)^{|u||v|} expand([v,u]).
    pub fn antisymmetry_residue(&self, u: &LieElement, v: &LieElement) -> LieElement {
        let uv = self.bracket(u, v);
        let vu = self.bracket(v, u);
        uv.plus(&vu.scale(&int(koszul(u.degree, v.degree))))
    }

    /// Graded Jacobi residue (-1)^{|u||w|}[u,[v,w]] + cyclic.
    pub fn jacobi_residue(&self, u: &LieElement, v: &LieElement, w: &LieElement) -> LieElement {
        let (p, q, r) = (u.degree, v.degree, w.degree);
        let a = self.bracket(u, &self.bracket(v, w)).scale(&int(koszul(p, r)));
        let b = self.bracket(v, &self.bracket(w, u)).scale(&int(koszul(q, p)));
        let c = self.bracket(w, &self.bracket(u, v)).scale(&int(koszul(r, q)));
        a.plus(&b).plus(&c)
    }

    /// Leibniz residue d[u,v] - [du,v] - (-1)^{|u|}[u,dv].
    pub fn leibniz_residue(&self, u: &LieElement, v: &LieElement) -> LieElement {
        let lhs = self.differential(&self.bracket(u, v));
        let a = self.bracket(&self.differential(u), v);
        let b = self.bracket(u, &self.differential(v)).scale(&int(leibniz(u.degree)));
        lhs.minus(&a).minus(&b)
    }

    /// Element from basis coordinates.
    pub fn from_coords(&self, degree: i64, coeffs: &[Scalar]) -> LieElement {
        LieElement { degree, tensor: self.piece(degree).combine(coeffs) }
    }

    /// Render an element as a bracket expression over the chosen basis.
    pub fn to_expr(&self, e: &LieElement) -> LieExpr {
        if e.is_zero() {
            return LieExpr::zero();
        }
        let p = self.piece(e.degree);
        match p.coords(&e.tensor) {
            Some(c) => p.combine_expr(&c),
            None => LieExpr::zero(),
        }
    }
}

/// Basis (row-reduced) of the span of coordinate vectors over Q.
pub fn span_basis(gens: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if gens.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut m = Matrix::zeros(Ring::Rationals, dim, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for i in 0..dim {
            m[(i, j)] = g[i].clone();
        }
    }
    let cols = independent_columns(&m);
    cols.into_iter().map(|j| gens[j].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::expr::LieExpr as E;

    fn three_even() -> FreeDGL {
        FreeDGL::new(
            "T",
            vec![Generator::new("a", 2), Generator::new("b", 2), Generator::new("c", 2)],
            12,
        )
        .unwrap()
    }

    #[test]
    fn even_self_bracket_vanishes() {
        let d = three_even();
        let aa = d.expand(&E::bracket(E::gen("a"), E::gen("a"))).unwrap();
        assert!(aa.is_zero());
    }

    #[test]
    fn nested_bracket_expansion() {
        let d = three_even();
        let e = d.expand(&E::bracket(E::gen("a"), E::bracket(E::gen("b"), E::gen("c")))).unwrap();
        // abc - acb - bca + cba
        let mut t = Tensor::zero();
        t.add_term(vec![0, 1, 2], int(1));
        t.add_term(vec![0, 2, 1], int(-1));
        t.add_term(vec![1, 2, 0], int(-1));
        t.add_term(vec![2, 1, 0], int(1));
        assert_eq!(e.tensor, t);
    }

    #[test]
    fn odd_generator_pieces() {
        let d = FreeDGL::new("O", vec![Generator::new("x", 3)], 12).unwrap();
        assert_eq!(d.piece(3).dim(), 1);
        assert_eq!(d.piece(6).dim(), 1);
        assert_eq!(d.piece(9).dim(), 0);
        let one_even = FreeDGL::new("E", vec![Generator::new("a", 2)], 8).unwrap();
        assert_eq!(one_even.piece(4).dim(), 0);
    }

    #[test]
    fn two_generators_degree_four() {
        let d = FreeDGL::new("P", vec![Generator::new("a", 2), Generator::new("b", 2)], 8).unwrap();
        assert_eq!(d.piece(4).dim(), 1);
    }

    #[test]
    fn contractible_pair_has_no_homology() {
        let mut d = FreeDGL::new("C", vec![Generator::new("u", 3), Generator::new("v", 4)], 4).unwrap();
        d.set_differential("v", E::gen("u")).unwrap();
        assert!(d.check().passed);
        assert_eq!(d.homology_dim(3), 0);
        assert_eq!(d.homology_dim(4), 0);
    }

    #[test]
    fn generation_examples() {
        let d = three_even();
        let g = |s: &str| d.generator(s).unwrap();
        let ab = g("a").plus(&g("b"));
        assert!(d.generation_check(&[ab.clone(), g("b"), g("c")], 2).unwrap());
        assert!(!d.generation_check(&[ab.clone(), ab, g("c")], 2).unwrap());
        assert!(d.generation_check(&[g("a"), g("b"), g("c")], 2).unwrap());
    }
}
