//! Morphisms of free DGLs, given by their values on generators.

use super::dgl::{FreeDGL, LieElement};
use super::expr::LieExpr;
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct DGLMorphism {
    pub source: Arc<FreeDGL>,
    pub target: Arc<FreeDGL>,
    images: Vec<Tensor>,
    exprs: Vec<LieExpr>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismFailure {
    pub generator: String,
    pub kind: String,
    pub detail: String,
}

impl DGLMorphism {
    /// Generators missing from `values` map to zero.
    pub fn new(source: Arc<FreeDGL>, target: Arc<FreeDGL>, values: &[(&str, LieExpr)]) -> Result<Self> {
        let n = source.generators().len();
        let mut images = vec![Tensor::zero(); n];
        let mut exprs = vec![LieExpr::zero(); n];
        for (name, e) in values {
            let i = source.generator_index(name)?;
            let x = target.expand_at(e, source.degrees()[i])?;
            images[i] = x.tensor;
            exprs[i] = e.clone();
        }
        Ok(DGLMorphism { source, target, images, exprs })
    }

    pub fn image_expr(&self, name: &str) -> Result<&LieExpr> {
        Ok(&self.exprs[self.source.generator_index(name)?])
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        LieElement {
            degree: x.degree,
            tensor: x.tensor.substitute(&self.images, self.target.degrees(), self.target.truncation()),
        }
    }

    pub fn apply_expr(&self, e: &LieExpr) -> Result<LieElement> {
        Ok(self.apply(&self.source.expand(e)?))
    }

    pub fn compose(&self, first: &DGLMorphism) -> DGLMorphism {
        let images = first
            .images
            .iter()
            .map(|t| t.substitute(&self.images, self.target.degrees(), self.target.truncation()))
            .collect::<Vec<_>>();
        let exprs = images
            .iter()
            .zip(first.source.degrees())
            .map(|(t, &d)| self.target.to_expr(&LieElement { degree: d, tensor: t.clone() }))
            .collect();
        DGLMorphism { source: first.source.clone(), target: self.target.clone(), images, exprs }
    }

    /// Degree preservation and compatibility with differentials on generators.
    pub fn check(&self) -> Vec<MorphismFailure> {
        let mut out = Vec::new();
        for (i, g) in self.source.generators().iter().enumerate() {
            let img = LieElement { degree: g.degree, tensor: self.images[i].clone() };
            if !img.is_zero() {
                match self.target.expression_degree(&self.exprs[i]) {
                    Ok(Some(d)) if d != g.degree => out.push(MorphismFailure {
                        generator: g.name.clone(),
                        kind: "degree".into(),
                        detail: format!("image has degree {d}, expected {}", g.degree),
                    }),
                    Err(e) => out.push(MorphismFailure {
                        generator: g.name.clone(),
                        kind: "degree".into(),
                        detail: e.to_string(),
                    }),
                    _ => {}
                }
            }
            if g.degree > self.source.truncation() {
                continue;
            }
            let x = self.source.generator(&g.name).unwrap();
            let lhs = self.apply(&self.source.differential(&x));
            let rhs = self.target.differential(&img);
            if lhs.tensor != rhs.tensor {
                out.push(MorphismFailure {
                    generator: g.name.clone(),
                    kind: "differential".into(),
                    detail: format!(
                        "phi(d {}) = {} but d(phi {}) = {}",
                        g.name,
                        self.target.to_expr(&lhs),
                        g.name,
                        self.target.to_expr(&rhs)
                    ),
                });
            }
        }
        out
    }

    /// Matrix of the induced map on degree-t pieces.
    pub fn linearize(&self, t: i64) -> Result<Matrix> {
        let src = self.source.piece(t);
        let tgt = self.target.piece(t);
        let mut m = Matrix::zeros(Ring::Rationals, tgt.dim(), src.dim());
        for (j, b) in src.basis.iter().enumerate() {
            let img = b.substitute(&self.images, self.target.degrees(), self.target.truncation());
            let c = tgt
                .coords(&img)
                .ok_or_else(|| Error::Precondition(format!("image of a degree-{t} basis element is not a Lie element")))?;
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }
}
