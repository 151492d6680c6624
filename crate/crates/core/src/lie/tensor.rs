//! Tensor-algebra normal form: sparse maps from words to coefficients.

use crate::conventions::koszul;
use crate::ring::{int, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

pub type Word = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Tensor {
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn letter(g: u32) -> Self {
        let mut t = Tensor::zero();
        t.terms.insert(vec![g], int(1));
        t
    }

    pub fn unit() -> Self {
        let mut t = Tensor::zero();
        t.terms.insert(Vec::new(), int(1));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u32]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn plus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        out
    }

    pub fn minus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(self, c);
        out
    }

    /// Concatenation product, dropping words whose degree exceeds `cap`.
    pub fn mul(&self, other: &Tensor, degs: &[i64], cap: i64) -> Tensor {
        let mut out = Tensor::zero();
        for (w1, c1) in &self.terms {
            let d1 = word_degree(w1, degs);
            for (w2, c2) in &other.terms {
                if d1 + word_degree(w2, degs) > cap {
                    continue;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Graded commutator uv - (-1)^{|u||v|} vu of homogeneous tensors.
    pub fn bracket(&self, du: i64, other: &Tensor, dv: i64, degs: &[i64], cap: i64) -> Tensor {
        if du + dv > cap {
            return Tensor::zero();
        }
        let mut out = self.mul(other, degs, cap);
        out.add_scaled(&other.mul(self, degs, cap), &int(-koszul(du, dv)));
        out
    }

    /// Apply a derivation of degree `shift` given on letters.
    pub fn derive(&self, images: &[Tensor], shift: i64, degs: &[i64], cap: i64) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            let mut prefix_deg = 0;
            for i in 0..w.len() {
                let img = &images[w[i] as usize];
                if !img.is_zero() {
                    let s = crate::conventions::sign(prefix_deg * shift);
                    let left = Tensor::from_word(w[..i].to_vec());
                    let right = Tensor::from_word(w[i + 1..].to_vec());
                    let piece = left.mul(img, degs, cap).mul(&right, degs, cap);
                    out.add_scaled(&piece, &(c * int(s)));
                }
                prefix_deg += degs[w[i] as usize];
            }
        }
        out
    }

    /// Apply an algebra map given on letters.
    pub fn substitute(&self, images: &[Tensor], img_degs: &[i64], cap: i64) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            let mut acc = Tensor::unit();
            for &g in w {
                acc = acc.mul(&images[g as usize], img_degs, cap);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn from_word(w: Word) -> Tensor {
        let mut t = Tensor::zero();
        t.terms.insert(w, int(1));
        t
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }
}

pub fn word_degree(w: &[u32], degs: &[i64]) -> i64 {
    w.iter().map(|&g| degs[g as usize]).sum()
}
