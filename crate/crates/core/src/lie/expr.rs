//! Syntax trees for Lie expressions: formal sums of bracket trees.

use crate::ring::{fmt_scalar, int, Scalar};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Gen(String),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

/// A formal sum `c_1 t_1 + c_2 t_2 + ...`; the empty sum is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieExpr {
    pub terms: Vec<(Scalar, Factor)>,
}

impl LieExpr {
    pub fn zero() -> Self {
        LieExpr { terms: Vec::new() }
    }

    pub fn gen(name: &str) -> Self {
        LieExpr { terms: vec![(Scalar::one(), Factor::Gen(name.to_string()))] }
    }

    pub fn bracket(a: LieExpr, b: LieExpr) -> Self {
        LieExpr { terms: vec![(Scalar::one(), Factor::Bracket(Box::new(a), Box::new(b)))] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(mut self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LieExpr::zero();
        }
        for t in self.terms.iter_mut() {
            t.0 = &t.0 * c;
        }
        self
    }

    pub fn neg(self) -> Self {
        self.scale(&int(-1))
    }

    pub fn plus(mut self, other: LieExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: LieExpr) -> Self {
        self.plus(other.neg())
    }

    /// Generator names in order of first appearance.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        for (_, f) in &self.terms {
            match f {
                Factor::Gen(g) => {
                    if !out.contains(g) {
                        out.push(g.clone());
                    }
                }
                Factor::Bracket(a, b) => {
                    a.collect(out);
                    b.collect(out);
                }
            }
        }
    }

    /// Rename every leaf.
    pub fn map_gens(&self, f: &dyn Fn(&str) -> String) -> LieExpr {
        LieExpr {
            terms: self
                .terms
                .iter()
                .map(|(c, fac)| {
                    let fac = match fac {
                        Factor::Gen(g) => Factor::Gen(f(g)),
                        Factor::Bracket(a, b) => {
                            Factor::Bracket(Box::new(a.map_gens(f)), Box::new(b.map_gens(f)))
                        }
                    };
                    (c.clone(), fac)
                })
                .collect(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gen(g) => write!(f, "{g}"),
            Factor::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<&(Scalar, Factor)> = self.terms.iter().filter(|t| !t.0.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, fac)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !mag.is_one() {
                write!(f, "{} ", fmt_scalar(&mag))?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_readable() {
        let e = LieExpr::bracket(LieExpr::gen("a"), LieExpr::gen("x"))
            .plus(LieExpr::gen("b").scale(&int(-2)));
        assert_eq!(e.to_string(), "[a, x] - 2 b");
        assert_eq!(LieExpr::zero().to_string(), "0");
        assert_eq!(e.generators(), vec!["a", "x", "b"]);
    }
}
