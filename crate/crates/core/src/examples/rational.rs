//! The rational pair A, B: identical homology, distinguished by a Lie triple
//! product that bounds in A and survives in B.

use crate::error::{Error, Result};
use crate::lie::{FreeDGL, Generator, LieElement, LieExpr};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct RationalExamplePair {
    pub m: i64,
    pub a: Arc<FreeDGL>,
    pub b: Arc<FreeDGL>,
}

fn br(x: &str, y: &str) -> LieExpr {
    LieExpr::bracket(LieExpr::gen(x), LieExpr::gen(y))
}

/// f = [a,x] + [b,y] + [c,z]
pub fn massey_f() -> LieExpr {
    br("a", "x").plus(br("b", "y")).plus(br("c", "z"))
}

pub fn build_b(m: i64) -> Result<FreeDGL> {
    check_m(m)?;
    let gens = vec![
        Generator::new("a", m),
        Generator::new("b", m),
        Generator::new("c", m),
        Generator::new("x", 2 * m + 1),
        Generator::new("y", 2 * m + 1),
        Generator::new("z", 2 * m + 1),
    ];
    let mut d = FreeDGL::new("B", gens, 4 * m)?;
    set_xyz(&mut d)?;
    Ok(d)
}

pub fn build_a(m: i64) -> Result<FreeDGL> {
    check_m(m)?;
    let gens = vec![
        Generator::new("a", m),
        Generator::new("b", m),
        Generator::new("c", m),
        Generator::new("x", 2 * m + 1),
        Generator::new("y", 2 * m + 1),
        Generator::new("z", 2 * m + 1),
        Generator::new("w", 3 * m + 2),
        Generator::new("e", 3 * m + 1),
    ];
    let mut d = FreeDGL::new("A", gens, 4 * m)?;
    set_xyz(&mut d)?;
    d.set_differential("w", massey_f())?;
    Ok(d)
}

fn set_xyz(d: &mut FreeDGL) -> Result<()> {
    d.set_differential("x", br("b", "c"))?;
    d.set_differential("y", br("c", "a"))?;
    d.set_differential("z", br("a", "b"))?;
    Ok(())
}

fn check_m(m: i64) -> Result<()> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::Precondition(format!("m must be even and at least 2, got {m}")));
    }
    Ok(())
}

pub fn build_rational_pair(m: i64) -> Result<RationalExamplePair> {
    Ok(RationalExamplePair { m, a: Arc::new(build_a(m)?), b: Arc::new(build_b(m)?) })
}

impl RationalExamplePair {
    pub fn f_in(&self, d: &FreeDGL) -> LieElement {
        d.expand(&massey_f()).expect("f is well formed")
    }

    /// Every bracket of homology representatives of total degree within the
    /// truncation, with whether it bounds.
    pub fn bracket_survey(d: &FreeDGL) -> Vec<(i64, usize, i64, usize, bool)> {
        let top = d.truncation();
        let reps: Vec<(i64, Vec<LieElement>)> = (1..=top).map(|k| (k, d.homology_representatives(k))).collect();
        let mut out = Vec::new();
        for (k1, r1) in &reps {
            for (k2, r2) in &reps {
                if k1 > k2 || k1 + k2 > top {
                    continue;
                }
                for (i, u) in r1.iter().enumerate() {
                    for (j, v) in r2.iter().enumerate() {
                        let z = d.bracket(u, v);
                        let ok = d.is_boundary(&z).map(|w| w.is_some()).unwrap_or(false);
                        out.push((*k1, i, *k2, j, ok));
                    }
                }
            }
        }
        out
    }
}
