//! Finitely generated homology groups with explicit coordinates, and cosets
//! of subgroups in them.

use crate::linalg::{kernel, smith_normal_form, solve, Lattice};
use crate::matrix::Matrix;
use crate::ring::{fmt_scalar, Ring, Scalar};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

/// H = ker(d_out) / im(d_in), presented as Z^r + sum Z/t_i (or a vector space).
#[derive(Debug, Clone)]
pub struct HomologyGroup {
    ring: Ring,
    cycles: Matrix,
    u: Matrix,
    keep: Vec<usize>,
    moduli: Vec<Scalar>,
    generators: Vec<Vec<Scalar>>,
}

impl HomologyGroup {
    /// `d_out`: C_n -> C_{n-1}; `d_in`: C_{n+1} -> C_n.
    pub fn new(d_out: &Matrix, d_in: &Matrix) -> Self {
        let ring = d_out.ring();
        let k = kernel(d_out);
        let z = k.cols();
        let bc = if d_in.cols() == 0 || z == 0 {
            Matrix::zeros(ring, z, 0)
        } else {
            solve(&k, d_in).expect("boundaries must lie in the cycles")
        };
        let s = smith_normal_form(&bc);
        let mut keep = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..z {
            if i < s.rank {
                let d = s.d[(i, i)].clone();
                if !ring.is_unit(&d) {
                    keep.push(i);
                    moduli.push(d);
                }
            } else {
                keep.push(i);
                moduli.push(Scalar::zero());
            }
        }
        let u_inv = if z == 0 { Matrix::zeros(ring, 0, 0) } else { solve(&s.u, &Matrix::identity(ring, z)).unwrap() };
        let generators = keep.iter().map(|&i| k.mul(&u_inv.col_matrix(i)).col(0)).collect();
        HomologyGroup { ring, cycles: k, u: s.u, keep, moduli, generators }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coordinate_count(&self) -> usize {
        self.keep.len()
    }

    pub fn moduli(&self) -> &[Scalar] {
        &self.moduli
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<Scalar> {
        self.moduli.iter().filter(|m| !m.is_zero()).cloned().collect()
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion().iter().map(fmt_scalar).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.keep.is_empty()
    }

    /// Cycles representing the coordinate generators.
    pub fn generator_cycles(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    /// Reduced coordinates of the class of `z`, or `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.cycles.cols() == 0 {
            return z.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        let c = solve(&self.cycles, &Matrix::column(self.ring, z.to_vec()))?;
        let y = self.u.mul(&c);
        Some(
            self.keep
                .iter()
                .zip(&self.moduli)
                .map(|(&i, m)| {
                    let v = y[(i, 0)].clone();
                    if m.is_zero() || self.ring.is_field() {
                        v
                    } else {
                        Scalar::from_integer(v.to_integer().mod_floor(&m.to_integer()))
                    }
                })
                .collect(),
        )
    }

    pub fn is_zero_class(&self, z: &[Scalar]) -> Option<bool> {
        self.class_of(z).map(|c| c.iter().all(|x| x.is_zero()))
    }

    pub fn relation_lattice(&self, extra: &[Vec<Scalar>]) -> Lattice {
        let n = self.coordinate_count();
        let mut gens: Vec<Vec<Scalar>> = extra.to_vec();
        for (i, m) in self.moduli.iter().enumerate() {
            if !m.is_zero() {
                let mut v = vec![Scalar::zero(); n];
                v[i] = m.clone();
                gens.push(v);
            }
        }
        Lattice::from_generators(self.ring, n, &gens)
    }

    pub fn describe(&self) -> String {
        let ring = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::PrimeField(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        let free = self.free_rank();
        if free == 1 {
            parts.push(ring.clone());
        } else if free > 1 {
            parts.push(format!("{ring}^{free}"));
        }
        for t in self.torsion() {
            parts.push(format!("Z/{}", fmt_scalar(&t)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Coset rep + <gens> of classes given by cycles.
    pub fn coset(&self, rep: &[Scalar], gens: &[Vec<Scalar>]) -> Coset {
        let rep_c = self.class_of(rep).expect("coset representative must be a cycle");
        let gen_c: Vec<Vec<Scalar>> = gens.iter().map(|g| self.class_of(g).expect("indeterminacy generator must be a cycle")).collect();
        self.coset_from_coords(rep_c, &gen_c)
    }

    pub fn coset_from_coords(&self, rep: Vec<Scalar>, gens: &[Vec<Scalar>]) -> Coset {
        let lat = self.relation_lattice(gens);
        let reduced = lat.reduce(&rep);
        let contains_zero = reduced.iter().all(|x| x.is_zero());
        let relations = self.relation_lattice(&[]);
        let mut shown = Vec::new();
        for g in lat.generators() {
            let r = relations.reduce(g);
            if r.iter().any(|x| !x.is_zero()) && !shown.contains(g) {
                shown.push(g.clone());
            }
        }
        Coset { group: self.describe(), representative: reduced, generators: shown, contains_zero }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub group: String,
    pub representative: Vec<Scalar>,
    pub generators: Vec<Vec<Scalar>>,
    pub contains_zero: bool,
}

/// Serializable view: elements as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketCoset {
    pub group: String,
    pub representative: String,
    pub indeterminacy: Vec<String>,
    pub contains_zero: bool,
}

pub fn fmt_element(v: &[Scalar]) -> String {
    match v.len() {
        0 => "0".into(),
        1 => fmt_scalar(&v[0]),
        _ => format!("({})", v.iter().map(fmt_scalar).collect::<Vec<_>>().join(", ")),
    }
}

impl Coset {
    pub fn view(&self) -> BracketCoset {
        BracketCoset {
            group: self.group.clone(),
            representative: fmt_element(&self.representative),
            indeterminacy: self.generators.iter().map(|g| fmt_element(g)).collect(),
            contains_zero: self.contains_zero,
        }
    }

    /// Membership of a coordinate vector in the coset.
    pub fn contains(&self, ring: Ring, moduli: &[Scalar], v: &[Scalar]) -> bool {
        let n = v.len();
        let mut gens = self.generators.clone();
        for (i, m) in moduli.iter().enumerate() {
            if !m.is_zero() {
                let mut e = vec![Scalar::zero(); n];
                e[i] = m.clone();
                gens.push(e);
            }
        }
        let lat = Lattice::from_generators(ring, n, &gens);
        let diff: Vec<Scalar> = v.iter().zip(&self.representative).map(|(a, b)| ring.sub(a, b)).collect();
        lat.contains(&diff)
    }
}
