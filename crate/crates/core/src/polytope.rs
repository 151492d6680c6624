//! Folding polytopes P(n) and modified folding polytopes P̂(n) as quotients of
//! disjoint unions of n-simplices, with their boundary and edge subcomplexes
//! and integral homology.
//!
//! Facet i of Δⁿ is the face omitting vertex i. Facets are glued by the unique
//! order-preserving bijection of their vertex lists.

use crate::chaincx::FreeChainComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

type Face = Vec<usize>;

/// One identification: facet `facet_a` of simplex `a` with facet `facet_b` of
/// simplex `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gluing {
    pub a: usize,
    pub facet_a: usize,
    pub b: usize,
    pub facet_b: usize,
}

#[derive(Debug, Clone)]
pub struct GluedSimplicialComplex {
    pub n: usize,
    pub simplices: usize,
    pub gluings: Vec<Gluing>,
    /// Vertex class of vertex v of simplex k, at index k(n+1) + v.
    classes: Vec<usize>,
    /// Faces by dimension, as sorted vertex-class lists.
    faces: Vec<BTreeSet<Face>>,
}

#[derive(Debug, Clone)]
pub struct SubcomplexSelection {
    pub boundary: BTreeSet<Face>,
    pub edge: BTreeSet<Face>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn facet_vertices(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

fn closure(faces: impl IntoIterator<Item = Face>) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for f in faces {
        let k = f.len();
        for mask in 1u32..(1 << k) {
            let sub: Face = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            out.insert(sub);
        }
    }
    out
}

impl GluedSimplicialComplex {
    pub fn new(n: usize, simplices: usize, gluings: Vec<Gluing>) -> Result<Self> {
        let per = n + 1;
        let mut parent: Vec<usize> = (0..simplices * per).collect();
        for g in &gluings {
            if g.a >= simplices || g.b >= simplices || g.facet_a > n || g.facet_b > n {
                return Err(Error::Precondition(format!("gluing {g:?} refers to a missing facet")));
            }
            let va = facet_vertices(n, g.facet_a);
            let vb = facet_vertices(n, g.facet_b);
            for (x, y) in va.iter().zip(&vb) {
                let (rx, ry) = (find(&mut parent, g.a * per + x), find(&mut parent, g.b * per + y));
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        let mut ids = BTreeMap::new();
        let mut classes = Vec::with_capacity(parent.len());
        for x in 0..parent.len() {
            let r = find(&mut parent, x);
            let next = ids.len();
            classes.push(*ids.entry(r).or_insert(next));
        }
        for k in 0..simplices {
            let vs: BTreeSet<usize> = (0..per).map(|v| classes[k * per + v]).collect();
            if vs.len() != per {
                return Err(Error::Precondition(format!("the quotient collapses simplex {k}")));
            }
        }
        let mut c = GluedSimplicialComplex { n, simplices, gluings, classes, faces: Vec::new() };
        let all = closure((0..simplices).map(|k| c.simplex(k)));
        c.faces = vec![BTreeSet::new(); n + 1];
        for f in all {
            c.faces[f.len() - 1].insert(f);
        }
        Ok(c)
    }

    /// Vertex classes of simplex k, in vertex order.
    pub fn simplex(&self, k: usize) -> Face {
        let mut f: Face = (0..=self.n).map(|v| self.classes[k * (self.n + 1) + v]).collect();
        f.sort();
        f
    }

    pub fn facet(&self, k: usize, i: usize) -> Face {
        let mut f: Face = facet_vertices(self.n, i).iter().map(|v| self.classes[k * (self.n + 1) + v]).collect();
        f.sort();
        f
    }

    pub fn faces(&self, dim: usize) -> &BTreeSet<Face> {
        &self.faces[dim]
    }

    pub fn all_faces(&self) -> BTreeSet<Face> {
        self.faces.iter().flatten().cloned().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Codimension-one faces lying in exactly one top simplex, with closure.
    pub fn boundary(&self) -> BTreeSet<Face> {
        let mut count: BTreeMap<Face, usize> = BTreeMap::new();
        for k in 0..self.simplices {
            for i in 0..=self.n {
                *count.entry(self.facet(k, i)).or_default() += 1;
            }
        }
        closure(count.into_iter().filter(|(_, c)| *c == 1).map(|(f, _)| f))
    }

    /// True when no two top simplices share their vertex set and every
    /// identified facet was identified by an explicit gluing.
    pub fn quotient_is_faithful(&self) -> bool {
        let tops: BTreeSet<Face> = (0..self.simplices).map(|k| self.simplex(k)).collect();
        if tops.len() != self.simplices {
            return false;
        }
        let glued: BTreeSet<(usize, usize)> =
            self.gluings.iter().flat_map(|g| [(g.a, g.facet_a), (g.b, g.facet_b)]).collect();
        let mut seen: BTreeMap<Face, usize> = BTreeMap::new();
        for k in 0..self.simplices {
            for i in 0..=self.n {
                *seen.entry(self.facet(k, i)).or_default() += 1;
            }
        }
        (0..self.simplices).all(|k| {
            (0..=self.n).all(|i| {
                let shared = seen[&self.facet(k, i)] > 1;
                shared == glued.contains(&(k, i))
            })
        })
    }
}

/// P(n): n+1 simplices, ∂_n Δ_(k) glued to ∂_1 Δ_(k+1) for 0 <= k < n.
pub fn folding_polytope(n: usize) -> Result<(GluedSimplicialComplex, SubcomplexSelection)> {
    if n < 1 {
        return Err(Error::Precondition("folding polytopes start at n = 1".into()));
    }
    let gluings = (0..n).map(|k| Gluing { a: k, facet_a: n, b: k + 1, facet_b: 1 }).collect();
    let c = GluedSimplicialComplex::new(n, n + 1, gluings)?;
    let boundary = c.boundary();
    let edge = closure((1..=n).map(|k| c.facet(k, 0)));
    Ok((c, SubcomplexSelection { boundary, edge }))
}

/// P̂(n): n simplices Δ_(0), …, Δ_(n-1), ∂_n Δ_(j-1) glued to ∂_2 Δ_(j).
pub fn modified_folding_polytope(n: usize) -> Result<(GluedSimplicialComplex, SubcomplexSelection)> {
    if n < 1 {
        return Err(Error::Precondition("modified folding polytopes start at n = 1".into()));
    }
    let gluings = (1..n).map(|j| Gluing { a: j - 1, facet_a: n, b: j, facet_b: 2 }).collect();
    let c = GluedSimplicialComplex::new(n, n, gluings)?;
    let boundary = c.boundary();
    Ok((c, SubcomplexSelection { boundary, edge: BTreeSet::new() }))
}

/// Simplicial chains of `faces` over ℤ; with `augmented`, a rank-one
/// degree -1 term makes the homology reduced.
pub fn chain_complex(faces: &BTreeSet<Face>, augmented: bool) -> FreeChainComplex {
    relative_chain_complex(faces, &BTreeSet::new(), augmented)
}

/// Chains of `faces` modulo chains of `sub`.
pub fn relative_chain_complex(faces: &BTreeSet<Face>, sub: &BTreeSet<Face>, augmented: bool) -> FreeChainComplex {
    let z = Ring::Integers;
    let mut by_dim: BTreeMap<i64, Vec<&Face>> = BTreeMap::new();
    for f in faces.iter().filter(|f| !sub.contains(*f)) {
        by_dim.entry(f.len() as i64 - 1).or_default().push(f);
    }
    let mut c = FreeChainComplex::zero(z);
    for (&d, fs) in &by_dim {
        c.set_rank(d, fs.len());
        c.set_labels(d, fs.iter().map(|f| format!("{f:?}")).collect()).unwrap();
    }
    if augmented && !by_dim.is_empty() {
        c.set_rank(-1, 1);
    }
    for (&d, fs) in &by_dim {
        if d == 0 {
            if augmented {
                c.set_boundary(0, Matrix::from_i64(z, 1, fs.len(), &vec![1; fs.len()])).unwrap();
            }
            continue;
        }
        let Some(below) = by_dim.get(&(d - 1)) else { continue };
        let pos: BTreeMap<&Face, usize> = below.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut m = Matrix::zeros(z, below.len(), fs.len());
        for (j, f) in fs.iter().enumerate() {
            for i in 0..f.len() {
                let mut g = (*f).clone();
                g.remove(i);
                if let Some(&r) = pos.get(&g) {
                    m[(r, j)] = crate::ring::int(if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        c.set_boundary(d, m).unwrap();
    }
    c
}

fn homology_list(c: &FreeChainComplex, lo: i64, hi: i64) -> Vec<String> {
    (lo..=hi).map(|d| c.homology(d).describe()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub n: usize,
    pub modified: bool,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub faithful_quotient: bool,
    /// Reduced homology in degrees 0..=n.
    pub polytope: Vec<String>,
    pub boundary: Vec<String>,
    /// Empty for P̂(n).
    pub edge: Vec<String>,
    /// H_d(P, ∂P) in degrees 0..=n.
    pub relative: Vec<String>,
    pub boundary_f_vector: Vec<usize>,
    pub edge_f_vector: Vec<usize>,
    pub is_ball: bool,
    pub boundary_is_sphere: bool,
    pub edge_is_acyclic: bool,
    pub relative_is_top_class: bool,
}

fn f_vector_of(faces: &BTreeSet<Face>, n: usize) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    for f in faces {
        v[f.len() - 1] += 1;
    }
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn homology_report(c: &GluedSimplicialComplex, sel: &SubcomplexSelection, modified: bool) -> HomologyReport {
    let n = c.n as i64;
    let all = c.all_faces();
    let polytope = homology_list(&chain_complex(&all, true), 0, n);
    let boundary = homology_list(&chain_complex(&sel.boundary, true), 0, n);
    let edge = if modified { Vec::new() } else { homology_list(&chain_complex(&sel.edge, true), 0, n) };
    let relative = homology_list(&relative_chain_complex(&all, &sel.boundary, false), 0, n);
    let zero = |v: &[String]| v.iter().all(|s| s == "0");
    let sphere = (0..=n).all(|d| boundary[d as usize] == if d == n - 1 { "Z" } else { "0" });
    let top = (0..=n).all(|d| relative[d as usize] == if d == n { "Z" } else { "0" });
    HomologyReport {
        n: c.n,
        modified,
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        faithful_quotient: c.quotient_is_faithful(),
        is_ball: zero(&polytope) && c.euler_characteristic() == 1,
        boundary_is_sphere: sphere,
        edge_is_acyclic: !modified && zero(&edge),
        relative_is_top_class: top,
        boundary_f_vector: f_vector_of(&sel.boundary, c.n),
        edge_f_vector: f_vector_of(&sel.edge, c.n),
        polytope,
        boundary,
        edge,
        relative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetRole {
    /// One of the first k+1 facets, matching a facet of Δ^k.
    Simplicial,
    /// Sent to the basepoint.
    Suspension,
    /// The last facet, glued to the 1-facet of the next simplex.
    ConeBase,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetEntry {
    pub simplex: usize,
    pub facet: usize,
    pub role: FacetRole,
    pub glued_with: Option<(usize, usize)>,
    pub in_edge: bool,
    pub in_boundary: bool,
}

/// The role of every facet of every Δⁿ_(k) in P(n).
pub fn face_conditions_table(n: usize) -> Result<Vec<FacetEntry>> {
    let (c, sel) = folding_polytope(n)?;
    let mut out = Vec::new();
    for k in 0..=n {
        for i in 0..=n {
            let role = if i <= k {
                FacetRole::Simplicial
            } else if i < n {
                FacetRole::Suspension
            } else {
                FacetRole::ConeBase
            };
            let glued_with = c.gluings.iter().find_map(|g| {
                if (g.a, g.facet_a) == (k, i) {
                    Some((g.b, g.facet_b))
                } else if (g.b, g.facet_b) == (k, i) {
                    Some((g.a, g.facet_a))
                } else {
                    None
                }
            });
            let f = c.facet(k, i);
            out.push(FacetEntry {
                simplex: k,
                facet: i,
                role,
                glued_with,
                in_edge: k >= 1 && i == 0,
                in_boundary: sel.boundary.contains(&f),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensional_f_vectors() {
        let (p1, s1) = folding_polytope(1).unwrap();
        assert_eq!(p1.f_vector(), vec![3, 2]);
        assert_eq!(s1.edge.len(), 1);
        let (p2, s2) = folding_polytope(2).unwrap();
        assert_eq!(p2.f_vector(), vec![5, 7, 3]);
        assert_eq!(p2.euler_characteristic(), 1);
        assert_eq!(f_vector_of(&s2.edge, 2), vec![3, 2]);
        let (q1, t1) = modified_folding_polytope(1).unwrap();
        assert_eq!(q1.f_vector(), vec![2, 1]);
        assert_eq!(f_vector_of(&t1.boundary, 1), vec![2]);
        let (q2, _) = modified_folding_polytope(2).unwrap();
        assert_eq!(q2.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn p2_is_a_disk_with_contractible_edge() {
        let (c, s) = folding_polytope(2).unwrap();
        let r = homology_report(&c, &s, false);
        assert_eq!(r.polytope, ["0", "0", "0"]);
        assert_eq!(r.boundary, ["0", "Z", "0"]);
        assert_eq!(r.edge, ["0", "0", "0"]);
        assert!(r.is_ball && r.boundary_is_sphere && r.edge_is_acyclic && r.relative_is_top_class && r.faithful_quotient);
    }

    #[test]
    fn sweep_through_five() {
        for n in 1..=5 {
            let (c, s) = folding_polytope(n).unwrap();
            let r = homology_report(&c, &s, false);
            assert!(r.is_ball && r.boundary_is_sphere && r.edge_is_acyclic && r.relative_is_top_class, "P({n}): {r:?}");
            assert!(s.edge.is_subset(&s.boundary));
            let (c, s) = modified_folding_polytope(n).unwrap();
            let r = homology_report(&c, &s, true);
            assert!(r.is_ball && r.boundary_is_sphere, "modified P({n}): {r:?}");
            assert_eq!(c.gluings.len(), n - 1);
        }
        assert_eq!(folding_polytope(6).unwrap().0.euler_characteristic(), 1);
        assert_eq!(modified_folding_polytope(6).unwrap().0.euler_characteristic(), 1);
    }

    #[test]
    fn facet_roles_for_the_tetrahedra() {
        let t = face_conditions_table(3).unwrap();
        let row = |k: usize, i: usize| t.iter().find(|e| e.simplex == k && e.facet == i).unwrap();
        assert_eq!(row(0, 3).role, FacetRole::ConeBase);
        assert_eq!(row(0, 3).glued_with, Some((1, 1)));
        assert_eq!(row(0, 1).role, FacetRole::Suspension);
        assert_eq!(row(0, 2).role, FacetRole::Suspension);
        assert_eq!(row(0, 0).role, FacetRole::Simplicial);
        let glued = t.iter().filter(|e| e.glued_with.is_some()).count();
        assert_eq!(glued, 2 * 3);
        assert!(t.iter().filter(|e| e.in_edge).all(|e| e.in_boundary));
    }

    #[test]
    fn interval_facet_labels() {
        let t = face_conditions_table(1).unwrap();
        let roles: Vec<(usize, usize, FacetRole, bool)> = t.iter().map(|e| (e.simplex, e.facet, e.role, e.in_edge)).collect();
        assert_eq!(
            roles,
            [
                (0, 0, FacetRole::Simplicial, false),
                (0, 1, FacetRole::ConeBase, false),
                (1, 0, FacetRole::Simplicial, true),
                (1, 1, FacetRole::Simplicial, false),
            ]
        );
    }
}
