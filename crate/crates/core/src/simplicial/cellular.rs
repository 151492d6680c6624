//! Cellular simplicial objects: a list of nondegenerate blocks, each a complex
//! Ḡ sitting in one simplicial dimension r with prescribed faces into X_{r-1}.
//! Level X_k is the sum over blocks (r <= k) and surjections θ: [k] ->> [r]
//! of copies θ*Ḡ; faces and degeneracies follow from the simplicial
//! identities. Summands are ordered by block, then θ lexicographically, so new
//! blocks only ever append.

use super::object::SimplicialObject;
use crate::chaincx::sub::DirectSum;
use crate::chaincx::{FreeChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::ring::Ring;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// All order-preserving surjections [k] ->> [r], as value lists θ(0..=k).
pub fn surjections(k: i64, r: i64) -> Vec<Vec<usize>> {
    if k < r || r < -1 {
        return Vec::new();
    }
    if r == -1 {
        return if k == -1 { vec![Vec::new()] } else { Vec::new() };
    }
    let (k, r) = (k as usize, r as usize);
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn go(cur: &mut Vec<usize>, k: usize, r: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            if *cur.last().unwrap() == r {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let left = k + 1 - cur.len();
        for step in 0..=1 {
            let v = last + step;
            if v > r || r - v > left - 1 {
                continue;
            }
            cur.push(v);
            go(cur, k, r, out);
            cur.pop();
        }
    }
    go(&mut cur, k, r, &mut out);
    out
}

/// Binomial coefficient.
pub fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Indices j with θ(j) = θ(j+1).
pub fn degeneracy_labels(theta: &[usize]) -> Vec<usize> {
    (0..theta.len().saturating_sub(1)).filter(|&j| theta[j] == theta[j + 1]).collect()
}

/// Epi-mono factorization of a monotone map [a] -> [r] given by values.
/// Returns (ε values, image list).
pub(crate) fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = values.to_vec();
    image.dedup();
    let eps = values.iter().map(|v| image.iter().position(|x| x == v).unwrap()).collect();
    (eps, image)
}

#[derive(Debug, Clone)]
pub struct CellBlock {
    pub name: String,
    pub dim: i64,
    pub complex: Arc<FreeChainComplex>,
    /// d_0..d_dim into X_{dim-1} as it stood when the block was attached.
    pub faces: Vec<GradedMap>,
}

#[derive(Debug, Clone)]
pub struct CellularObject {
    ring: Ring,
    blocks: Vec<CellBlock>,
    top: i64,
    summands: Vec<Vec<(usize, Vec<usize>)>>,
    sums: Vec<DirectSum>,
    object: SimplicialObject,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatchEntry {
    pub block: String,
    pub block_dim: i64,
    pub theta: Vec<usize>,
    /// Indices j with θ(j) = θ(j+1); s_I applies them in ascending order.
    pub label: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatchingDecomposition {
    pub n: i64,
    pub entries: Vec<LatchEntry>,
    /// copies of Ḡ_k in L_n by k, from the surjection count C(n, k)
    pub copies: BTreeMap<i64, usize>,
    /// the count printed with sequences of length n-k-1, C(n, n-k-1)
    pub printed_copies: BTreeMap<i64, usize>,
    pub printed_count_matches: bool,
    pub rank: usize,
    /// rank of the span of all degeneracy images s_j(X_{n-1}) in X_n
    pub direct_rank: usize,
    /// σ_n∘inc_θ equals the iterated degeneracy s_I on every entry
    pub factorizations_hold: bool,
}

/// Pad a map into a prefix of a cellular level out to the full level.
fn embed(map: &GradedMap, target: &Arc<FreeChainComplex>) -> GradedMap {
    let ring = map.ring();
    let mut mats = BTreeMap::new();
    for (&t, m) in map.components() {
        let mut big = Matrix::zeros(ring, target.rank(t + map.shift()), m.cols());
        big.paste(0, 0, m);
        mats.insert(t, big);
    }
    GradedMap::new(map.source().clone(), target.clone(), map.shift(), mats).unwrap()
}

impl CellularObject {
    /// The object with no blocks, truncated at dimension `top`.
    pub fn empty(ring: Ring, top: i64) -> Self {
        let mut c = CellularObject {
            ring,
            blocks: Vec::new(),
            top,
            summands: Vec::new(),
            sums: Vec::new(),
            object: SimplicialObject::new(ring, vec![Arc::new(FreeChainComplex::zero(ring))], Vec::new()).unwrap(),
        };
        c.materialize().unwrap();
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn blocks(&self) -> &[CellBlock] {
        &self.blocks
    }

    pub fn object(&self) -> &SimplicialObject {
        &self.object
    }

    pub fn level(&self, k: i64) -> &Arc<FreeChainComplex> {
        self.object.level(k)
    }

    pub fn block_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.name == name)
    }

    /// Summands of X_k as (block index, θ).
    pub fn summands(&self, k: i64) -> &[(usize, Vec<usize>)] {
        &self.summands[(k + 1) as usize]
    }

    /// Inclusion of the summand θ*Ḡ_b into X_k.
    pub fn summand_inj(&self, k: i64, block: usize, theta: &[usize]) -> GradedMap {
        let idx = self.summands(k).iter().position(|(b, t)| *b == block && t == theta).expect("summand exists");
        self.sums[(k + 1) as usize].inj(idx)
    }

    pub fn summand_proj(&self, k: i64, block: usize, theta: &[usize]) -> GradedMap {
        let idx = self.summands(k).iter().position(|(b, t)| *b == block && t == theta).expect("summand exists");
        self.sums[(k + 1) as usize].proj(idx)
    }

    /// Inclusion of the nondegenerate copy of block b into X_{dim b}.
    pub fn cell_inj(&self, block: usize) -> GradedMap {
        let r = self.blocks[block].dim;
        let id: Vec<usize> = (0..=r).map(|x| x as usize).collect();
        self.summand_inj(r, block, if r < 0 { &[] } else { &id })
    }

    /// Attach a block in dimension `dim` with faces d_0..d_dim into X_{dim-1}.
    pub fn attach_block(&mut self, name: &str, dim: i64, complex: FreeChainComplex, faces: Vec<GradedMap>) -> Result<()> {
        if dim < -1 {
            return Err(Error::Degree("blocks live in dimension >= -1".into()));
        }
        if self.block_index(name).is_some() {
            return Err(Error::Precondition(format!("block `{name}` already exists")));
        }
        let expected = if dim < 0 { 0 } else { (dim + 1) as usize };
        if faces.len() != expected {
            return Err(Error::Shape(format!("block `{name}` needs {expected} faces")));
        }
        let complex = Arc::new(complex);
        if dim >= 0 {
            let below = self.level_or_zero(dim - 1);
            for f in &faces {
                if **f.source() != *complex || f.target().degrees().iter().any(|&t| f.target().rank(t) > below.rank(t)) {
                    return Err(Error::Shape(format!("faces of `{name}` must map Ḡ into X_{}", dim - 1)));
                }
            }
        }
        let saved = (self.blocks.clone(), self.top, self.summands.clone(), self.sums.clone(), self.object.clone());
        self.blocks.push(CellBlock { name: name.to_string(), dim, complex, faces });
        self.top = self.top.max(dim);
        let res = self.materialize().and_then(|_| {
            let r = self.object.check_identities();
            if r.passed {
                Ok(())
            } else {
                Err(Error::Precondition(format!("attaching `{name}` breaks the simplicial identities at {:?}", r.failures)))
            }
        });
        if res.is_err() {
            (self.blocks, self.top, self.summands, self.sums, self.object) = saved;
        }
        res
    }

    /// CW attachment: d_0 = attaching (into the Moore cycles), higher faces 0.
    pub fn attach_cw(&mut self, name: &str, complex: FreeChainComplex, attaching: GradedMap) -> Result<()> {
        let n = self.top + 1;
        let target = self.level_or_zero(n - 1);
        let attaching = embed(&attaching, &target);
        if n >= 1 {
            for f in self.object.faces(n - 1) {
                if !f.compose(&attaching).is_zero() {
                    return Err(Error::Precondition("attaching map does not land in the Moore cycles".into()));
                }
            }
        }
        let zero = GradedMap::zero(attaching.source().clone(), target, 0);
        let mut faces = vec![attaching];
        faces.extend((1..=n).map(|_| zero.clone()));
        self.attach_block(name, n, complex, faces)
    }

    /// Raise the truncation without new blocks (adds degenerate levels).
    pub fn extend_top(&mut self, top: i64) -> Result<()> {
        if top > self.top {
            self.top = top;
            self.materialize()?;
        }
        Ok(())
    }

    fn level_or_zero(&self, k: i64) -> Arc<FreeChainComplex> {
        if k <= self.object.top() {
            self.object.level(k).clone()
        } else {
            Arc::new(FreeChainComplex::zero(self.ring))
        }
    }

    fn materialize(&mut self) -> Result<()> {
        let ring = self.ring;
        let mut summands = Vec::new();
        let mut sums: Vec<DirectSum> = Vec::new();
        for k in -1..=self.top {
            let mut list = Vec::new();
            for (bi, b) in self.blocks.iter().enumerate() {
                for th in surjections(k, b.dim) {
                    list.push((bi, th));
                }
            }
            let parts = list.iter().map(|(b, _)| self.blocks[*b].complex.clone()).collect();
            sums.push(DirectSum::new(ring, parts));
            summands.push(list);
        }
        self.summands = summands;
        self.sums = sums;
        let mut faces: Vec<Vec<GradedMap>> = Vec::new();
        for k in 0..=self.top {
            let mut fs = Vec::new();
            for i in 0..=k as usize {
                fs.push(self.face_matrix(k, i, &faces));
            }
            faces.push(fs);
        }
        let levels = self.sums.iter().map(|s| s.total.clone()).collect();
        self.object = SimplicialObject::new(ring, levels, faces)?;
        Ok(())
    }

    /// X_k as a direct sum over `summands(k)`.
    pub fn level_sum(&self, k: i64) -> &DirectSum {
        self.sum(k)
    }

    fn sum(&self, k: i64) -> &DirectSum {
        &self.sums[(k + 1) as usize]
    }

    /// ε*: X_s -> X_a for a surjection ε: [a] ->> [s].
    fn reindex(&self, eps: &[usize], s: i64) -> GradedMap {
        let a = eps.len() as i64 - 1;
        let src = self.sum(s);
        let tgt = self.sum(a);
        let mut maps = Vec::new();
        for (b, th) in self.summands(s) {
            let comp: Vec<usize> = eps.iter().map(|&e| th[e]).collect();
            let idx = self.summands(a).iter().position(|(bb, t)| bb == b && *t == comp).unwrap();
            maps.push(tgt.inj(idx));
        }
        src.copair(&maps, &tgt.total, 0)
    }

    fn face_matrix(&self, k: i64, i: usize, done: &[Vec<GradedMap>]) -> GradedMap {
        let src = self.sum(k);
        let tgt = self.sum(k - 1);
        let mut cols = Vec::new();
        for (b, th) in self.summands(k) {
            let block = &self.blocks[*b];
            let phi: Vec<usize> = th.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect();
            let (eps, image) = epi_mono(&phi);
            let r = block.dim as usize;
            let col = if image.len() == r + 1 {
                let idx = self.summands(k - 1).iter().position(|(bb, t)| bb == b && *t == eps).unwrap();
                tgt.inj(idx)
            } else {
                let missing: Vec<usize> = (0..=r).filter(|x| !image.contains(x)).collect();
                let last = *missing.last().unwrap();
                let mut y = embed(&block.faces[last], &self.sum(block.dim - 1).total);
                let mut dim = block.dim - 1;
                for &m in missing.iter().rev().skip(1) {
                    y = done[dim as usize][m].compose(&y);
                    dim -= 1;
                }
                self.reindex(&eps, dim).compose(&y)
            };
            cols.push(col);
        }
        src.copair(&cols, &tgt.total, 0)
    }

    /// s_j: X_k -> X_{k+1}.
    pub fn degeneracy(&self, k: i64, j: usize) -> GradedMap {
        assert!(k >= 0 && (j as i64) <= k && k < self.top, "degeneracy s_{j} on X_{k}");
        let sigma: Vec<usize> = (0..=k as usize + 1).map(|x| if x <= j { x } else { x - 1 }).collect();
        self.reindex(&sigma, k)
    }

    /// s_{j_t}∘…∘s_{j_1} (ascending labels, s_{j_1} applied first) from X_k.
    pub fn iterated_degeneracy(&self, k: i64, labels: &[usize]) -> GradedMap {
        let mut cur = GradedMap::identity(self.level(k)).reframe(self.level(k).clone(), self.level(k).clone(), 0).unwrap();
        let mut dim = k;
        for &j in labels {
            cur = self.degeneracy(dim, j).compose(&cur);
            dim += 1;
        }
        cur
    }

    pub fn latching(&self, n: i64) -> LatchingDecomposition {
        let mut entries = Vec::new();
        let mut copies = BTreeMap::new();
        let mut rank_sum = 0;
        let mut factorizations_hold = true;
        for (b, th) in self.summands(n) {
            let block = &self.blocks[*b];
            if block.dim == n {
                continue;
            }
            let label = degeneracy_labels(th);
            rank_sum += block.complex.total_rank();
            *copies.entry(block.dim).or_insert(0) += 1;
            let s_i = self.iterated_degeneracy(block.dim, &label).compose(&self.cell_inj(*b));
            if s_i != self.summand_inj(n, *b, th) {
                factorizations_hold = false;
            }
            entries.push(LatchEntry { block: block.name.clone(), block_dim: block.dim, theta: th.clone(), label });
        }
        let direct_rank = if n >= 1 {
            self.level(n)
                .degrees()
                .iter()
                .map(|&t| {
                    let mut m = Matrix::zeros(self.ring, self.level(n).rank(t), 0);
                    for j in 0..n as usize {
                        m = m.hstack(&self.degeneracy(n - 1, j).component(t));
                    }
                    rank(&m)
                })
                .sum()
        } else {
            0
        };
        let dims: Vec<i64> = self.blocks.iter().map(|b| b.dim).filter(|&d| d < n && d >= 0).collect();
        let mut printed_copies = BTreeMap::new();
        for &k in &dims {
            printed_copies.insert(k, binomial(n, n - k - 1));
        }
        let mut expected = BTreeMap::new();
        for &k in &dims {
            expected.insert(k, binomial(n, k));
        }
        let per_block: BTreeMap<i64, usize> = dims.iter().fold(BTreeMap::new(), |mut m, &k| {
            *m.entry(k).or_insert(0) += 1;
            m
        });
        let printed_count_matches = per_block.keys().all(|k| printed_copies[k] == expected[k]);
        let copies = copies.into_iter().map(|(k, c)| (k, c / per_block[&k])).collect();
        LatchingDecomposition {
            n,
            entries,
            copies,
            printed_copies,
            printed_count_matches,
            rank: rank_sum,
            direct_rank,
            factorizations_hold,
        }
    }
}
