//! Smith normal form and the exact linear algebra built on it: kernels,
//! solvability over the ring, and Hermite-reduced lattices for canonical
//! coset representatives.

use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `u * m * v == d` with `u`, `v` invertible over the ring and `d` diagonal.
/// Over Z the diagonal satisfies d_0 | d_1 | ... and is nonnegative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &Matrix) -> Smith {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = Matrix::identity(ring, rows);
    let mut v = Matrix::identity(ring, cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least size in the remaining block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..rows {
            for c in t..cols {
                if d[(r, c)].is_zero() {
                    continue;
                }
                let s = ring.size(&d[(r, c)]);
                if best.as_ref().is_none_or(|b| s < b.2) {
                    let one = s.is_one();
                    best = Some((r, c, s));
                    if one {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|b| b.2.is_one()) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(&d[(r, t)], &d[(t, t)]);
                let nq = ring.neg(&q);
                d.add_row_multiple(r, t, &nq);
                u.add_row_multiple(r, t, &nq);
                if !rem.is_zero() {
                    d.swap_rows(t, r);
                    u.swap_rows(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(&d[(t, c)], &d[(t, t)]);
                let nq = ring.neg(&q);
                d.add_col_multiple(c, t, &nq);
                v.add_col_multiple(c, t, &nq);
                if !rem.is_zero() {
                    d.swap_cols(t, c);
                    v.swap_cols(t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the rest of the block by the pivot
            let mut offender = None;
            if !ring.is_field() {
                'scan: for r in t + 1..rows {
                    for c in t + 1..cols {
                        let (_, rem) = ring.div_rem(&d[(r, c)], &d[(t, t)]);
                        if !rem.is_zero() {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
            }
            match offender {
                Some(r) => {
                    let one = Scalar::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        let k = ring.unit_normalizer(&d[(t, t)]);
        d.scale_row(t, &k);
        u.scale_row(t, &k);
        t += 1;
    }
    Smith { u, d, v, rank: t }
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.ring().is_field() {
        return echelon_rank(m);
    }
    smith_normal_form(m).rank
}

fn echelon_rank(m: &Matrix) -> usize {
    let ring = m.ring();
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        let inv = ring.inv(&a[(r, c)]).unwrap();
        for i in r + 1..rows {
            if !a[(i, c)].is_zero() {
                let k = ring.neg(&ring.mul(&a[(i, c)], &inv));
                a.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    r
}

/// Indices of a maximal independent subset of columns, greedily from the left
/// (field coefficients).
pub fn independent_columns(m: &Matrix) -> Vec<usize> {
    let ring = m.ring();
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut picked = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        let inv = ring.inv(&a[(r, c)]).expect("independent_columns needs a field");
        for i in r + 1..rows {
            if !a[(i, c)].is_zero() {
                let k = ring.neg(&ring.mul(&a[(i, c)], &inv));
                a.add_row_multiple(i, r, &k);
            }
        }
        picked.push(c);
        r += 1;
    }
    picked
}

/// Columns of `candidates` that extend the column span of `base`, chosen
/// greedily (field coefficients).
pub fn extend_basis(base: &Matrix, candidates: &Matrix) -> Vec<usize> {
    let joined = base.hstack(candidates);
    let b = base.cols();
    let base_rank = independent_columns(base).len();
    let picked = independent_columns(&joined);
    debug_assert!(picked.iter().filter(|&&c| c < b).count() == base_rank);
    picked.into_iter().filter(|&c| c >= b).map(|c| c - b).collect()
}

/// Basis of the kernel as columns. Over Z the columns span a saturated
/// sublattice (a direct summand of the domain).
pub fn kernel(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let cols = m.cols();
    if m.rows() == 0 {
        return Matrix::identity(ring, cols);
    }
    let s = smith_normal_form(m);
    let idx: Vec<usize> = (s.rank..cols).collect();
    s.v.select_cols(&idx)
}

/// Solve `a * x = b` over the ring (b may have several columns).
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let ring = a.ring();
    if a.cols() == 0 {
        return b.is_zero().then(|| Matrix::zeros(ring, 0, b.cols()));
    }
    if a.rows() == 0 {
        return Some(Matrix::zeros(ring, a.cols(), b.cols()));
    }
    let s = smith_normal_form(a);
    let ub = s.u.mul(b);
    let mut y = Matrix::zeros(ring, a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = &ub[(i, j)];
            if i < s.rank {
                let (q, rem) = ring.div_rem(rhs, &s.d[(i, i)]);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

pub fn in_column_span(a: &Matrix, b: &Matrix) -> bool {
    solve(a, b).is_some()
}

/// Sublattice of R^n kept in row-Hermite form. Reduction modulo the lattice
/// gives canonical coset representatives (least nonnegative residues over Z).
#[derive(Debug, Clone)]
pub struct Lattice {
    ring: Ring,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(ring: Ring, dim: usize) -> Self {
        Lattice { ring, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_generators(ring: Ring, dim: usize, gens: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(ring, gens.len(), dim);
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(g.len(), dim);
            for (j, x) in g.iter().enumerate() {
                m[(i, j)] = ring.coerce(x);
            }
        }
        let h = hermite_rows(&m);
        let mut lat = Lattice::new(ring, dim);
        for r in 0..h.rows() {
            let row = h.row(r);
            if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                lat.rows.push(row);
                lat.pivots.push(p);
            }
        }
        lat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let ring = self.ring;
        let mut out: Vec<Scalar> = v.iter().map(|x| ring.coerce(x)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let (q, _) = ring.div_rem(&out[p], &row[p]);
            if q.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                out[j] = ring.sub(&out[j], &ring.mul(&q, &row[j]));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot).
pub fn hermite_rows(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() {
                    let s = ring.size(&a[(i, c)]);
                    if best.as_ref().is_none_or(|b| s < b.1) {
                        best = Some((i, s));
                    }
                }
            }
            let Some((p, _)) = best else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(&a[(i, c)], &a[(r, c)]);
                a.add_row_multiple(i, r, &ring.neg(&q));
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        let k = ring.unit_normalizer(&a[(r, c)]);
        a.scale_row(r, &k);
        for i in 0..r {
            let (q, _) = ring.div_rem(&a[(i, c)], &a[(r, c)]);
            a.add_row_multiple(i, r, &ring.neg(&q));
        }
        r += 1;
    }
    a
}

/// Determinant over a field (used for change-of-basis checks).
pub fn is_invertible(m: &Matrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let s = smith_normal_form(m);
    s.rank == m.rows() && s.diagonal().iter().all(|x| m.ring().is_unit(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use num_traits::Signed;

    fn check_smith(m: &Matrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(is_invertible(&s.u) || s.u.rows() == 0);
        s
    }

    #[test]
    fn smith_of_two_by_two() {
        let m = Matrix::from_i64(Ring::Integers, 2, 2, &[2, 4, 6, 8]);
        let s = check_smith(&m);
        assert_eq!(s.diagonal(), vec![int(2), int(4)]);
    }

    #[test]
    fn smith_trivial_cases() {
        let id = Matrix::identity(Ring::Integers, 3);
        assert_eq!(check_smith(&id).diagonal(), vec![int(1); 3]);
        let two = Matrix::from_i64(Ring::Integers, 1, 1, &[2]);
        assert_eq!(check_smith(&two).diagonal(), vec![int(2)]);
    }

    #[test]
    fn smith_divisibility_fixup() {
        let m = Matrix::from_i64(Ring::Integers, 2, 2, &[2, 0, 0, 3]);
        assert_eq!(check_smith(&m).diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn solve_respects_integrality() {
        let a = Matrix::from_i64(Ring::Integers, 1, 1, &[2]);
        assert!(solve(&a, &Matrix::from_i64(Ring::Integers, 1, 1, &[1])).is_none());
        let x = solve(&a, &Matrix::from_i64(Ring::Integers, 1, 1, &[4])).unwrap();
        assert_eq!(x[(0, 0)], int(2));
        let q = a.change_ring(Ring::Rationals);
        assert!(solve(&q, &Matrix::from_i64(Ring::Rationals, 1, 1, &[1])).is_some());
    }

    #[test]
    fn kernel_is_saturated() {
        let m = Matrix::from_i64(Ring::Integers, 1, 2, &[2, 4]);
        let k = kernel(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let v = k.col(0);
        assert!(v.iter().any(|x| x.abs() == int(1)));
    }

    #[test]
    fn lattice_reduction_is_canonical() {
        let lat = Lattice::from_generators(Ring::Integers, 1, &[vec![int(4)], vec![int(6)]]);
        assert_eq!(lat.generators(), &[vec![int(2)]]);
        assert_eq!(lat.reduce(&[int(-1)]), vec![int(1)]);
        assert!(lat.contains(&[int(10)]));
    }
}
