//! Dense exact matrices. A matrix carries its coefficient ring so that every
//! arithmetic result stays normalized (reduced mod p over F_p).

use crate::ring::{fmt_scalar, Ring, Scalar};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| fmt_scalar(&self[(r, c)])).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Build from rows of scalars, coercing each entry into the ring.
    pub fn from_rows(ring: Ring, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        assert_eq!(entries.len(), rows, "row count mismatch");
        for (r, row) in entries.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "column count mismatch");
            for (c, x) in row.into_iter().enumerate() {
                m[(r, c)] = ring.coerce(&x);
            }
        }
        m
    }

    pub fn from_i64(ring: Ring, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&x| ring.from_i64(x)).collect();
        Matrix { ring, rows, cols, data }
    }

    pub fn column(ring: Ring, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let data = entries.iter().map(|x| ring.coerce(x)).collect();
        Matrix { ring, rows: n, cols: 1, data }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self[(r, c)] = self.ring.coerce(&x);
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn col_matrix(&self, c: usize) -> Matrix {
        Matrix::column(self.ring, self.col(c))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product {:?}x{:?}", self.shape(), other.shape());
        let ring = self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = &out[(r, c)] + a * b;
                    out[(r, c)] = v;
                }
            }
        }
        if let Ring::PrimeField(_) = ring {
            for x in out.data.iter_mut() {
                *x = ring.coerce(x);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mul(&Matrix::column(self.ring, v.to_vec())).col(0)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.mul(a, s)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    /// Multiply by ±1 according to a sign exponent.
    pub fn signed(&self, exponent: i64) -> Matrix {
        if exponent.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.ring, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Matrix::zeros(self.ring, self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "paste out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    /// Add `block` into the window at (r0, c0).
    pub fn accumulate(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = self.ring.add(&self[(r0 + r, c0 + c)], &block[(r, c)]);
                self[(r0 + r, c0 + c)] = v;
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out[(i, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Scalar) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.ring.add(&self[(dst, c)], &self.ring.mul(k, &self[(src, c)]));
            self[(dst, c)] = v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Scalar) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.ring.add(&self[(r, dst)], &self.ring.mul(k, &self[(r, src)]));
            self[(r, dst)] = v;
        }
    }

    pub fn scale_row(&mut self, r: usize, k: &Scalar) {
        for c in 0..self.cols {
            let v = self.ring.mul(&self[(r, c)], k);
            self[(r, c)] = v;
        }
    }

    pub fn scale_col(&mut self, c: usize, k: &Scalar) {
        for r in 0..self.rows {
            let v = self.ring.mul(&self[(r, c)], k);
            self[(r, c)] = v;
        }
    }

    /// Rows of entries rendered as exact strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(fmt_scalar).collect()).collect()
    }

    pub fn change_ring(&self, ring: Ring) -> Matrix {
        let data = self.data.iter().map(|x| ring.coerce(x)).collect();
        Matrix { ring, rows: self.rows, cols: self.cols, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_blocks() {
        let z = Ring::Integers;
        let a = Matrix::from_i64(z, 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::identity(z, 2);
        assert_eq!(a.mul(&b), a);
        let s = a.direct_sum(&b);
        assert_eq!(s.shape(), (4, 4));
        assert_eq!(s.submatrix(2, 2, 2, 2), b);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn mod_p_product_reduces() {
        let f = Ring::PrimeField(2);
        let a = Matrix::from_i64(f, 1, 2, &[1, 1]);
        let b = Matrix::from_i64(f, 2, 1, &[1, 1]);
        assert!(a.mul(&b).is_zero());
    }
}
