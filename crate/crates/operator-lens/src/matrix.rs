use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense complex matrix, row-major.
///
/// The operator-level API works with square matrices; rectangular shapes
/// (including empty ones) appear as internal blocks, subspace bases and
/// off-diagonal corners, so the storage is general.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// `z * I`.
    pub fn scalar(n: usize, z: C64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> crate::error::Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(crate::error::OpError::DimensionMismatch(format!(
                    "row {i} has length {}, expected {c}",
                    row.len()
                )));
            }
        }
        Ok(Self::from_fn(r, c, |i, j| rows[i][j]))
    }

    /// Convenience for small real matrices in tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix; panics on rectangular input.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dim() on a {}x{} matrix", self.rows, self.cols);
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Hermitian part `(M + M*)/2`, built entrywise so the result is
    /// Hermitian exactly, not just up to rounding.
    pub fn real_part(&self) -> Self {
        let n = self.dim();
        let mut h = Self::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = C64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    /// Skew part divided by `i`: `(M - M*)/(2i)`, exactly Hermitian; satisfies
    /// `M = real_part(M) + i * imag_part(M)` up to rounding.
    pub fn imag_part(&self) -> Self {
        let n = self.dim();
        let mut h = Self::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = C64::new(self[(i, i)].im, 0.0);
            for j in (i + 1)..n {
                let d = (self[(i, j)] - self[(j, i)].conj()) * 0.5;
                // d = i * h_ij  =>  h_ij = -i * d
                let z = C64::new(d.im, -d.re);
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    /// `M^k` by repeated squaring; `M^0 = I`.
    pub fn pow(&self, k: u32) -> Self {
        let n = self.dim();
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        let n = self.dim();
        (0..n).map(|i| self[(i, i)]).sum()
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// Copy of the sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Write `other` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, other: &ComplexMatrix) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for i in 0..other.rows {
            for j in 0..other.cols {
                self[(r0 + i, c0 + j)] = other[(i, j)];
            }
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * s)
    }

    pub fn scale_c(&self, z: C64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * z)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)])
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "mul shape");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `sum_i x_i * conj(y_i)` — linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn adjoint_is_an_involution() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, j as f64 + 0.5));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), c(3.0, -1.0)], vec![c(0.0, 1.0), c(5.0, 0.0)]])
            .unwrap();
        let a = m.adjoint();
        assert_eq!(a[(0, 0)], c(1.0, -2.0));
        assert_eq!(a[(0, 1)], c(0.0, -1.0));
        assert_eq!(a[(1, 0)], c(3.0, 1.0));
    }

    #[test]
    fn real_and_imag_parts_recompose() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((i * j) as f64 - 1.5, i as f64 - j as f64 / 3.0));
        let re = m.real_part();
        let im = m.imag_part();
        // both exactly Hermitian
        assert_eq!(re.adjoint(), re);
        assert_eq!(im.adjoint(), im);
        // m == re + i*im up to rounding
        let back = &re + &im.scale_c(c(0.0, 1.0));
        assert!((&back - &m).max_abs() <= 4.0 * f64::EPSILON * m.max_abs());
    }

    #[test]
    fn pow_zero_is_identity_and_pow_adds() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.5, -0.5)]])
            .unwrap();
        assert_eq!(m.pow(0), ComplexMatrix::identity(2));
        let lhs = m.pow(5);
        let rhs = &m.pow(2) * &m.pow(3);
        assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn jordan_cell_squares_to_zero() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(j.pow(2), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn empty_blocks_are_usable() {
        let m = ComplexMatrix::zeros(0, 3);
        let p = &m * &ComplexMatrix::zeros(3, 2);
        assert_eq!((p.rows(), p.cols()), (0, 2));
        assert_eq!(m.frobenius_norm(), 0.0);
    }

    #[test]
    fn block_and_paste_round_trip() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((4 * i + j) as f64, 0.0));
        let b = m.block(1, 3, 0, 2);
        assert_eq!(b[(0, 0)], c(4.0, 0.0));
        let mut z = ComplexMatrix::zeros(4, 4);
        z.paste(1, 0, &b);
        assert_eq!(z[(2, 1)], m[(2, 1)]);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let e = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]);
        assert!(e.is_err());
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_second_slot() {
        let x = vec![c(1.0, 1.0), c(0.0, 2.0)];
        let y = vec![c(2.0, 0.0), c(1.0, -1.0)];
        let a = inner(&x, &y);
        let b = inner(&y, &x);
        assert!((a - b.conj()).norm() < 1e-15);
    }
}
