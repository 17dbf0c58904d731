use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// A dense row-major matrix over one of the supported rings.
///
/// Vectors are plain `Vec<Coeff>` and are always treated as row vectors, so a
/// linear map `K^m -> K^n` is an `m × n` matrix acting on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    cols: usize,
    rows: Vec<Vec<Coeff>>,
}

impl Matrix {
    pub fn new(ring: Ring, cols: usize, rows: Vec<Vec<Coeff>>) -> Result<Matrix> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            check_ring(ring, row)?;
        }
        Ok(Matrix { ring, cols, rows })
    }

    pub(crate) fn from_rows_unchecked(ring: Ring, cols: usize, rows: Vec<Vec<Coeff>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { ring, cols, rows }
    }

    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        Matrix::new(ring, cols, rows).expect("rectangular literal")
    }

    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> Matrix {
        Matrix { ring, cols: ncols, rows: vec![zero_vec(ring, ncols); nrows] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        Matrix { ring, cols: n, rows: (0..n).map(|i| unit_vec(ring, n, i)).collect() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Coeff>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Coeff>> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| is_zero_vec(r))
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { ring: self.ring, cols: self.rows.len(), rows }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.nrows() });
        }
        let rows = self.rows.iter().map(|r| vec_mat(self.ring, r, other)).collect();
        Ok(Matrix { ring: self.ring, cols: other.cols, rows })
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Coeff]) -> Result<Vec<Coeff>> {
        if v.len() != self.nrows() {
            return Err(Error::DimensionMismatch { expected: self.nrows(), found: v.len() });
        }
        Ok(vec_mat(self.ring, v, self))
    }

    /// Stacks the rows of `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Matrix { ring: self.ring, cols: self.cols, rows })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn check_ring(ring: Ring, v: &[Coeff]) -> Result<()> {
    for c in v {
        if c.ring() != ring {
            return Err(Error::RingMismatch(ring.name(), c.ring().name()));
        }
    }
    Ok(())
}

pub fn zero_vec(ring: Ring, n: usize) -> Vec<Coeff> {
    vec![ring.zero(); n]
}

pub fn unit_vec(ring: Ring, n: usize, i: usize) -> Vec<Coeff> {
    let mut v = zero_vec(ring, n);
    v[i] = ring.one();
    v
}

pub fn is_zero_vec(v: &[Coeff]) -> bool {
    v.iter().all(Coeff::is_zero)
}

pub fn format_vec(v: &[Coeff]) -> String {
    format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn vec_from_i64(ring: Ring, v: &[i64]) -> Vec<Coeff> {
    v.iter().map(|&x| ring.from_i64(x)).collect()
}

/// `dst += factor · src`, skipping zero entries of `src`.
pub fn axpy(dst: &mut [Coeff], factor: &Coeff, src: &[Coeff]) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += &(factor * s);
        }
    }
}

pub fn vec_add(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Coeff, v: &[Coeff]) -> Vec<Coeff> {
    v.iter().map(|x| c * x).collect()
}

pub(crate) fn vec_mat(ring: Ring, v: &[Coeff], m: &Matrix) -> Vec<Coeff> {
    let mut out = zero_vec(ring, m.cols);
    for (c, row) in v.iter().zip(&m.rows) {
        axpy(&mut out, c, row);
    }
    out
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Matrix) -> Result<Coeff> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    let ring = m.ring;
    let mut a = m.rows.clone();
    let mut sign = ring.one();
    let mut prev = ring.one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = ring.div_rem(&num, &prev).0;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { ring.one() } else { &sign * &a[n - 1][n - 1] })
}
