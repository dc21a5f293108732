//! Small dense matrices over any [`Ring`].
//!
//! Operator matrices follow one convention throughout the crate: entry
//! `(r, i)` is the `e_r` coefficient of the image of `e_i`, so column `i`
//! holds the image of `e_i`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Poly, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows);
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(r, k)].clone() * rhs[(k, c)].clone()
            })
        })
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - rhs[(r, c)].clone()
        })
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| s.clone() * x.clone())
    }

    /// Matrix-vector product: the image of the vector with coordinates `v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Column `i`, the image of `e_i`.
    pub fn column(&self, i: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, i)].clone()).collect()
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Matrix<T> {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != skip_r) {
            for c in (0..n).filter(|&c| c != skip_c) {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            data,
        }
    }

    /// Determinant by cofactor expansion along the first row. Intended for
    /// the small matrices (n <= 4) this crate works with; no division.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => T::one(),
            1 => self.data[0].clone(),
            2 => {
                self.data[0].clone() * self.data[3].clone()
                    - self.data[1].clone() * self.data[2].clone()
            }
            n => {
                let mut acc = T::zero();
                for c in 0..n {
                    let a = &self[(0, c)];
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.clone() * self.minor(0, c).det();
                    acc = if c % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Classical adjugate: `self * adj(self) = det(self) * I`.
    pub fn adjugate(&self) -> Matrix<T> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        Matrix::from_fn(n, n, |r, c| {
            let cof = self.minor(c, r).det();
            if (r + c) % 2 == 0 {
                cof
            } else {
                -cof
            }
        })
    }
}

impl Matrix<Poly> {
    /// Exact inverse of a matrix whose determinant is a nonzero rational
    /// constant. Entries may still be symbolic.
    pub fn inverse(&self) -> Result<Matrix<Poly>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let det = self.det();
        if det.is_identically_zero() {
            return Err(Error::SingularMatrix);
        }
        let Some(d) = det.as_rational() else {
            return Err(Error::NonConstantDeterminant(det.to_string()));
        };
        let inv = Rational::one() / d;
        Ok(self.adjugate().map(|x| x.scale(&inv)))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix<Poly> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Poly::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn substitute(&self, bindings: &std::collections::BTreeMap<String, Poly>) -> Matrix<Poly> {
        self.map(|p| p.substitute(bindings))
    }

    /// Row-major entry strings, the form used in reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
