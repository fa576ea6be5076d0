//! Dense matrices over exact rationals: just enough linear algebra for the
//! representation oracle (products, Gauss-Jordan inverse, determinant).

use crate::Rat;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Dim(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
}

/// Row-major dense matrix over `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Dim(self.rows, self.cols, other.rows, other.cols));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dim(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Rat, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        Ok(t)
    }

    /// Gauss-Jordan elimination with partial pivoting by largest magnitude.
    /// Returns `(inverse, determinant)`.
    pub fn invert(&self) -> Result<(QMatrix, Rat), MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        let mut det = Rat::one();
        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .max_by(|&r1, &r2| a[(r1, col)].abs().cmp(&a[(r2, col)].abs()))
                .ok_or(MatrixError::Singular)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            let pinv = Rat::one() / &pivot;
            for j in 0..n {
                a[(col, j)] *= &pinv;
                inv[(col, j)] *= &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let t = &factor * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &factor * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok((inv, det))
    }

    pub fn det(&self) -> Result<Rat, MatrixError> {
        match self.invert() {
            Ok((_, d)) => Ok(d),
            Err(MatrixError::Singular) => Ok(Rat::zero()),
            Err(e) => Err(e),
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn from_rows(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rat_int(rows[i][j]))
    }

    #[test]
    fn inverse_roundtrip() {
        let m = from_rows(&[&[2, 1, 0], &[1, -1, 3], &[0, 2, 1]]);
        let (inv, det) = m.invert().unwrap();
        assert_eq!(det, rat_int(-15));
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn singular_detected() {
        let m = from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.invert().unwrap_err(), MatrixError::Singular);
        assert_eq!(m.det().unwrap(), rat_int(0));
    }

    #[test]
    fn rational_entries() {
        let mut m = QMatrix::identity(2);
        m[(0, 1)] = rat(1, 2);
        let (inv, det) = m.invert().unwrap();
        assert_eq!(det, rat_int(1));
        assert_eq!(inv[(0, 1)], rat(-1, 2));
    }

    #[test]
    fn shape_errors() {
        let a = QMatrix::zeros(2, 3);
        let b = QMatrix::zeros(2, 3);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_ok());
        assert!(a.trace().is_err());
    }

    #[test]
    fn determinant_is_multiplicative() {
        let a = from_rows(&[&[3, 1], &[2, 1]]);
        let b = from_rows(&[&[1, 4], &[0, 2]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab.det().unwrap(),
            a.det().unwrap() * b.det().unwrap()
        );
    }
}
