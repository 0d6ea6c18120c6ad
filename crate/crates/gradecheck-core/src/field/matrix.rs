//! Dense matrices over Q(i), used for change-of-basis frames and Gram
//! matrices. Vectors are rows: the matrix of a linear map has the image of
//! the i-th basis vector as its i-th row.

use crate::error::{Error, Result};
use crate::field::linalg::Echelon;
use crate::field::scalar::Scalar;
use crate::field::sparse::SVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[SVec], cols: usize) -> Result<Self> {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r.iter() {
                if *j >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, got: *j + 1 });
                }
                m.set(i, *j, c.clone());
            }
        }
        Ok(m)
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, Scalar::from_int(x));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> SVec {
        SVec::from_dense(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn row_svecs(&self) -> Vec<SVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, a) in v.iter() {
            for j in 0..self.cols {
                let b = self.get(*i, j);
                if !b.is_zero() {
                    terms.push((j, a.mul_ref(b)));
                }
            }
        }
        SVec::from_terms(terms)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::exact(self.cols);
        for i in 0..self.rows {
            e.insert_svec(&self.row(i));
        }
        e.rank()
    }

    /// Exact inverse by Gauss-Jordan on `[M | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut e = Echelon::exact(2 * n);
        for i in 0..n {
            let mut terms: Vec<(usize, Scalar)> = self.row(i).into_entries();
            terms.push((n + i, Scalar::one()));
            e.insert_svec(&SVec::from_terms(terms));
        }
        let rows = e.basis_svecs();
        if rows.len() != n || rows.iter().enumerate().any(|(i, r)| r.entries()[0].0 != i) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r.iter() {
                if *j >= n {
                    inv.set(i, j - n, c.clone());
                }
            }
        }
        Ok(inv)
    }

    /// Kronecker product, matching the basis order `(i, j) -> i * dim_b + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_int_rows(&[vec![1, 1, 0], vec![1, -1, 0], vec![0, 2, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let sing = Matrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }
}
