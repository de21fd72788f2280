use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{EuclideanDomain, Ring};

/// A dense matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Builds a matrix from rows, all of length `cols`.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} where {cols} expected",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Mat {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(columns: &[Vec<E>], rows: usize) -> Result<Self> {
        Ok(Mat::from_rows(columns.to_vec(), rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Mat::from_rows(rows, self.cols + other.cols)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let rows = (0..self.rows)
            .map(|i| keep.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Mat::from_rows(rows, keep.len()).expect("consistent widths")
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }
}

impl<E: fmt::Debug> fmt::Debug for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            f.debug_list()
                .entries(&self.data[i * self.cols..(i + 1) * self.cols])
                .finish()?;
        }
        write!(f, "]")
    }
}

impl<D: EuclideanDomain> Ring<D> {
    pub fn zero_mat(&self, rows: usize, cols: usize) -> Mat<D::Elem> {
        Mat::filled(rows, cols, self.zero())
    }

    pub fn identity_mat(&self, n: usize) -> Mat<D::Elem> {
        let mut m = self.zero_mat(n, n);
        for i in 0..n {
            m.set(i, i, self.one());
        }
        m
    }

    /// Reduces every entry into canonical form.
    pub fn reduce_mat(&self, m: &Mat<D::Elem>) -> Mat<D::Elem> {
        Mat {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|e| self.reduce(e)).collect(),
        }
    }

    pub fn mat_mul(&self, a: &Mat<D::Elem>, b: &Mat<D::Elem>) -> Result<Mat<D::Elem>> {
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let d = self.domain();
        let mut data = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = d.zero();
                for k in 0..a.cols {
                    let (x, y) = (a.get(i, k), b.get(k, j));
                    if !d.is_zero(x) && !d.is_zero(y) {
                        acc = d.add(&acc, &d.mul(x, y));
                    }
                }
                data.push(self.reduce(&acc));
            }
        }
        Ok(Mat {
            rows: a.rows,
            cols: b.cols,
            data,
        })
    }

    pub fn mat_vec(&self, a: &Mat<D::Elem>, v: &[D::Elem]) -> Result<Vec<D::Elem>> {
        if a.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                a.rows,
                a.cols,
                v.len()
            )));
        }
        Ok((0..a.rows).map(|i| self.dot(a.row(i), v)).collect())
    }

    pub fn dot(&self, a: &[D::Elem], b: &[D::Elem]) -> D::Elem {
        let d = self.domain();
        let mut acc = d.zero();
        for (x, y) in a.iter().zip(b) {
            if !d.is_zero(x) && !d.is_zero(y) {
                acc = d.add(&acc, &d.mul(x, y));
            }
        }
        self.reduce(&acc)
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(&self, a: &Mat<D::Elem>, b: &Mat<D::Elem>) -> Mat<D::Elem> {
        let mut m = self.zero_mat(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    /// `a ⊗ I_k`: each entry becomes `a_ij·I_k`, block rows in order.
    pub fn kron_identity(&self, a: &Mat<D::Elem>, k: usize) -> Mat<D::Elem> {
        let mut m = self.zero_mat(a.rows * k, a.cols * k);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let e = a.get(i, j);
                if self.domain().is_zero(e) {
                    continue;
                }
                for t in 0..k {
                    m.set(i * k + t, j * k + t, e.clone());
                }
            }
        }
        m
    }

    pub fn neg_mat(&self, a: &Mat<D::Elem>) -> Mat<D::Elem> {
        Mat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|e| self.neg(e)).collect(),
        }
    }

    pub fn is_zero_vec(&self, v: &[D::Elem]) -> bool {
        v.iter().all(|e| self.is_zero(e))
    }
}

impl Ring<crate::ring::Integers> {
    /// Integer matrix from literal rows, reduced into the ring.
    pub fn mat(&self, rows: &[&[i64]]) -> Mat<num_bigint::BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| self.int(x)).collect())
            .collect();
        Mat::from_rows(rows, cols).expect("rows of equal length")
    }

    pub fn vector(&self, v: &[i64]) -> Vec<num_bigint::BigInt> {
        v.iter().map(|&x| self.int(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_checked() {
        assert!(Mat::new(2, 2, vec![1, 2, 3]).is_err());
        let z = Ring::integers();
        let a = z.mat(&[&[1, 2], &[3, 4]]);
        let b = z.mat(&[&[1], &[1]]);
        assert_eq!(z.mat_mul(&a, &b).unwrap(), z.mat(&[&[3], &[7]]));
        assert!(z.mat_mul(&b, &b).is_err());
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn kronecker_with_identity() {
        let z = Ring::integers();
        let a = z.mat(&[&[2, 3]]);
        let k = z.kron_identity(&a, 2);
        assert_eq!(k, z.mat(&[&[2, 0, 3, 0], &[0, 2, 0, 3]]));
    }
}
