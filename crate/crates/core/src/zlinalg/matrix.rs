use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-sized shapes (`0 x n`, `n x 0`) are valid and stand for maps into or
/// out of the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j].clone().into())
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so that
    /// `0 x n` matrices can be written down.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into())
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn matmul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// First nonzero entry of `self * other`, if any, without storing the product.
    pub fn first_nonzero_of_product(&self, other: &IntMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut acc = vec![BigInt::zero(); other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| x.set_zero());
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        acc[j] += a * b;
                    }
                }
            }
            if let Some(j) = acc.iter().position(|x| !x.is_zero()) {
                return Some((i, j));
            }
        }
        None
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Entries as `i64`, or `None` if some entry does not fit.
    pub(crate) fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_i64()).collect())
            .collect()
    }

    pub(crate) fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.matmul(rhs)
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Convenience constructor for integer vectors.
pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = IntMatrix::zeros(2, 0);
        let b = IntMatrix::zeros(0, 3);
        let c = &a * &b;
        assert_eq!(c.shape(), (2, 3));
        assert!(c.is_zero());
        assert!(a.first_nonzero_of_product(&b).is_none());
    }
}
