use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, ScalarField, ZeroTest};

/// Dense row-major matrix.
///
/// Public indexing is 1-based: `a[(1, 1)]` is the top-left entry, and
/// [`Matrix::submatrix`] takes inclusive 1-based bounds. Matrices with zero
/// rows or zero columns are valid.
///
/// The matrix carries the [`ScalarField`] that decides which entries count as
/// zero. Equality compares shape and entries only.
#[derive(Clone, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    field: ScalarField,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![T::zero(); rows * cols],
            field: T::default_field(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: T::default_field(),
        })
    }

    /// Builds from a list of rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::from_vec(n_rows, n_cols, data)
    }

    /// `f` receives 1-based `(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::build(rows, cols, |r, c| f(r + 1, c + 1))
    }

    pub(crate) fn build(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            field: T::default_field(),
        }
    }

    pub fn with_field(mut self, field: ScalarField) -> Self {
        self.field = field;
        self
    }

    pub fn field(&self) -> ScalarField {
        self.field
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// 1-based entry access.
    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            None
        } else {
            Some(self.at(i - 1, j - 1))
        }
    }

    /// 1-based entry update; panics when out of bounds.
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(
            i >= 1 && j >= 1 && i <= self.rows && j <= self.cols,
            "index ({i}, {j}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
        *self.at_mut(i - 1, j - 1) = value;
    }

    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    /// `A[i:j, k:l]`, 1-based and inclusive. A range with `j < i` (or `l < k`)
    /// is empty and yields a matrix with zero rows (or columns), provided it
    /// starts at most one past the end.
    pub fn submatrix(&self, i: usize, j: usize, k: usize, l: usize) -> Result<Self> {
        let bounds = || Error::Bounds {
            rows: self.rows,
            cols: self.cols,
            row_start: i,
            row_end: j,
            col_start: k,
            col_end: l,
        };
        let rows = range_len(i, j, self.rows).ok_or_else(bounds)?;
        let cols = range_len(k, l, self.cols).ok_or_else(bounds)?;
        let mut out = Self::build(rows, cols, |r, c| self.at(i - 1 + r, k - 1 + c).clone());
        out.field = self.field;
        Ok(out)
    }

    /// `A[i:j, :]`.
    pub fn row_block(&self, i: usize, j: usize) -> Result<Self> {
        self.submatrix(i, j, 1, self.cols)
    }

    /// `A[:, k:l]`.
    pub fn column_block(&self, k: usize, l: usize) -> Result<Self> {
        self.submatrix(1, self.rows, k, l)
    }

    /// Leading principal block `A[1:k, 1:k]`.
    pub fn leading(&self, k: usize) -> Result<Self> {
        self.submatrix(1, k, 1, k)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::build(self.cols, self.rows, |r, c| self.at(c, r).clone());
        out.field = self.field;
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("matmul", rhs));
        }
        let mut out = Self::build(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for t in 0..self.cols {
                let a = self.at(r, t);
                if a.is_exact_zero() {
                    continue;
                }
                acc = acc + a.clone() * rhs.at(t, c).clone();
            }
            acc
        });
        out.field = self.field;
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("add", rhs, |a, b| a.clone() + b.clone())
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("sub", rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, op: &'static str, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field,
        })
    }

    fn mismatch(&self, op: &'static str, rhs: &Self) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }

    /// Largest entry magnitude; 0 for empty matrices.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).magnitude()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Zero predicate for this matrix: exact, or the field tolerance scaled by
    /// [`Matrix::max_abs`].
    pub fn zero_test(&self) -> ZeroTest {
        self.field.zero_test(self.max_abs())
    }

    /// Every entry is zero under [`Matrix::zero_test`].
    pub fn is_zero(&self) -> bool {
        let zt = self.zero_test();
        self.data.iter().all(|x| zt.is_zero(x))
    }

    /// Applies `f` entrywise, keeping the field.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            field: U::default_field(),
        }
    }
}

impl Matrix<Rational> {
    /// Nearest-`f64` copy using the default float tolerance.
    pub fn to_f64(&self) -> Matrix<f64> {
        use num_traits::ToPrimitive;
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
    }
}

/// Length of the inclusive 1-based range `start..=end` inside `0..len`, or
/// `None` when the range is invalid.
fn range_len(start: usize, end: usize, len: usize) -> Option<usize> {
    if start == 0 || start > len + 1 {
        return None;
    }
    if end < start {
        return Some(0);
    }
    if end > len {
        return None;
    }
    Some(end - start + 1)
}

impl<T: Scalar> PartialEq for Matrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<T: Scalar> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    /// 1-based `(row, col)`.
    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j).unwrap_or_else(|| {
            panic!(
                "index ({i}, {j}) out of bounds for {}x{} matrix",
                self.rows, self.cols
            )
        })
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
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
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
