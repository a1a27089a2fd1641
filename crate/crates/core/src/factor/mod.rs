//! Factorization algorithms.
//!
//! [`lu_general`] and the unit-triangular variants factor `A` itself; they only
//! reorder indices internally, and only by deferring rows or columns that are
//! already zero in the active Schur complement, so the recovered factors stay
//! triangular. [`lu_partial_pivot`] and [`lu_full_pivot`] are the classical
//! `PA = LU` and `PAQ = LU` baselines.
//!
//! Index maps and permutations are stored 1-based: `row_map[i - 1] = i0`
//! means logical row `i` of the internally reordered matrix is row `i0` of
//! `A`.

mod general;
mod pivoting;
mod unit;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarField, ZeroTest};

pub use general::lu_general;
pub use pivoting::{lu_full_pivot, lu_partial_pivot};
pub use unit::{lu_unit_lower, lu_unit_upper};

/// Rank-revealing `A = LU` with `L` n×r lower triangular and `U` r×n upper
/// triangular, `r = rank(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<T: Scalar> {
    pub lower: Matrix<T>,
    pub upper: Matrix<T>,
    pub rank: usize,
    /// Logical row `i` (1-based position) to physical row of `A`.
    pub row_map: Vec<usize>,
    /// Logical column `j` to physical column of `A`.
    pub col_map: Vec<usize>,
    /// Float only: some zero/nonzero decision fell close to the tolerance.
    pub ambiguous: bool,
}

/// `P∘A∘Q = L·U` where `(P∘A∘Q)[i, j] = A[row_perm[i], col_perm[j]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PivotedFactorization<T: Scalar> {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub lower: Matrix<T>,
    pub upper: Matrix<T>,
    pub rank: usize,
    /// Active block left after the last elimination step. For full pivoting
    /// it is the `(m-r)×(n-r)` Schur complement, zero up to the tolerance.
    pub residual: Matrix<T>,
}

impl<T: Scalar> PivotedFactorization<T> {
    /// The permuted matrix `P∘A∘Q`.
    pub fn permuted(&self, a: &Matrix<T>) -> Matrix<T> {
        Matrix::build(self.row_perm.len(), self.col_perm.len(), |r, c| {
            a.at(self.row_perm[r] - 1, self.col_perm[c] - 1).clone()
        })
        .with_field(a.field())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSide {
    Lower,
    Upper,
}

/// Square `A = LU` with the `unit_side` factor unit triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitFactorization<T: Scalar> {
    pub lower: Matrix<T>,
    pub upper: Matrix<T>,
    pub unit_side: UnitSide,
    /// Column map (unit lower) or row map (unit upper), 1-based.
    pub index_map: Vec<usize>,
    /// Logical indices, 1-based, whose row (unit lower) or column (unit upper)
    /// is a combination of the earlier ones.
    pub dependent: Vec<usize>,
    pub rank: usize,
    pub ambiguous: bool,
}

fn require_square<T: Scalar>(a: &Matrix<T>) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Zero test scaled to the active block `rows × cols` of `s`.
fn active_zero_test<T: Scalar>(
    s: &Matrix<T>,
    rows: &[usize],
    cols: &[usize],
    field: ScalarField,
) -> ZeroTest {
    if field.is_exact() || T::EXACT {
        return ZeroTest::exact();
    }
    let scale = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| s.at(r, c).magnitude()))
        .fold(0.0, f64::max);
    field.zero_test(scale)
}

/// Assembles an n×r matrix from r columns of length n.
fn from_columns<T: Scalar>(n: usize, columns: &[Vec<T>], field: ScalarField) -> Matrix<T> {
    Matrix::build(n, columns.len(), |r, c| columns[c][r].clone()).with_field(field)
}

/// Assembles an r×n matrix from r rows of length n.
fn from_row_vecs<T: Scalar>(n: usize, rows: &[Vec<T>], field: ScalarField) -> Matrix<T> {
    Matrix::build(rows.len(), n, |r, c| rows[r][c].clone()).with_field(field)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| x + 1).collect()
}
