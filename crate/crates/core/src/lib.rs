//! LU factorization without permutations for arbitrary square matrices.
//!
//! A square matrix `A` admits `A = LU` (no row or column exchanges applied to
//! `A`) exactly when, for every `k`,
//!
//! ```text
//! null(A[1:k,1:k]) <= null(A[:,1:k]) + null(A[1:k,:]^T)
//! ```
//!
//! This crate decides that condition ([`rank::existence_report`]), builds
//! rank-revealing factors when it holds ([`factor::lu_general`]), handles the
//! unit-triangular variants ([`factor::lu_unit_lower`],
//! [`factor::lu_unit_upper`]) and the classical pivoted baselines, and checks
//! any claimed factorization independently ([`certify`]).
//!
//! All public indices are 1-based and ranges are inclusive, so `A[i:j,k:l]`
//! is written `a.submatrix(i, j, k, l)`.
//!
//! Arithmetic is exact over [`Rational`] (arbitrary precision). The `f64`
//! backend gates every zero test on a relative tolerance and is heuristic:
//! elimination without pivot-size control is not backward stable.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certify;
mod error;
pub mod factor;
pub mod matgen;
mod matrix;
pub mod rank;
mod scalar;

pub use crate::error::{Error, Result};
pub use crate::matrix::Matrix;
pub use crate::scalar::{parse_rational, Rational, Scalar, ScalarField, ZeroTest};
