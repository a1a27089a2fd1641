//! Test-side oracles. Nothing here calls the crate's rank or elimination code.

#![allow(dead_code)]

use lu_general_core::{Matrix, Rational, Scalar};
use proptest::prelude::*;

pub fn m(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_i64_rows(rows).unwrap()
}

pub fn ri(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Determinant by the Leibniz formula over all permutations.
pub fn leibniz_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = <Rational as Scalar>::zero();
    permute(&mut perm, 0, a, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, at: usize, a: &[Vec<Rational>], total: &mut Rational) {
    let n = perm.len();
    if at == n {
        let mut term = ri(sign(perm));
        for (i, &p) in perm.iter().enumerate() {
            term *= a[i][p].clone();
        }
        *total += term;
        return;
    }
    for i in at..n {
        perm.swap(at, i);
        permute(perm, at + 1, a, total);
        perm.swap(at, i);
    }
}

fn sign(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with_last = choose(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = choose(n - 1, k);
    out.extend(with_last);
    out
}

/// Size of the largest nonzero minor.
pub fn oracle_rank(a: &Matrix<Rational>) -> usize {
    let (rows, cols) = a.shape();
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            choose(rows, k).iter().any(|rs| {
                choose(cols, k).iter().any(|cs| {
                    let block: Vec<Vec<Rational>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| a[(r + 1, c + 1)].clone()).collect())
                        .collect();
                    !leibniz_det(&block).is_exact_zero()
                })
            })
        })
        .unwrap_or(0)
}

pub fn oracle_nullity(a: &Matrix<Rational>) -> usize {
    a.cols() - oracle_rank(a)
}

/// Square integer matrix with entries in `lo..=hi`, zero-heavy so that
/// singular leading blocks are common.
pub fn square(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max_n).prop_flat_map(move |n| {
        let cell = prop_oneof![2 => Just(0i64), 3 => lo..=hi];
        proptest::collection::vec(cell, n * n)
            .prop_map(move |v| Matrix::from_vec(n, n, v.into_iter().map(ri).collect()).unwrap())
    })
}

pub fn rect(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix<Rational>> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(lo..=hi, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(ri).collect()).unwrap())
    })
}

/// `rank(A[:,1:j]) > rank(A[:,1:j-1])`, computed with the minor oracle.
pub fn column_is_new(a: &Matrix<Rational>, j: usize) -> bool {
    let before = if j == 1 { 0 } else { oracle_rank(&a.column_block(1, j - 1).unwrap()) };
    oracle_rank(&a.column_block(1, j).unwrap()) > before
}
