//! Rank routines that share no code with [`crate::rank::rank`].

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::{Scalar, ZeroTest};

/// Largest side for which exact ranks come from minor enumeration.
pub const MINOR_ENUMERATION_LIMIT: usize = 4;

/// Rank for certification: minor enumeration for small exact matrices,
/// otherwise incremental row-basis insertion.
pub fn certify_rank<T: Scalar>(a: &Matrix<T>) -> usize {
    if T::EXACT && a.field().is_exact() && a.rows().max(a.cols()) <= MINOR_ENUMERATION_LIMIT {
        minor_rank(a)
    } else {
        basis_rank(a)
    }
}

/// Largest `k` such that some k×k minor is nonzero. Determinants by cofactor
/// expansion.
pub fn minor_rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let (m, n) = a.shape();
    let mut best = 0;
    for k in 1..=m.min(n) {
        let row_sets = subsets(m, k);
        let col_sets = subsets(n, k);
        let found = row_sets.iter().any(|rs| {
            col_sets.iter().any(|cs| {
                let block: Vec<T> = rs
                    .iter()
                    .flat_map(|&r| cs.iter().map(move |&c| a.at(r, c).clone()))
                    .collect();
                !cofactor_det(&block, k).is_exact_zero()
            })
        });
        if !found {
            break;
        }
        best = k;
    }
    best
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant of a row-major k×k block by expansion along the first row.
fn cofactor_det<T: Scalar>(block: &[T], k: usize) -> T {
    match k {
        0 => T::one(),
        1 => block[0].clone(),
        _ => {
            let mut det = T::zero();
            for c in 0..k {
                let a = &block[c];
                if a.is_exact_zero() {
                    continue;
                }
                let minor: Vec<T> = (1..k)
                    .flat_map(|r| {
                        (0..k)
                            .filter(move |&cc| cc != c)
                            .map(move |cc| block[r * k + cc].clone())
                    })
                    .collect();
                let term = a.clone() * cofactor_det(&minor, k - 1);
                det = if c % 2 == 0 { det + term } else { det - term };
            }
            det
        }
    }
}

/// Rank by inserting rows one at a time into a reduced basis keyed by
/// leading column, scanning rows from last to first.
pub fn basis_rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let (m, n) = a.shape();
    let zt: ZeroTest = a.zero_test();
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    for r in (0..m).rev() {
        let mut v: Vec<T> = (0..n).map(|c| a.at(r, c).clone()).collect();
        for (lead, b) in &basis {
            if zt.is_zero(&v[*lead]) {
                continue;
            }
            let factor = v[*lead].clone() / b[*lead].clone();
            for c in 0..n {
                if !b[c].is_exact_zero() {
                    v[c] = v[c].clone() - factor.clone() * b[c].clone();
                }
            }
            v[*lead] = T::zero();
        }
        let lead = (0..n)
            .filter(|&c| !zt.is_zero(&v[c]))
            .max_by(|&x, &y| v[x].magnitude().total_cmp(&v[y].magnitude()));
        if let Some(lead) = lead {
            basis.push((lead, v));
        }
    }
    basis.len()
}
