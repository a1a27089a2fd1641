//! Independent verification of claimed factorizations.
//!
//! Certification never calls the factorization engine or the elimination in
//! [`crate::rank`]: ranks come from [`oracle::certify_rank`]. Every failed
//! check is reported as a [`Violation`]; nothing here returns an error for a
//! bad factorization.

mod oblique;
pub mod oracle;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::factor::{Factorization, PivotedFactorization, UnitFactorization, UnitSide};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ZeroTest};

pub use oblique::{inverse, oblique_projector, schur_oblique_state, ObliqueProjector};
use oracle::certify_rank;

/// Float reconstruction passes when `max |LU - A| <= RESIDUAL_FACTOR * n *
/// tol * ||A||_inf`.
pub const RESIDUAL_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Shape,
    Reconstruct,
    LowerTriangular,
    UpperTriangular,
    RankRevealing,
    Sparsity,
    Dependence,
    IndexMap,
    UnitDiagonal,
    Residual,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Shape => "shape",
            Check::Reconstruct => "reconstruct",
            Check::LowerTriangular => "lower-triangular",
            Check::UpperTriangular => "upper-triangular",
            Check::RankRevealing => "rank-revealing",
            Check::Sparsity => "sparsity",
            Check::Dependence => "dependence",
            Check::IndexMap => "index-map",
            Check::UnitDiagonal => "unit-diagonal",
            Check::Residual => "residual",
        }
    }
}

/// Where a violation was found. Entries and indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Entry(usize, usize),
    Index(usize),
    Whole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub check: Check,
    pub position: Position,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub reconstruct_ok: bool,
    pub lower_tri_ok: bool,
    pub upper_tri_ok: bool,
    pub rank_revealing_ok: bool,
    pub sparsity_ok: bool,
    /// Only set when certifying a unit-triangular factorization.
    pub unit_diag_ok: Option<bool>,
    pub violations: Vec<Violation>,
    /// Largest entry of `|LU - A|`.
    pub max_residual: f64,
}

impl Certificate {
    fn new() -> Self {
        Certificate {
            reconstruct_ok: true,
            lower_tri_ok: true,
            upper_tri_ok: true,
            rank_revealing_ok: true,
            sparsity_ok: true,
            unit_diag_ok: None,
            violations: Vec::new(),
            max_residual: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.reconstruct_ok
            && self.lower_tri_ok
            && self.upper_tri_ok
            && self.rank_revealing_ok
            && self.sparsity_ok
            && self.unit_diag_ok != Some(false)
            && self.violations.is_empty()
    }

    fn fail(&mut self, check: Check, position: Position, detail: String) {
        match check {
            Check::Shape | Check::Reconstruct | Check::Residual => self.reconstruct_ok = false,
            Check::LowerTriangular => self.lower_tri_ok = false,
            Check::UpperTriangular => self.upper_tri_ok = false,
            Check::RankRevealing => self.rank_revealing_ok = false,
            Check::Sparsity | Check::Dependence | Check::IndexMap => self.sparsity_ok = false,
            Check::UnitDiagonal => self.unit_diag_ok = Some(false),
        }
        self.violations.push(Violation {
            check,
            position,
            detail,
        });
    }

    fn shape(&mut self, what: &str, got: (usize, usize), want: (usize, usize)) -> bool {
        if got != want {
            self.fail(
                Check::Shape,
                Position::Whole,
                format!("{what} is {}x{}, expected {}x{}", got.0, got.1, want.0, want.1),
            );
            return false;
        }
        true
    }

    fn reconstruct<T: Scalar>(&mut self, target: &Matrix<T>, lower: &Matrix<T>, upper: &Matrix<T>) {
        let Ok(product) = lower.matmul(upper) else {
            self.fail(Check::Shape, Position::Whole, "factors do not compose".into());
            return;
        };
        let Ok(diff) = product.checked_sub(target) else {
            self.fail(Check::Shape, Position::Whole, "product has the wrong shape".into());
            return;
        };
        let n = target.rows().max(target.cols()) as f64;
        let bound = match target.field().zero_tolerance() {
            Some(tol) if !T::EXACT => RESIDUAL_FACTOR * n * tol * target.norm_inf(),
            _ => 0.0,
        };
        self.max_residual = diff.max_abs();
        for i in 1..=diff.rows() {
            for j in 1..=diff.cols() {
                let d = &diff[(i, j)];
                let bad = if T::EXACT || bound == 0.0 {
                    !d.is_exact_zero()
                } else {
                    d.magnitude() > bound
                };
                if bad {
                    self.fail(
                        Check::Reconstruct,
                        Position::Entry(i, j),
                        format!("(LU - A)[{i},{j}] = {d}"),
                    );
                }
            }
        }
    }

    fn lower_triangular<T: Scalar>(&mut self, l: &Matrix<T>) {
        let zt = l.zero_test();
        for i in 1..=l.rows() {
            for j in i + 1..=l.cols() {
                if !zt.is_zero(&l[(i, j)]) {
                    self.fail(
                        Check::LowerTriangular,
                        Position::Entry(i, j),
                        format!("L[{i},{j}] = {} above the diagonal", l[(i, j)]),
                    );
                }
            }
        }
    }

    fn upper_triangular<T: Scalar>(&mut self, u: &Matrix<T>) {
        let zt = u.zero_test();
        for i in 1..=u.rows() {
            for j in 1..i.min(u.cols() + 1) {
                if !zt.is_zero(&u[(i, j)]) {
                    self.fail(
                        Check::UpperTriangular,
                        Position::Entry(i, j),
                        format!("U[{i},{j}] = {} below the diagonal", u[(i, j)]),
                    );
                }
            }
        }
    }

    fn index_map(&mut self, name: &str, map: &[usize], n: usize) -> bool {
        let mut seen = alloc::vec![false; n];
        let ok = map.len() == n
            && map.iter().all(|&v| {
                (1..=n).contains(&v) && !core::mem::replace(&mut seen[v - 1], true)
            });
        if !ok {
            self.fail(
                Check::IndexMap,
                Position::Whole,
                format!("{name} is not a permutation of 1..{n}"),
            );
        }
        ok
    }

    /// Requires `m[i, j] = 0` for each `(i, j)` yielded.
    fn zeros<T: Scalar>(
        &mut self,
        m: &Matrix<T>,
        zt: &ZeroTest,
        entries: impl IntoIterator<Item = (usize, usize)>,
        why: &str,
    ) {
        for (i, j) in entries {
            if !zt.is_zero(&m[(i, j)]) {
                self.fail(
                    Check::Sparsity,
                    Position::Entry(i, j),
                    format!("entry ({i},{j}) = {} should be zero: {why}", m[(i, j)]),
                );
            }
        }
    }
}

/// `rank(A[1:k, :])` for `k = 0..=rows`.
fn row_prefix_ranks<T: Scalar>(a: &Matrix<T>) -> Vec<usize> {
    (0..=a.rows())
        .map(|k| certify_rank(&a.row_block(1, k).expect("prefix in range")))
        .collect()
}

/// `rank(A[:, 1:k])` for `k = 0..=cols`.
fn col_prefix_ranks<T: Scalar>(a: &Matrix<T>) -> Vec<usize> {
    (0..=a.cols())
        .map(|k| certify_rank(&a.column_block(1, k).expect("prefix in range")))
        .collect()
}

/// Checks a rank-revealing factorization of square `A`: reconstruction,
/// triangularity, `rank = rank(A)`, the sparsity pattern each logical row and
/// column implies for `L` and `U`, and that `row_map`/`col_map` send
/// independent rows/columns of `A` to logical positions `<= r` and dependent
/// ones past `r`.
pub fn certify_general<T: Scalar>(a: &Matrix<T>, f: &Factorization<T>) -> Certificate {
    let mut cert = Certificate::new();
    let n = a.rows();
    let r = f.rank;
    if !cert.shape("A", a.shape(), (n, n))
        || !cert.shape("L", f.lower.shape(), (n, r))
        || !cert.shape("U", f.upper.shape(), (r, n))
    {
        return cert;
    }
    cert.reconstruct(a, &f.lower, &f.upper);
    cert.lower_triangular(&f.lower);
    cert.upper_triangular(&f.upper);

    let true_rank = certify_rank(a);
    if true_rank != r {
        cert.fail(
            Check::RankRevealing,
            Position::Whole,
            format!("inner dimension {r} but rank(A) = {true_rank}"),
        );
    }

    let rows_ok = cert.index_map("row_map", &f.row_map, n);
    let cols_ok = cert.index_map("col_map", &f.col_map, n);
    if rows_ok {
        let prefix = row_prefix_ranks(a);
        let zt = f.lower.zero_test();
        for i in 1..=n {
            let i0 = f.row_map[i - 1];
            let independent = prefix[i0] == prefix[i0 - 1] + 1;
            if i <= r {
                if i0 < i {
                    cert.fail(
                        Check::Sparsity,
                        Position::Index(i),
                        format!("pivot row {i} maps to earlier row {i0}"),
                    );
                }
                cert.zeros(&f.lower, &zt, (i + 1..=r).map(|j| (i0, j)), "pivot row of L");
                if !independent {
                    cert.fail(
                        Check::Dependence,
                        Position::Index(i0),
                        format!("row {i0} of A is a pivot but depends on earlier rows"),
                    );
                }
            } else {
                if i0 > i {
                    cert.fail(
                        Check::Sparsity,
                        Position::Index(i),
                        format!("deferred row {i} maps to later row {i0}"),
                    );
                }
                if i0 <= r {
                    cert.zeros(&f.lower, &zt, (i0..=r).map(|j| (i0, j)), "deferred row of L");
                }
                if independent {
                    cert.fail(
                        Check::Dependence,
                        Position::Index(i0),
                        format!("row {i0} of A is deferred but independent of earlier rows"),
                    );
                }
            }
        }
    }
    if cols_ok {
        let prefix = col_prefix_ranks(a);
        let zt = f.upper.zero_test();
        for j in 1..=n {
            let j0 = f.col_map[j - 1];
            let independent = prefix[j0] == prefix[j0 - 1] + 1;
            if j <= r {
                if j0 < j {
                    cert.fail(
                        Check::Sparsity,
                        Position::Index(j),
                        format!("pivot column {j} maps to earlier column {j0}"),
                    );
                }
                cert.zeros(&f.upper, &zt, (j + 1..=r).map(|i| (i, j0)), "pivot column of U");
                if !independent {
                    cert.fail(
                        Check::Dependence,
                        Position::Index(j0),
                        format!("column {j0} of A is a pivot but depends on earlier columns"),
                    );
                }
            } else {
                if j0 > j {
                    cert.fail(
                        Check::Sparsity,
                        Position::Index(j),
                        format!("deferred column {j} maps to later column {j0}"),
                    );
                }
                if j0 <= r {
                    cert.zeros(&f.upper, &zt, (j0..=r).map(|i| (i, j0)), "deferred column of U");
                }
                if independent {
                    cert.fail(
                        Check::Dependence,
                        Position::Index(j0),
                        format!("column {j0} of A is deferred but independent of earlier columns"),
                    );
                }
            }
        }
    }
    cert
}

/// Checks a unit-triangular factorization, including the unit diagonal and
/// the claim that (after the internal column reordering) row `j` depends on
/// earlier rows iff column `j` depends on earlier columns.
pub fn certify_unit<T: Scalar>(a: &Matrix<T>, f: &UnitFactorization<T>) -> Certificate {
    match f.unit_side {
        UnitSide::Lower => certify_unit_lower(a, f),
        UnitSide::Upper => {
            let flipped = UnitFactorization {
                lower: f.upper.transpose(),
                upper: f.lower.transpose(),
                unit_side: UnitSide::Lower,
                index_map: f.index_map.clone(),
                dependent: f.dependent.clone(),
                rank: f.rank,
                ambiguous: f.ambiguous,
            };
            let mut cert = certify_unit_lower(&a.transpose(), &flipped);
            core::mem::swap(&mut cert.lower_tri_ok, &mut cert.upper_tri_ok);
            for v in &mut cert.violations {
                v.check = match v.check {
                    Check::LowerTriangular => Check::UpperTriangular,
                    Check::UpperTriangular => Check::LowerTriangular,
                    other => other,
                };
                if let Position::Entry(i, j) = v.position {
                    v.position = Position::Entry(j, i);
                }
            }
            cert
        }
    }
}

fn certify_unit_lower<T: Scalar>(a: &Matrix<T>, f: &UnitFactorization<T>) -> Certificate {
    let mut cert = Certificate::new();
    let n = a.rows();
    if !cert.shape("A", a.shape(), (n, n))
        || !cert.shape("L", f.lower.shape(), (n, n))
        || !cert.shape("U", f.upper.shape(), (n, n))
    {
        return cert;
    }
    cert.reconstruct(a, &f.lower, &f.upper);
    cert.lower_triangular(&f.lower);
    cert.upper_triangular(&f.upper);

    let mut unit_ok = true;
    for i in 1..=n {
        let d = f.lower[(i, i)].clone();
        let off = d.clone() - T::one();
        let is_one = if T::EXACT {
            off.is_exact_zero()
        } else {
            off.magnitude() <= a.field().zero_tolerance().unwrap_or(0.0)
        };
        if !is_one {
            unit_ok = false;
            cert.fail(
                Check::UnitDiagonal,
                Position::Entry(i, i),
                format!("diagonal entry {i} is {d}, expected 1"),
            );
        }
    }
    cert.unit_diag_ok = Some(unit_ok);

    let true_rank = certify_rank(a);
    if f.rank != true_rank || f.rank + f.dependent.len() != n {
        cert.fail(
            Check::RankRevealing,
            Position::Whole,
            format!(
                "claimed rank {} with {} dependent steps, rank(A) = {true_rank}",
                f.rank,
                f.dependent.len()
            ),
        );
    }

    if !cert.index_map("index_map", &f.index_map, n) {
        return cert;
    }
    // B = A with columns in logical order.
    let b = Matrix::from_fn(n, n, |i, j| a[(i, f.index_map[j - 1])].clone()).with_field(a.field());
    let row_prefix = row_prefix_ranks(&b);
    let col_prefix = col_prefix_ranks(&b);
    let zt_l = f.lower.zero_test();
    let zt_u = f.upper.zero_test();
    for j in 1..=n {
        let j0 = f.index_map[j - 1];
        let row_dependent = row_prefix[j] == row_prefix[j - 1];
        let col_dependent = col_prefix[j] == col_prefix[j - 1];
        if row_dependent != col_dependent {
            cert.fail(
                Check::Dependence,
                Position::Index(j),
                format!("row {j} dependent = {row_dependent} but column {j} dependent = {col_dependent}"),
            );
        }
        if f.dependent.contains(&j) != row_dependent {
            cert.fail(
                Check::Dependence,
                Position::Index(j),
                format!("step {j} marked dependent = {} but row dependence is {row_dependent}", !row_dependent),
            );
        }
        if row_dependent {
            if j0 > j {
                cert.fail(
                    Check::Sparsity,
                    Position::Index(j),
                    format!("dependent column {j} maps to later column {j0}"),
                );
            }
            for i in 1..=n {
                let want_one = i == j;
                let ok = if want_one {
                    zt_l.is_zero(&(f.lower[(i, j)].clone() - T::one()))
                } else {
                    zt_l.is_zero(&f.lower[(i, j)])
                };
                if !ok {
                    cert.fail(
                        Check::Sparsity,
                        Position::Entry(i, j),
                        format!("L[:,{j}] should be e_{j} but L[{i},{j}] = {}", f.lower[(i, j)]),
                    );
                }
            }
            cert.zeros(&f.upper, &zt_u, (1..=n).map(|c| (j, c)), "dependent row of U");
            cert.zeros(&f.upper, &zt_u, (j0..=n).map(|i| (i, j0)), "dependent column of U");
        } else {
            if j0 < j {
                cert.fail(
                    Check::Sparsity,
                    Position::Index(j),
                    format!("independent column {j} maps to earlier column {j0}"),
                );
            }
            cert.zeros(&f.upper, &zt_u, (j + 1..=n).map(|i| (i, j0)), "independent column of U");
        }
    }
    cert
}

/// Checks `P∘A∘Q = L·U` for a pivoted factorization. With `rank_revealing`,
/// also requires `r = rank(A)` and a zero residual Schur complement.
pub fn certify_pivoted<T: Scalar>(
    a: &Matrix<T>,
    f: &PivotedFactorization<T>,
    rank_revealing: bool,
) -> Certificate {
    let mut cert = Certificate::new();
    let (m, n) = a.shape();
    if !cert.index_map("row_perm", &f.row_perm, m) || !cert.index_map("col_perm", &f.col_perm, n) {
        cert.reconstruct_ok = false;
        return cert;
    }
    let inner = f.lower.cols();
    if !cert.shape("L", f.lower.shape(), (m, inner)) || !cert.shape("U", f.upper.shape(), (inner, n)) {
        return cert;
    }
    cert.reconstruct(&f.permuted(a), &f.lower, &f.upper);
    cert.lower_triangular(&f.lower);
    cert.upper_triangular(&f.upper);
    let true_rank = certify_rank(a);
    if f.rank != true_rank || (rank_revealing && inner != true_rank) {
        cert.fail(
            Check::RankRevealing,
            Position::Whole,
            format!("rank field {}, inner dimension {inner}, rank(A) = {true_rank}", f.rank),
        );
    }
    if rank_revealing && !f.residual.is_zero() {
        cert.fail(
            Check::Residual,
            Position::Whole,
            format!("Schur complement after {} steps is nonzero", f.rank),
        );
    }
    cert
}
