//! Seeded generators of exact rational test matrices.
//!
//! Entries are `p/q` with `p` uniform in `[-b, b]` and `q` uniform in
//! `[-b, b] \ {0}`, `b = entry_bound`. A draw whose rank comes out lower than
//! requested is discarded and redrawn on the next ChaCha stream, so output
//! depends on the spec alone.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rank::rank;
use crate::scalar::{Rational, Scalar};

/// Redraw budget for rank-constrained families.
const MAX_ATTEMPTS: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `L·U` with random n×rank lower and rank×n upper factors; rank exact.
    ProductLU,
    /// `[[0,0,0],[0,0,C],[0,B,D]]` around a random factorizable `B`.
    BlockEmbed,
    /// `[[0,1],[1,0]]` embedded after a strongly non-singular leading block,
    /// mixed by unit triangular factors; never factorizable.
    AntiDiagonalTrap,
    /// `L·U` with `L` unit lower triangular, so a unit-lower factorization
    /// exists; rank exact.
    UnitLowerFeasible,
    /// Independent entries, each zero with probability 1/2.
    Random,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::ProductLU,
        Family::BlockEmbed,
        Family::AntiDiagonalTrap,
        Family::UnitLowerFeasible,
        Family::Random,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::ProductLU => "product-lu",
            Family::BlockEmbed => "block-embed",
            Family::AntiDiagonalTrap => "anti-diagonal-trap",
            Family::UnitLowerFeasible => "unit-lower-feasible",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    /// Exact rank for `ProductLU` and `UnitLowerFeasible`; inner rank of the
    /// core block for `BlockEmbed`; ignored otherwise.
    pub rank: usize,
    pub seed: u64,
    pub entry_bound: u32,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub matrix: Matrix<Rational>,
    /// Smallest `k` at which the general existence condition fails, when the
    /// family guarantees one.
    pub witness_k: Option<usize>,
}

struct Draw {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Draw {
    fn new(seed: u64, stream: u64, bound: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draw {
            rng,
            bound: i64::from(bound),
        }
    }

    fn rational(&mut self) -> Rational {
        let b = self.bound;
        let num = self.rng.random_range(-b..=b);
        let mut den = self.rng.random_range(1..=2 * b);
        if den > b {
            den = b - den;
        }
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn nonzero(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if !q.is_exact_zero() {
                return q;
            }
        }
    }

    fn sparse(&mut self) -> Rational {
        if self.rng.random_bool(0.5) {
            Rational::zero()
        } else {
            self.rational()
        }
    }

    fn index(&mut self, upto: usize) -> usize {
        self.rng.random_range(0..upto)
    }

    /// rows×cols, lower trapezoidal (entry `(i, j)` zero for `j > i`).
    fn lower(&mut self, rows: usize, cols: usize) -> Matrix<Rational> {
        Matrix::build(rows, cols, |r, c| if c <= r { self.rational() } else { Rational::zero() })
    }

    fn upper(&mut self, rows: usize, cols: usize) -> Matrix<Rational> {
        Matrix::build(rows, cols, |r, c| if r <= c { self.rational() } else { Rational::zero() })
    }

    fn dense(&mut self, rows: usize, cols: usize) -> Matrix<Rational> {
        Matrix::build(rows, cols, |_, _| self.rational())
    }

    fn unit_lower(&mut self, n: usize, skip: Option<(usize, usize)>) -> Matrix<Rational> {
        Matrix::build(n, n, |r, c| match r.cmp(&c) {
            core::cmp::Ordering::Equal => Rational::one(),
            core::cmp::Ordering::Greater if Some((r, c)) != skip => self.sparse(),
            _ => Rational::zero(),
        })
    }
}

fn product(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    a.matmul(b).expect("generator shapes agree")
}

/// Copies `block` into `dst` with its top-left corner at 0-based `(r0, c0)`.
fn place(dst: &mut Matrix<Rational>, block: &Matrix<Rational>, r0: usize, c0: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            *dst.at_mut(r0 + r, c0 + c) = block.at(r, c).clone();
        }
    }
}

/// Redraws until `accept` holds, one ChaCha stream per attempt.
fn with_retries<T>(
    seed: u64,
    bound: u32,
    mut attempt: impl FnMut(&mut Draw) -> Option<T>,
) -> Result<T> {
    for stream in 0..MAX_ATTEMPTS {
        let mut draw = Draw::new(seed, stream, bound);
        if let Some(out) = attempt(&mut draw) {
            return Ok(out);
        }
    }
    Err(Error::InvalidSpec(format!(
        "no acceptable draw within {MAX_ATTEMPTS} attempts"
    )))
}

pub fn gen(spec: &GenSpec) -> Result<Generated> {
    let GenSpec {
        n,
        rank: want,
        seed,
        entry_bound,
        family,
    } = *spec;
    if want > n {
        return Err(Error::InvalidSpec(format!("rank {want} exceeds size {n}")));
    }
    if entry_bound == 0 {
        return Err(Error::InvalidSpec("entry_bound must be at least 1".into()));
    }
    let plain = |matrix| Generated {
        matrix,
        witness_k: None,
    };
    match family {
        Family::ProductLU => with_retries(seed, entry_bound, |d| {
            let a = product(&d.lower(n, want), &d.upper(want, n));
            (rank(&a) == want).then(|| plain(a))
        }),
        Family::UnitLowerFeasible => with_retries(seed, entry_bound, |d| {
            let l = d.unit_lower(n, None);
            let mut u = d.upper(n, n);
            let mut kept: Vec<usize> = (0..n).collect();
            while kept.len() > want {
                let drop = kept.remove(d.index(kept.len()));
                for c in 0..n {
                    *u.at_mut(drop, c) = Rational::zero();
                }
            }
            let a = product(&l, &u);
            (rank(&a) == want).then(|| plain(a))
        }),
        Family::BlockEmbed => with_retries(seed, entry_bound, |d| {
            let m = n / 3;
            let core_n = n - 2 * m;
            let inner = want.min(core_n);
            let b = product(&d.lower(core_n, inner), &d.upper(inner, core_n));
            let c = d.dense(m, m);
            let dd = d.dense(core_n, m);
            let mut a = Matrix::zeros(n, n);
            place(&mut a, &c, m, m + core_n);
            place(&mut a, &b, 2 * m, m);
            place(&mut a, &dd, 2 * m, m + core_n);
            Some(plain(a))
        }),
        Family::AntiDiagonalTrap => {
            if n < 2 {
                return Err(Error::InvalidSpec(
                    "anti-diagonal trap needs n >= 2".into(),
                ));
            }
            with_retries(seed, entry_bound, |d| {
                let p = d.index(n - 1);
                let q = n - p - 2;
                // Strongly non-singular leading block.
                let lt = Matrix::build(p, p, |r, c| match r.cmp(&c) {
                    core::cmp::Ordering::Equal => Rational::one(),
                    core::cmp::Ordering::Greater => d.rational(),
                    core::cmp::Ordering::Less => Rational::zero(),
                });
                let ut = Matrix::build(p, p, |r, c| match r.cmp(&c) {
                    core::cmp::Ordering::Equal => d.nonzero(),
                    core::cmp::Ordering::Less => d.rational(),
                    core::cmp::Ordering::Greater => Rational::zero(),
                });
                let tail = Matrix::build(q, q, |_, _| d.sparse());
                let mut core = Matrix::zeros(n, n);
                place(&mut core, &product(&lt, &ut), 0, 0);
                *core.at_mut(p, p + 1) = Rational::one();
                *core.at_mut(p + 1, p) = Rational::one();
                place(&mut core, &tail, p + 2, p + 2);
                // Unit triangular mixing keeps every leading nullity; the 2×2
                // trap itself is left unmixed.
                let left = d.unit_lower(n, Some((p + 1, p)));
                let right = d.unit_lower(n, Some((p + 1, p))).transpose();
                let a = product(&product(&left, &core), &right);
                Some(Generated {
                    matrix: a,
                    witness_k: Some(p + 1),
                })
            })
        }
        Family::Random => with_retries(seed, entry_bound, |d| {
            Some(plain(Matrix::build(n, n, |_, _| d.sparse())))
        }),
    }
}

/// Dense rows×cols matrix of exact rank `rank`, as a product of random
/// rows×rank and rank×cols factors.
pub fn gen_rectangular(
    rows: usize,
    cols: usize,
    rank_wanted: usize,
    seed: u64,
    entry_bound: u32,
) -> Result<Matrix<Rational>> {
    if rank_wanted > rows.min(cols) {
        return Err(Error::InvalidSpec(format!(
            "rank {rank_wanted} exceeds min({rows}, {cols})"
        )));
    }
    if entry_bound == 0 {
        return Err(Error::InvalidSpec("entry_bound must be at least 1".into()));
    }
    with_retries(seed, entry_bound, |d| {
        let a = product(&d.dense(rows, rank_wanted), &d.dense(rank_wanted, cols));
        (rank(&a) == rank_wanted).then_some(a)
    })
}
