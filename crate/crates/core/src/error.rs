use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("range rows {row_start}..{row_end}, cols {col_start}..{col_end} is out of bounds for a {rows}x{cols} matrix")]
    Bounds {
        rows: usize,
        cols: usize,
        row_start: usize,
        row_end: usize,
        col_start: usize,
        col_end: usize,
    },

    #[error("{op}: incompatible shapes {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry buffer of length {len} does not fit a {rows}x{cols} matrix")]
    BadLength { rows: usize, cols: usize, len: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("no LU factorization exists; the existence condition first fails at k = {witness_k}")]
    NotFactorizable { witness_k: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix does not have full column rank ({rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },

    #[error("zero tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("cannot parse rational literal {0:?}")]
    ParseRational(String),
}
