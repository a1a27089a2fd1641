//! InterchangeRecord JSON (schema version "1") and certificate JSON.

use lu_general_core::certify::{Certificate, Position};
use lu_general_core::factor::{Factorization, PivotedFactorization, UnitFactorization, UnitSide};
use lu_general_core::rank::{ExistenceReport, NullityRecord};
use lu_general_core::{parse_rational, Matrix, Rational, Scalar};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("unsupported schema_version {0:?}")]
    Version(String),
    #[error("unknown field {0:?}")]
    Field(String),
    #[error("unknown mode {0:?}")]
    Mode(String),
    #[error("{what}: {msg}")]
    Shape { what: &'static str, msg: String },
    #[error("{what}[{row}][{col}]: {msg}")]
    Entry { what: &'static str, row: usize, col: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A matrix cell: rationals travel as canonical `"p/q"` strings, floats as
/// JSON numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Number(f64),
    Text(String),
}

pub type Rows = Vec<Vec<Entry>>;

/// `(L, U)` as decoded from a record.
pub type Factors<T> = (Matrix<T>, Matrix<T>);

pub trait Cell: Scalar {
    const FIELD: &'static str;
    fn encode(&self) -> Entry;
    fn decode(entry: &Entry) -> Result<Self, String>;
}

impl Cell for Rational {
    const FIELD: &'static str = "rational";

    fn encode(&self) -> Entry {
        Entry::Text(self.to_string())
    }

    fn decode(entry: &Entry) -> Result<Self, String> {
        match entry {
            Entry::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
            Entry::Number(x) if x.fract() == 0.0 && x.abs() < 9.0e15 => {
                Ok(Rational::from_i64(*x as i64))
            }
            Entry::Number(x) => Err(format!("non-integer number {x} in a rational record")),
        }
    }
}

impl Cell for f64 {
    const FIELD: &'static str = "float64";

    fn encode(&self) -> Entry {
        Entry::Number(*self)
    }

    fn decode(entry: &Entry) -> Result<Self, String> {
        match entry {
            Entry::Number(x) => Ok(*x),
            Entry::Text(s) => s.trim().parse().map_err(|_| format!("cannot parse {s:?}")),
        }
    }
}

pub fn encode_matrix<T: Cell>(a: &Matrix<T>) -> Rows {
    (1..=a.rows())
        .map(|i| (1..=a.cols()).map(|j| a[(i, j)].encode()).collect())
        .collect()
}

/// Decodes nested rows. `cols_if_empty` fixes the width when there are no
/// rows to read it from.
pub fn decode_matrix<T: Cell>(
    what: &'static str,
    rows: &Rows,
    cols_if_empty: usize,
) -> Result<Matrix<T>, SchemaError> {
    let cols = rows.first().map_or(cols_if_empty, Vec::len);
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(SchemaError::Shape {
                what,
                msg: format!("row {} has {} entries, expected {cols}", i + 1, row.len()),
            });
        }
        for (j, e) in row.iter().enumerate() {
            data.push(T::decode(e).map_err(|msg| SchemaError::Entry {
                what,
                row: i + 1,
                col: j + 1,
                msg,
            })?);
        }
    }
    Ok(Matrix::from_vec(rows.len(), cols, data).expect("length checked"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    General,
    UnitLower,
    UnitUpper,
    PartialPivot,
    FullPivot,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::General,
        Mode::UnitLower,
        Mode::UnitUpper,
        Mode::PartialPivot,
        Mode::FullPivot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::General => "general",
            Mode::UnitLower => "unit-lower",
            Mode::UnitUpper => "unit-upper",
            Mode::PartialPivot => "partial-pivot",
            Mode::FullPivot => "full-pivot",
        }
    }

    pub fn parse(s: &str) -> Result<Mode, SchemaError> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| SchemaError::Mode(s.to_string()))
    }
}

fn general_mode() -> String {
    Mode::General.name().to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub exists: bool,
    #[serde(default)]
    pub witness_k: Option<usize>,
    #[serde(rename = "L", default)]
    pub lower: Option<Rows>,
    #[serde(rename = "U", default)]
    pub upper: Option<Rows>,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub row_map: Option<Vec<usize>>,
    #[serde(default)]
    pub col_map: Option<Vec<usize>>,
    /// Unit modes only: logical indices flagged as dependent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dependent: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ambiguous: bool,
}

impl ResultRecord {
    pub fn failed(witness_k: usize) -> Self {
        ResultRecord {
            exists: false,
            witness_k: Some(witness_k),
            lower: None,
            upper: None,
            rank: None,
            row_map: None,
            col_map: None,
            dependent: None,
            ambiguous: false,
        }
    }

    fn factors<T: Cell>(lower: &Matrix<T>, upper: &Matrix<T>, rank: usize) -> Self {
        ResultRecord {
            exists: true,
            witness_k: None,
            lower: Some(encode_matrix(lower)),
            upper: Some(encode_matrix(upper)),
            rank: Some(rank),
            row_map: None,
            col_map: None,
            dependent: None,
            ambiguous: false,
        }
    }

    pub fn general<T: Cell>(f: &Factorization<T>) -> Self {
        ResultRecord {
            row_map: Some(f.row_map.clone()),
            col_map: Some(f.col_map.clone()),
            ambiguous: f.ambiguous,
            ..Self::factors(&f.lower, &f.upper, f.rank)
        }
    }

    pub fn unit<T: Cell>(f: &UnitFactorization<T>) -> Self {
        let n = f.index_map.len();
        let identity: Vec<usize> = (1..=n).collect();
        let (row_map, col_map) = match f.unit_side {
            UnitSide::Lower => (identity, f.index_map.clone()),
            UnitSide::Upper => (f.index_map.clone(), identity),
        };
        ResultRecord {
            row_map: Some(row_map),
            col_map: Some(col_map),
            dependent: Some(f.dependent.clone()),
            ambiguous: f.ambiguous,
            ..Self::factors(&f.lower, &f.upper, f.rank)
        }
    }

    pub fn pivoted<T: Cell>(f: &PivotedFactorization<T>) -> Self {
        ResultRecord {
            row_map: Some(f.row_perm.clone()),
            col_map: Some(f.col_perm.clone()),
            ..Self::factors(&f.lower, &f.upper, f.rank)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub k: usize,
    pub null_principal: usize,
    pub null_col_block: usize,
    pub null_row_block: usize,
    pub general_ok: bool,
    pub unit_lower_ok: bool,
    pub unit_upper_ok: bool,
}

impl From<&NullityRecord> for ReportRow {
    fn from(r: &NullityRecord) -> Self {
        ReportRow {
            k: r.k,
            null_principal: r.null_principal,
            null_col_block: r.null_col_block,
            null_row_block: r.null_row_block,
            general_ok: r.general_ok,
            unit_lower_ok: r.unit_lower_ok,
            unit_upper_ok: r.unit_upper_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterchangeRecord {
    pub schema_version: String,
    pub n: usize,
    /// Column count, written only for rectangular full-pivot input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub field: String,
    #[serde(default = "general_mode")]
    pub mode: String,
    pub matrix: Rows,
    pub result: ResultRecord,
    #[serde(default)]
    pub report: Vec<ReportRow>,
}

impl InterchangeRecord {
    pub fn new<T: Cell>(
        a: &Matrix<T>,
        mode: Mode,
        result: ResultRecord,
        report: Option<&ExistenceReport>,
    ) -> Self {
        InterchangeRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            n: a.rows(),
            cols: (!a.is_square()).then_some(a.cols()),
            field: T::FIELD.to_string(),
            mode: mode.name().to_string(),
            matrix: encode_matrix(a),
            result,
            report: report.map_or_else(Vec::new, |r| r.per_k.iter().map(ReportRow::from).collect()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let record: InterchangeRecord = serde_json::from_str(text)?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(SchemaError::Version(record.schema_version));
        }
        if record.field != Rational::FIELD && record.field != f64::FIELD {
            return Err(SchemaError::Field(record.field));
        }
        Mode::parse(&record.mode)?;
        if record.matrix.len() != record.n {
            return Err(SchemaError::Shape {
                what: "matrix",
                msg: format!("{} rows but n = {}", record.matrix.len(), record.n),
            });
        }
        Ok(record)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record is serializable") + "\n"
    }

    pub fn mode(&self) -> Mode {
        Mode::parse(&self.mode).expect("validated on load")
    }

    pub fn cols(&self) -> usize {
        self.cols.unwrap_or(self.n)
    }

    pub fn matrix<T: Cell>(&self) -> Result<Matrix<T>, SchemaError> {
        let a: Matrix<T> = decode_matrix("matrix", &self.matrix, self.cols())?;
        if a.cols() != self.cols() {
            return Err(SchemaError::Shape {
                what: "matrix",
                msg: format!("{} columns, expected {}", a.cols(), self.cols()),
            });
        }
        Ok(a)
    }

    /// `(L, U)` when the record claims a factorization.
    pub fn factors<T: Cell>(&self) -> Result<Option<Factors<T>>, SchemaError> {
        let r = &self.result;
        if !r.exists {
            return Ok(None);
        }
        let missing = |what| SchemaError::Shape { what, msg: "missing".into() };
        let lower = r.lower.as_ref().ok_or(missing("L"))?;
        let upper = r.upper.as_ref().ok_or(missing("U"))?;
        let rank = r.rank.ok_or(missing("rank"))?;
        let l: Matrix<T> = decode_matrix("L", lower, rank)?;
        let u: Matrix<T> = decode_matrix("U", upper, self.cols())?;
        Ok(Some((l, u)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub check: String,
    /// `[i, j]`, `k`, or null for whole-object failures.
    pub position: serde_json::Value,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub passed: bool,
    pub reconstruct_ok: bool,
    pub lower_tri_ok: bool,
    pub upper_tri_ok: bool,
    pub rank_revealing_ok: bool,
    pub sparsity_ok: bool,
    pub unit_diag_ok: Option<bool>,
    pub max_residual: f64,
    pub violations: Vec<ViolationRecord>,
}

impl From<&Certificate> for CertificateRecord {
    fn from(c: &Certificate) -> Self {
        CertificateRecord {
            passed: c.passed(),
            reconstruct_ok: c.reconstruct_ok,
            lower_tri_ok: c.lower_tri_ok,
            upper_tri_ok: c.upper_tri_ok,
            rank_revealing_ok: c.rank_revealing_ok,
            sparsity_ok: c.sparsity_ok,
            unit_diag_ok: c.unit_diag_ok,
            max_residual: c.max_residual,
            violations: c
                .violations
                .iter()
                .map(|v| ViolationRecord {
                    check: v.check.name().to_string(),
                    position: match v.position {
                        Position::Entry(i, j) => serde_json::json!([i, j]),
                        Position::Index(k) => serde_json::json!(k),
                        Position::Whole => serde_json::Value::Null,
                    },
                    detail: v.detail.clone(),
                })
                .collect(),
        }
    }
}
