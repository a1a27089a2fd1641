//! Matrix files: RationalCSV for exact input, MatrixMarket dense array for
//! floats.

use std::fmt::Write as _;
use std::path::Path;

use lu_general_core::{parse_rational, Matrix, Rational};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("row {row}, column {col}: cannot parse {text:?}")]
    Cell { row: usize, col: usize, text: String },
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    RationalCsv,
    MatrixMarket,
}

impl MatrixFormat {
    /// `.mtx` means MatrixMarket, anything else RationalCSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => MatrixFormat::MatrixMarket,
            _ => MatrixFormat::RationalCsv,
        }
    }
}

/// Parses RationalCSV: one row per record, cells `p` or `p/q`, lines starting
/// with `#` ignored. Row and column numbers in errors are 1-based and count
/// matrix rows, not file lines.
pub fn parse_rational_csv(text: &str) -> Result<Matrix<Rational>, FormatError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                parse_rational(cell).map_err(|_| FormatError::Cell {
                    row: r + 1,
                    col: c + 1,
                    text: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(FormatError::Ragged {
                    row: r + 1,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows).expect("rows checked for equal length"))
}

pub fn write_rational_csv(a: &Matrix<Rational>) -> String {
    let mut out = String::new();
    for i in 1..=a.rows() {
        let cells: Vec<String> = (1..=a.cols()).map(|j| a[(i, j)].to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses `%%MatrixMarket matrix array real general` (integer data is
/// accepted too). Entries are column-major.
pub fn parse_matrix_market(text: &str) -> Result<Matrix<f64>, FormatError> {
    let syntax = |line: usize, msg: &str| FormatError::Syntax { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(syntax(1, "missing %%MatrixMarket banner"));
    }
    match words.get(1..5) {
        Some([object, format, kind, symmetry])
            if object == "matrix"
                && format == "array"
                && (kind == "real" || kind == "integer" || kind == "double")
                && symmetry == "general" => {}
        _ => return Err(syntax(1, "only 'matrix array real general' is supported")),
    }
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body.next().ok_or_else(|| syntax(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| syntax(size_line, "size line must be two integers"))?;
    let &[rows, cols] = dims.as_slice() else {
        return Err(syntax(size_line, "size line must be two integers"));
    };
    let mut data = vec![0.0; rows * cols];
    let mut seen = 0;
    for (line, text) in body {
        for word in text.split_whitespace() {
            if seen == rows * cols {
                return Err(syntax(line, "more entries than rows*cols"));
            }
            let (i, j) = (seen % rows.max(1), seen / rows.max(1));
            data[i * cols + j] = word.parse().map_err(|_| FormatError::Cell {
                row: i + 1,
                col: j + 1,
                text: word.to_string(),
            })?;
            seen += 1;
        }
    }
    if seen != rows * cols {
        return Err(syntax(0, &format!("expected {} entries, found {seen}", rows * cols)));
    }
    Ok(Matrix::from_vec(rows, cols, data).expect("length checked"))
}

/// Writes column-major entries using the shortest decimal that reads back to
/// the same `f64`.
pub fn write_matrix_market(a: &Matrix<f64>) -> String {
    let mut out = String::from("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    for j in 1..=a.cols() {
        for i in 1..=a.rows() {
            let _ = writeln!(out, "{:?}", a[(i, j)]);
        }
    }
    out
}
