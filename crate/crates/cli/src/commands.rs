//! Subcommand implementations. Each returns the process exit status; any
//! `Err` is an input or usage problem and maps to status 2.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lu_general_core::certify::{certify_general, certify_pivoted, certify_unit, Certificate};
use lu_general_core::factor::{
    lu_full_pivot, lu_general, lu_partial_pivot, lu_unit_lower, lu_unit_upper, Factorization,
    PivotedFactorization, UnitFactorization, UnitSide,
};
use lu_general_core::matgen::{gen, Family, GenSpec};
use lu_general_core::rank::{existence_report, Condition, ExistenceReport};
use lu_general_core::{Error, Matrix, Rational, ScalarField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formats::{
    parse_matrix_market, parse_rational_csv, write_matrix_market, write_rational_csv, MatrixFormat,
};
use crate::interchange::{Cell, CertificateRecord, InterchangeRecord, Mode, ResultRecord};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Float64,
}

impl FieldChoice {
    pub fn name(self) -> &'static str {
        match self {
            FieldChoice::Rational => "rational",
            FieldChoice::Float64 => "float64",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(FieldChoice::Rational),
            "float64" => Ok(FieldChoice::Float64),
            other => bail!("unknown field {other:?}"),
        }
    }
}

/// A matrix in whichever field the user asked for.
pub enum Input {
    Exact(Matrix<Rational>),
    Float(Matrix<f64>),
}

fn float_field(tol: Option<f64>) -> Result<ScalarField> {
    Ok(match tol {
        Some(t) => ScalarField::float_with_tolerance(t)?,
        None => ScalarField::float(),
    })
}

/// Reads a matrix file. The field defaults to rational for CSV and float64
/// for MatrixMarket; MatrixMarket cannot be read as rational.
pub fn load(path: &Path, field: Option<FieldChoice>, tol: Option<f64>) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let ctx = || format!("in {}", path.display());
    match (MatrixFormat::from_path(path), field) {
        (MatrixFormat::MatrixMarket, Some(FieldChoice::Rational)) => {
            bail!("MatrixMarket files hold floats; use --field float64 or a CSV file")
        }
        (MatrixFormat::MatrixMarket, _) => {
            let a = parse_matrix_market(&text).with_context(ctx)?;
            Ok(Input::Float(a.with_field(float_field(tol)?)))
        }
        (MatrixFormat::RationalCsv, Some(FieldChoice::Float64)) => {
            let a = parse_rational_csv(&text).with_context(ctx)?;
            Ok(Input::Float(a.to_f64().with_field(float_field(tol)?)))
        }
        (MatrixFormat::RationalCsv, _) => {
            if tol.is_some() {
                bail!("--tol only applies to --field float64");
            }
            Ok(Input::Exact(parse_rational_csv(&text).with_context(ctx)?))
        }
    }
}

fn condition(mode: Mode) -> Result<Condition> {
    match mode {
        Mode::General => Ok(Condition::General),
        Mode::UnitLower => Ok(Condition::UnitLower),
        Mode::UnitUpper => Ok(Condition::UnitUpper),
        other => bail!("mode {} has no existence condition; use factor", other.name()),
    }
}

fn color_enabled() -> bool {
    matches!(
        std::env::var("LU_GENERAL_COLOR").as_deref(),
        Ok("1" | "always" | "true" | "yes")
    )
}

fn paint(ok: bool, text: &str) -> String {
    match (color_enabled(), ok) {
        (false, _) => text.to_string(),
        (true, true) => format!("\x1b[32m{text}\x1b[0m"),
        (true, false) => format!("\x1b[31m{text}\x1b[0m"),
    }
}

/// Per-k nullity table followed by a one-line verdict.
pub fn render_report(report: &ExistenceReport, cond: Condition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:>10}  {:>10}  {:>10}  verdict", "k", "null(Akk)", "null(A:k)", "null(Ak:)");
    for r in &report.per_k {
        let ok = r.holds(cond);
        let _ = writeln!(
            out,
            "{:>3}  {:>10}  {:>10}  {:>10}  {}",
            r.k,
            r.null_principal,
            r.null_col_block,
            r.null_row_block,
            paint(ok, if ok { "ok" } else { "FAIL" })
        );
    }
    if let Some(tol) = report.zero_tolerance {
        let _ = writeln!(out, "float64 tolerance {tol:e} (relative); verdicts are advisory");
    }
    let what = match cond {
        Condition::General => "LU factorization",
        Condition::UnitLower => "unit lower LU factorization",
        Condition::UnitUpper => "unit upper LU factorization",
    };
    match report.witness(cond) {
        None => {
            let _ = writeln!(out, "{}", paint(true, &format!("{what} exists")));
        }
        Some(k) => {
            let _ = writeln!(out, "{}", paint(false, &format!("no {what}: condition fails at k = {k}")));
        }
    }
    out
}

pub fn check(input: &Path, mode: Mode, field: Option<FieldChoice>, tol: Option<f64>) -> Result<u8> {
    let cond = condition(mode)?;
    let report = match load(input, field, tol)? {
        Input::Exact(a) => existence_report(&a)?,
        Input::Float(a) => existence_report(&a)?,
    };
    print!("{}", render_report(&report, cond));
    Ok(if report.exists(cond) { EXIT_OK } else { EXIT_FAIL })
}

/// Runs one engine and packs the outcome into a record.
pub fn factor_record<T: Cell>(a: &Matrix<T>, mode: Mode) -> Result<InterchangeRecord> {
    let report = if a.is_square() { Some(existence_report(a)?) } else { None };
    let outcome = match mode {
        Mode::General => lu_general(a).map(|f| ResultRecord::general(&f)),
        Mode::UnitLower => lu_unit_lower(a).map(|f| ResultRecord::unit(&f)),
        Mode::UnitUpper => lu_unit_upper(a).map(|f| ResultRecord::unit(&f)),
        Mode::PartialPivot => lu_partial_pivot(a).map(|f| ResultRecord::pivoted(&f)),
        Mode::FullPivot => Ok(ResultRecord::pivoted(&lu_full_pivot(a))),
    };
    let result = match outcome {
        Ok(r) => r,
        Err(Error::NotFactorizable { witness_k }) => ResultRecord::failed(witness_k),
        Err(e) => return Err(e.into()),
    };
    Ok(InterchangeRecord::new(a, mode, result, report.as_ref()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn factor(
    input: &Path,
    mode: Mode,
    field: Option<FieldChoice>,
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<u8> {
    let record = match load(input, field, tol)? {
        Input::Exact(a) => factor_record(&a, mode)?,
        Input::Float(a) => factor_record(&a, mode)?,
    };
    write_or_print(out, &record.to_json())?;
    if out.is_some() {
        match (record.result.exists, record.result.rank, record.result.witness_k) {
            (true, Some(r), _) => println!("{}: rank {r}", mode.name()),
            (_, _, Some(k)) => println!("{}: not factorizable, condition fails at k = {k}", mode.name()),
            _ => {}
        }
    }
    Ok(if record.result.exists { EXIT_OK } else { EXIT_FAIL })
}

fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

fn take_map(map: &Option<Vec<usize>>, n: usize) -> Vec<usize> {
    map.clone().unwrap_or_else(|| identity(n))
}

/// Certifies the claims of `record` against `a`.
pub fn certify_record<T: Cell>(a: &Matrix<T>, record: &InterchangeRecord) -> Result<Certificate> {
    if (record.n, record.cols()) != a.shape() {
        bail!(
            "record is for a {}x{} matrix but the input is {}x{}",
            record.n,
            record.cols(),
            a.rows(),
            a.cols()
        );
    }
    let mode = record.mode();
    let r = &record.result;
    let (m, n) = a.shape();
    let Some((lower, upper)) = record.factors::<T>()? else {
        return certify_failure(a, mode, r.witness_k);
    };
    let rank = r.rank.unwrap_or(lower.cols());
    let row_map = take_map(&r.row_map, m);
    let col_map = take_map(&r.col_map, n);
    Ok(match mode {
        Mode::General => certify_general(
            a,
            &Factorization { lower, upper, rank, row_map, col_map, ambiguous: r.ambiguous },
        ),
        Mode::UnitLower | Mode::UnitUpper => {
            let (unit_side, index_map) = if mode == Mode::UnitLower {
                (UnitSide::Lower, col_map)
            } else {
                (UnitSide::Upper, row_map)
            };
            let dependent = r.dependent.clone().unwrap_or_else(|| match unit_side {
                UnitSide::Lower => zero_rows(&upper),
                UnitSide::Upper => zero_rows(&lower.transpose()),
            });
            certify_unit(
                a,
                &UnitFactorization { lower, upper, unit_side, index_map, dependent, rank, ambiguous: r.ambiguous },
            )
        }
        Mode::PartialPivot | Mode::FullPivot => {
            let mut f = PivotedFactorization {
                row_perm: row_map,
                col_perm: col_map,
                lower,
                upper,
                rank,
                residual: Matrix::zeros(0, 0).with_field(a.field()),
            };
            let full = mode == Mode::FullPivot;
            if full {
                f.residual = trailing_residual(a, &f).unwrap_or(f.residual);
            }
            certify_pivoted(a, &f, full)
        }
    })
}

/// Logical indices (1-based) of all-zero rows.
fn zero_rows<T: Cell>(a: &Matrix<T>) -> Vec<usize> {
    (1..=a.rows())
        .filter(|&i| (1..=a.cols()).all(|j| a[(i, j)].is_exact_zero()))
        .collect()
}

/// `(P∘A∘Q)[r+1:, r+1:] - L[r+1:, :] U[:, r+1:]`, the Schur complement left
/// after `r` steps. `None` when the factor shapes do not allow it.
fn trailing_residual<T: Cell>(a: &Matrix<T>, f: &PivotedFactorization<T>) -> Option<Matrix<T>> {
    let (m, n) = a.shape();
    let r = f.lower.cols();
    if r > m.min(n) || f.row_perm.iter().chain(&f.col_perm).any(|&v| v == 0 || v > m.max(n)) {
        return None;
    }
    let pa = f.permuted(a);
    let tail = pa.submatrix(r + 1, m, r + 1, n).ok()?;
    let l2 = f.lower.submatrix(r + 1, m, 1, r).ok()?;
    let u2 = f.upper.submatrix(1, r, r + 1, n).ok()?;
    tail.checked_sub(&l2.matmul(&u2).ok()?).ok()
}

/// A record claiming non-existence passes when the condition really fails
/// at the claimed `k`.
fn certify_failure<T: Cell>(a: &Matrix<T>, mode: Mode, claimed: Option<usize>) -> Result<Certificate> {
    let mut cert = Certificate {
        reconstruct_ok: true,
        lower_tri_ok: true,
        upper_tri_ok: true,
        rank_revealing_ok: true,
        sparsity_ok: true,
        unit_diag_ok: None,
        violations: Vec::new(),
        max_residual: 0.0,
    };
    let actual = match condition(mode) {
        Ok(cond) => existence_report(a)?.witness(cond),
        Err(_) => None,
    };
    if actual.is_none() || actual != claimed {
        cert.reconstruct_ok = false;
        cert.violations.push(lu_general_core::certify::Violation {
            check: lu_general_core::certify::Check::Dependence,
            position: lu_general_core::certify::Position::Whole,
            detail: format!(
                "record claims no factorization (witness {claimed:?}) but the condition fails at {actual:?}"
            ),
        });
    }
    Ok(cert)
}

pub fn verify(matrix: &Path, record_path: &Path, out: Option<&Path>) -> Result<u8> {
    let text = fs::read_to_string(record_path)
        .with_context(|| format!("cannot read {}", record_path.display()))?;
    let record = InterchangeRecord::from_json(&text)
        .with_context(|| format!("in {}", record_path.display()))?;
    let field = FieldChoice::parse(&record.field)?;
    let cert = match load(matrix, Some(field), None)? {
        Input::Exact(a) => certify_record(&a, &record)?,
        Input::Float(a) => certify_record(&a, &record)?,
    };
    let json = serde_json::to_string_pretty(&CertificateRecord::from(&cert))? + "\n";
    write_or_print(out, &json)?;
    if out.is_some() || !cert.passed() {
        eprintln!("{}", paint(cert.passed(), if cert.passed() { "certificate: pass" } else { "certificate: FAIL" }));
    }
    Ok(if cert.passed() { EXIT_OK } else { EXIT_FAIL })
}

pub struct GenArgs {
    pub family: Family,
    pub n: usize,
    pub rank: Option<usize>,
    pub bound: u32,
    pub seed: u64,
    pub count: usize,
    pub out: Option<PathBuf>,
}

fn render_matrix(a: &Matrix<Rational>, path: Option<&Path>) -> String {
    match path.map(MatrixFormat::from_path) {
        Some(MatrixFormat::MatrixMarket) => write_matrix_market(&a.to_f64()),
        _ => write_rational_csv(a),
    }
}

pub fn generate(args: &GenArgs) -> Result<u8> {
    let spec_for = |seed| GenSpec {
        n: args.n,
        rank: args.rank.unwrap_or(args.n),
        seed,
        entry_bound: args.bound,
        family: args.family,
    };
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    if args.count == 1 {
        let g = gen(&spec_for(args.seed))?;
        let text = render_matrix(&g.matrix, args.out.as_deref());
        write_or_print(args.out.as_deref(), &text)?;
        if let (Some(path), Some(k)) = (&args.out, g.witness_k) {
            println!("{}: witness k = {k}", path.display());
        }
        return Ok(EXIT_OK);
    }
    let Some(dir) = &args.out else {
        bail!("--count > 1 needs --out DIR");
    };
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for i in 0..args.count as u64 {
        let seed = args.seed.wrapping_add(i);
        let g = gen(&spec_for(seed))?;
        let path = dir.join(format!("{}-n{}-s{seed}.csv", args.family.name(), args.n));
        fs::write(&path, write_rational_csv(&g.matrix))
            .with_context(|| format!("cannot write {}", path.display()))?;
        match g.witness_k {
            Some(k) => println!("{} witness k = {k}", path.display()),
            None => println!("{}", path.display()),
        }
    }
    Ok(EXIT_OK)
}

/// Outcome of comparing one fixture with the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: String,
    pub oracle_exists: bool,
    pub engine_exists: bool,
    /// `Some(ok)` when the oracle claimed factors.
    pub oracle_reconstructs: Option<bool>,
    pub engine_reconstructs: Option<bool>,
}

impl FixtureOutcome {
    pub fn agrees(&self) -> bool {
        self.oracle_exists == self.engine_exists
            && self.oracle_reconstructs != Some(false)
            && self.engine_reconstructs != Some(false)
    }
}

/// `L·U` equals `P∘A∘Q` for the record's maps (identity for the
/// permutation-free modes), exactly or within the float residual bound.
fn reconstructs<T: Cell>(a: &Matrix<T>, mode: Mode, rows: &ResultRecord, l: &Matrix<T>, u: &Matrix<T>) -> bool {
    let (m, n) = a.shape();
    let target = match mode {
        Mode::PartialPivot | Mode::FullPivot => {
            let f = PivotedFactorization {
                row_perm: take_map(&rows.row_map, m),
                col_perm: take_map(&rows.col_map, n),
                lower: l.clone(),
                upper: u.clone(),
                rank: 0,
                residual: Matrix::zeros(0, 0),
            };
            let valid = |p: &[usize], len| {
                let mut s = p.to_vec();
                s.sort_unstable();
                s == identity(len)
            };
            if !valid(&f.row_perm, m) || !valid(&f.col_perm, n) {
                return false;
            }
            f.permuted(a)
        }
        _ => a.clone(),
    };
    let Ok(product) = l.matmul(u) else { return false };
    let Ok(diff) = product.checked_sub(&target) else { return false };
    match a.field().zero_tolerance() {
        Some(tol) if !T::EXACT => {
            let bound = lu_general_core::certify::RESIDUAL_FACTOR * m.max(n) as f64 * tol * a.norm_inf();
            diff.max_abs() <= bound
        }
        _ => diff.is_zero(),
    }
}

fn compare<T: Cell>(name: String, record: &InterchangeRecord) -> Result<FixtureOutcome> {
    let a: Matrix<T> = record.matrix()?;
    let mode = record.mode();
    let oracle_factors = record.factors::<T>()?;
    let ours = factor_record(&a, mode)?;
    let ours_factors = ours.factors::<T>()?;
    Ok(FixtureOutcome {
        name,
        oracle_exists: record.result.exists,
        engine_exists: ours.result.exists,
        oracle_reconstructs: oracle_factors.map(|(l, u)| reconstructs(&a, mode, &record.result, &l, &u)),
        engine_reconstructs: ours_factors.map(|(l, u)| reconstructs(&a, mode, &ours.result, &l, &u)),
    })
}

pub fn compare_fixture(path: &Path) -> Result<FixtureOutcome> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let record = InterchangeRecord::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    let name = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    match FieldChoice::parse(&record.field)? {
        FieldChoice::Rational => compare::<Rational>(name, &record),
        FieldChoice::Float64 => compare::<f64>(name, &record),
    }
    .with_context(|| format!("in {}", path.display()))
}

/// Sorted `*.json` files in `dir`, optionally a seeded sample of `count`.
pub fn fixture_paths(dir: &Path, count: Option<usize>, seed: u64) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).with_context(|| format!("cannot read fixture dir {}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        bail!("no *.json fixtures in {}", dir.display());
    }
    if let Some(count) = count.filter(|&c| c < paths.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = rand::seq::index::sample(&mut rng, paths.len(), count).into_vec();
        picked.sort_unstable();
        paths = picked.into_iter().map(|i| paths[i].clone()).collect();
    }
    Ok(paths)
}

pub fn render_match_matrix(outcomes: &[FixtureOutcome]) -> String {
    let count = |o: bool, e: bool| outcomes.iter().filter(|x| x.oracle_exists == o && x.engine_exists == e).count();
    let recon = |pick: fn(&FixtureOutcome) -> Option<bool>| {
        let claimed = outcomes.iter().filter(|x| pick(x).is_some()).count();
        let ok = outcomes.iter().filter(|x| pick(x) == Some(true)).count();
        format!("{ok}/{claimed}")
    };
    let agree = outcomes.iter().filter(|x| x.oracle_exists == x.engine_exists).count();
    let mut out = String::new();
    let _ = writeln!(out, "{:>16}  {:>13}  {:>12}", "", "engine exists", "engine fails");
    let _ = writeln!(out, "{:>16}  {:>13}  {:>12}", "oracle exists", count(true, true), count(true, false));
    let _ = writeln!(out, "{:>16}  {:>13}  {:>12}", "oracle fails", count(false, true), count(false, false));
    let _ = writeln!(out, "verdicts agree: {agree}/{}", outcomes.len());
    let _ = writeln!(
        out,
        "products reconstruct: oracle {}, engine {}",
        recon(|x| x.oracle_reconstructs),
        recon(|x| x.engine_reconstructs)
    );
    for o in outcomes.iter().filter(|o| !o.agrees()) {
        let _ = writeln!(
            out,
            "{} {}: oracle exists={} engine exists={} oracle product={:?} engine product={:?}",
            paint(false, "MISMATCH"),
            o.name,
            o.oracle_exists,
            o.engine_exists,
            o.oracle_reconstructs,
            o.engine_reconstructs
        );
    }
    out
}

pub fn xcheck(dir: &Path, count: Option<usize>, seed: u64) -> Result<u8> {
    let paths = fixture_paths(dir, count, seed)?;
    let outcomes = paths.iter().map(|p| compare_fixture(p)).collect::<Result<Vec<_>>>()?;
    print!("{}", render_match_matrix(&outcomes));
    Ok(if outcomes.iter().all(FixtureOutcome::agrees) { EXIT_OK } else { EXIT_FAIL })
}
