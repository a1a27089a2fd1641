use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lu_general::commands::{self, FieldChoice, GenArgs, EXIT_INPUT};
use lu_general::interchange::Mode;
use lu_general_core::matgen::Family;

/// Existence checks and rank-revealing LU factorization without pivoting.
///
/// Exit status: 0 exists / pass, 1 not factorizable / fail, 2 input or usage
/// error.
#[derive(Parser)]
#[command(name = "lu-general", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    UnitLower,
    UnitUpper,
    PartialPivot,
    FullPivot,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => Mode::General,
            ModeArg::UnitLower => Mode::UnitLower,
            ModeArg::UnitUpper => Mode::UnitUpper,
            ModeArg::PartialPivot => Mode::PartialPivot,
            ModeArg::FullPivot => Mode::FullPivot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Rational,
    Float64,
}

impl From<FieldArg> for FieldChoice {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Rational => FieldChoice::Rational,
            FieldArg::Float64 => FieldChoice::Float64,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ProductLu,
    BlockEmbed,
    AntiDiagonalTrap,
    UnitLowerFeasible,
    Random,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::ProductLu => Family::ProductLU,
            FamilyArg::BlockEmbed => Family::BlockEmbed,
            FamilyArg::AntiDiagonalTrap => Family::AntiDiagonalTrap,
            FamilyArg::UnitLowerFeasible => Family::UnitLowerFeasible,
            FamilyArg::Random => Family::Random,
        }
    }
}

#[derive(clap::Args)]
struct FieldOpts {
    /// Scalar field; defaults to rational for CSV and float64 for .mtx.
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    /// Relative zero tolerance for float64.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the per-k nullity table and decide existence.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[command(flatten)]
        field: FieldOpts,
    },
    /// Factor a matrix and write an interchange record.
    Factor {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[command(flatten)]
        field: FieldOpts,
        /// Record path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify an interchange record against a matrix file.
    Verify {
        matrix: PathBuf,
        record: PathBuf,
        /// Certificate path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate test matrices as RationalCSV (or MatrixMarket for .mtx).
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Defaults to n.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of matrices; more than one needs --out DIR.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare engine verdicts and products with a directory of fixtures.
    Xcheck {
        dir: PathBuf,
        /// Check a seeded sample of this many fixtures.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check { input, mode, field } => {
            commands::check(&input, mode.into(), field.field.map(Into::into), field.tol)
        }
        Command::Factor { input, mode, field, out } => commands::factor(
            &input,
            mode.into(),
            field.field.map(Into::into),
            field.tol,
            out.as_deref(),
        ),
        Command::Verify { matrix, record, out } => commands::verify(&matrix, &record, out.as_deref()),
        Command::Gen { family, n, rank, bound, seed, count, out } => commands::generate(&GenArgs {
            family: family.into(),
            n,
            rank,
            bound,
            seed,
            count,
            out,
        }),
        Command::Xcheck { dir, count, seed } => commands::xcheck(&dir, count, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
