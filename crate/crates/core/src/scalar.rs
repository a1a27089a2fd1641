use alloc::string::ToString;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Decisions whose magnitude lands within this factor of the zero threshold
/// are reported as ambiguous by the float backend.
pub(crate) const AMBIGUITY_BAND: f64 = 1024.0;

/// How zero is decided for a matrix's entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarField {
    /// Exact arithmetic: an entry is zero iff it equals zero.
    ExactRational,
    /// Approximate arithmetic: an entry is zero iff its magnitude is at most
    /// `zero_tolerance` times the largest magnitude in the operand.
    Float { zero_tolerance: f64 },
}

impl ScalarField {
    /// 2^-26, roughly the square root of `f64` machine epsilon.
    pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1.0 / 67_108_864.0;

    pub fn float() -> Self {
        ScalarField::Float {
            zero_tolerance: Self::DEFAULT_FLOAT_TOLERANCE,
        }
    }

    pub fn float_with_tolerance(zero_tolerance: f64) -> Result<Self> {
        if zero_tolerance.is_finite() && zero_tolerance > 0.0 {
            Ok(ScalarField::Float { zero_tolerance })
        } else {
            Err(Error::InvalidTolerance(zero_tolerance))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarField::ExactRational)
    }

    pub fn zero_tolerance(&self) -> Option<f64> {
        match *self {
            ScalarField::ExactRational => None,
            ScalarField::Float { zero_tolerance } => Some(zero_tolerance),
        }
    }

    /// Zero test for an operand whose largest entry magnitude is `scale`.
    pub fn zero_test(&self, scale: f64) -> ZeroTest {
        match *self {
            ScalarField::ExactRational => ZeroTest::exact(),
            ScalarField::Float { zero_tolerance } => ZeroTest {
                threshold: zero_tolerance * scale,
                exact: false,
            },
        }
    }
}

/// A resolved zero predicate: exact, or an absolute magnitude threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTest {
    threshold: f64,
    exact: bool,
}

impl ZeroTest {
    pub fn exact() -> Self {
        ZeroTest {
            threshold: 0.0,
            exact: true,
        }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn is_zero<T: Scalar>(&self, x: &T) -> bool {
        if self.exact || T::EXACT {
            x.is_exact_zero()
        } else {
            x.magnitude() <= self.threshold
        }
    }

    /// True when `x` was classified nonzero but only barely.
    pub fn is_ambiguous<T: Scalar>(&self, x: &T) -> bool {
        if self.exact || T::EXACT || self.threshold == 0.0 {
            return false;
        }
        let m = x.magnitude();
        m > self.threshold && m <= self.threshold * AMBIGUITY_BAND
    }
}

/// Field element usable as a matrix entry.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_exact_zero(&self) -> bool;
    /// Absolute value as `f64`, used for pivot ranking and tolerances.
    fn magnitude(&self) -> f64;
    fn default_field() -> ScalarField;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn default_field() -> ScalarField {
        ScalarField::ExactRational
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn default_field() -> ScalarField {
        ScalarField::float()
    }
}

/// Parses `p` or `p/q` (optional sign on either part, surrounding whitespace
/// ignored) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    if num.is_empty() || den.is_empty() {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_canonicalizes() {
        let q = parse_rational(" 4/-6 ").unwrap();
        assert_eq!(q.to_string(), "-2/3");
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        assert_eq!(parse_rational("-0/5").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "a", "1/", "/2", "1.5", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn float_tolerance_must_be_positive() {
        assert!(ScalarField::float_with_tolerance(0.0).is_err());
        assert!(ScalarField::float_with_tolerance(f64::NAN).is_err());
        assert!(ScalarField::float_with_tolerance(1e-9).is_ok());
    }

    #[test]
    fn float_zero_test_is_relative() {
        let zt = ScalarField::float().zero_test(1.0e6);
        assert!(zt.is_zero(&1.0e-3));
        assert!(!zt.is_zero(&1.0));
        assert!(zt.is_ambiguous(&0.1));
        assert!(!ZeroTest::exact().is_zero(&1.0e-300));
    }
}
