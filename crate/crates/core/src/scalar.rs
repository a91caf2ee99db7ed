//! Coefficient backends.
//!
//! Two backends are supported: exact arbitrary-precision rationals and
//! double-precision complex floats. A [`Series`](crate::series::Series) is
//! generic over its [`Scalar`], so mixing backends inside one computation is a
//! type error; the dynamically typed [`AnySeries`](crate::series::AnySeries)
//! reports it as a runtime error instead.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("invalid rational literal {0:?}")]
    Rational(String),
    #[error("invalid float literal {0:?}")]
    Float(String),
    #[error("invalid complex literal {0:?} (expected \"re,im\")")]
    Complex(String),
}

/// Which coefficient field a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "rational" => Ok(Backend::Exact),
            "float" | "complex" => Ok(Backend::Float),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}

/// An ordered real field used for parameters, exponents and bounds.
pub trait Real:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Greatest integer not exceeding `self`.
    fn floor_int(&self) -> i64;

    fn is_integer(&self) -> bool;

    fn to_f64(&self) -> f64;

    /// Exact rationals convert losslessly; floats round to nearest.
    fn from_rational(q: &BigRational) -> Self;

    /// Absolute slack admitted when comparing a coefficient against a bound.
    fn tolerance() -> Self;

    /// Equality up to the backend's rounding: exact for rationals.
    fn close(&self, other: &Self) -> bool;

    fn encode(&self) -> String;

    fn decode(s: &str) -> Result<Self, ParseScalarError>;
}

impl Real for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn floor_int(&self) -> i64 {
        self.floor()
            .to_integer()
            .to_i64()
            .expect("floor does not fit in i64")
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn close(&self, other: &Self) -> bool {
        self == other
    }

    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }
}

impl Real for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn floor_int(&self) -> i64 {
        self.floor() as i64
    }

    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn tolerance() -> Self {
        1e-9
    }

    fn close(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= 1e-12 * scale
    }

    fn encode(&self) -> String {
        format!("{self:?}")
    }

    /// Accepts float literals and, for convenience, `"p/q"`.
    fn decode(s: &str) -> Result<Self, ParseScalarError> {
        let t = s.trim();
        t.parse()
            .or_else(|_| parse_rational(t).map(|q| Real::to_f64(&q)))
            .map_err(|_| ParseScalarError::Float(s.to_string()))
    }
}

/// Parses `"p/q"`, `"p"`, or a plain decimal literal such as `"0.25"` into an
/// exact rational. Decimals are read as the exact decimal fraction they denote.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let t = s.trim();
    let err = || ParseScalarError::Rational(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(BigRational::from_integer(n));
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(numer, denom);
    Some(if negative { -q } else { q })
}

/// A coefficient field for truncated power series.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    type Real: Real;

    const BACKEND: Backend;

    fn from_real(r: &Self::Real) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_real(&Self::Real::from_int(n))
    }

    /// `None` when the value is not representable in this backend (a
    /// non-real complex number in the rational backend).
    fn from_complex_rational(re: &BigRational, im: &BigRational) -> Option<Self>;

    fn modulus(&self) -> Self::Real;

    fn to_complex(&self) -> Complex64;

    /// `"p/q"` for rationals, `"re,im"` for complex floats.
    fn encode(&self) -> String;

    fn decode(s: &str) -> Result<Self, ParseScalarError>;
}

impl Scalar for BigRational {
    type Real = BigRational;

    const BACKEND: Backend = Backend::Exact;

    fn from_real(r: &Self::Real) -> Self {
        r.clone()
    }

    fn from_complex_rational(re: &BigRational, im: &BigRational) -> Option<Self> {
        im.is_zero().then(|| re.clone())
    }

    fn modulus(&self) -> Self::Real {
        self.abs()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(Real::to_f64(self), 0.0)
    }

    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }
}

impl Scalar for Complex64 {
    type Real = f64;

    const BACKEND: Backend = Backend::Float;

    fn from_real(r: &f64) -> Self {
        Complex64::new(*r, 0.0)
    }

    fn from_complex_rational(re: &BigRational, im: &BigRational) -> Option<Self> {
        Some(Complex64::new(
            f64::from_rational(re),
            f64::from_rational(im),
        ))
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn encode(&self) -> String {
        format!("{:?},{:?}", self.re, self.im)
    }

    fn decode(s: &str) -> Result<Self, ParseScalarError> {
        let err = || ParseScalarError::Complex(s.to_string());
        let (re, im) = s.split_once(',').ok_or_else(err)?;
        let re = <f64 as Real>::decode(re).map_err(|_| err())?;
        let im = <f64 as Real>::decode(im).map_err(|_| err())?;
        Ok(Complex64::new(re, im))
    }
}

/// Shorthand for an exact rational `numer/denom`.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
