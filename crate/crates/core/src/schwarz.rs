//! Finite descriptions of analytic self-maps of the unit disk.
//!
//! Every variant is bounded by one on the disk by construction, so a class
//! member built from a valid [`SchwarzSpec`] is a member by construction too.
//! Parameters are exact complex rationals; the rational backend can only
//! realise the real ones.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Real, Scalar};
use crate::series::Series;

/// A complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RationalComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        RationalComplex {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        RationalComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, t: &BigRational) -> Self {
        RationalComplex {
            re: &self.re * t,
            im: &self.im * t,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(Real::to_f64(&self.re), Real::to_f64(&self.im))
    }

    fn to_scalar<S: Scalar>(&self) -> Result<S> {
        S::from_complex_rational(&self.re, &self.im).ok_or_else(|| Error::NotRepresentable {
            backend: S::BACKEND,
            what: format!("complex parameter {self}"),
        })
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{},{}", self.re, self.im)
        }
    }
}

impl FromStr for RationalComplex {
    type Err = crate::scalar::ParseScalarError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.split_once(',') {
            Some((re, im)) => Ok(RationalComplex::new(
                parse_rational(re)?,
                parse_rational(im)?,
            )),
            None => Ok(RationalComplex::real(parse_rational(s)?)),
        }
    }
}

impl Serialize for RationalComplex {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A self-map `omega` of the unit disk with `|omega| <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "parameters", rename_all = "snake_case")]
pub enum SchwarzSpec {
    /// `omega(z) = c`, `|c| <= 1`.
    Constant { c: RationalComplex },
    /// `omega(z) = z^m`.
    Monomial { m: u32 },
    /// `omega(z) = (z + a) / (1 + conj(a) z)`, `|a| < 1`.
    Blaschke { a: RationalComplex },
    /// `omega(z) = sum c_k z^k` with `sum |c_k| <= 1`.
    NormalizedPoly { coeffs: Vec<RationalComplex> },
    /// Pointwise product of the factors; the empty product is `1`.
    Product { factors: Vec<SchwarzSpec> },
}

impl SchwarzSpec {
    pub fn constant(c: BigRational) -> Self {
        SchwarzSpec::Constant {
            c: RationalComplex::real(c),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            SchwarzSpec::Constant { c } => c.is_real(),
            SchwarzSpec::Monomial { .. } => true,
            SchwarzSpec::Blaschke { a } => a.is_real(),
            SchwarzSpec::NormalizedPoly { coeffs } => coeffs.iter().all(RationalComplex::is_real),
            SchwarzSpec::Product { factors } => factors.iter().all(SchwarzSpec::is_real),
        }
    }

    /// Checks the modulus bound of every variant with exact arithmetic.
    pub fn validate(&self) -> Result<()> {
        match self {
            SchwarzSpec::Constant { c } => {
                if c.norm_sqr() > BigRational::one() {
                    return Err(Error::InvalidSchwarz(format!("|c| > 1 for constant {c}")));
                }
            }
            SchwarzSpec::Monomial { .. } => {}
            SchwarzSpec::Blaschke { a } => {
                if a.norm_sqr() >= BigRational::one() {
                    return Err(Error::InvalidSchwarz(format!(
                        "Blaschke parameter {a} is not inside the unit disk"
                    )));
                }
            }
            SchwarzSpec::NormalizedPoly { coeffs } => {
                if !modulus_sum_at_most_one(coeffs) {
                    return Err(Error::InvalidSchwarz(
                        "sum of coefficient moduli exceeds 1 (or cannot be certified <= 1)"
                            .to_string(),
                    ));
                }
            }
            SchwarzSpec::Product { factors } => {
                for factor in factors {
                    factor.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Taylor expansion of `omega` through `z^order`.
    pub fn series<S: Scalar>(&self, order: usize) -> Result<Series<S>> {
        Ok(match self {
            SchwarzSpec::Constant { c } => Series::constant(c.to_scalar()?, order),
            SchwarzSpec::Monomial { m } => Series::monomial(S::one(), *m as usize, order),
            SchwarzSpec::Blaschke { a } => {
                let a_s: S = a.to_scalar()?;
                let abar: S = a.conj().to_scalar()?;
                let numer = Series::new(vec![a_s, S::one()], order);
                let denom = Series::new(vec![S::one(), abar], order);
                numer.div(&denom)?
            }
            SchwarzSpec::NormalizedPoly { coeffs } => Series::new(
                coeffs
                    .iter()
                    .map(RationalComplex::to_scalar)
                    .collect::<Result<Vec<S>>>()?,
                order,
            ),
            SchwarzSpec::Product { factors } => {
                let mut acc = Series::one(order);
                for factor in factors {
                    acc = acc.mul(&factor.series(order)?);
                }
                acc
            }
        })
    }

    /// Evaluates `omega` at a point of the disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SchwarzSpec::Constant { c } => c.to_complex(),
            SchwarzSpec::Monomial { m } => z.powu(*m),
            SchwarzSpec::Blaschke { a } => {
                let a = a.to_complex();
                (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
            }
            SchwarzSpec::NormalizedPoly { coeffs } => coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex()),
            SchwarzSpec::Product { factors } => factors
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.eval(z)),
        }
    }
}

/// Exact test of `sum |c_k| <= 1`. Moduli that are not rational are replaced
/// by rational upper bounds, so a sum within ~1e-12 of 1 may be rejected.
pub fn modulus_sum_at_most_one(coeffs: &[RationalComplex]) -> bool {
    modulus_sum_upper(coeffs) <= BigRational::one()
}

/// Upper bound on the modulus sum that is exact whenever every modulus is rational.
pub fn modulus_sum_upper(coeffs: &[RationalComplex]) -> BigRational {
    coeffs
        .iter()
        .map(|c| sqrt_bracket(&c.norm_sqr()).1)
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Rational `lo <= sqrt(x) <= hi`, with `lo == hi` when `x` is a rational square.
pub(crate) fn sqrt_bracket(x: &BigRational) -> (BigRational, BigRational) {
    if let Some(r) = exact_sqrt(x) {
        return (r.clone(), r);
    }
    let approx = Real::to_f64(x).sqrt();
    let slack = approx * 2f64.powi(-40) + f64::MIN_POSITIVE;
    let mut hi = BigRational::from_float(approx + slack).expect("finite sqrt");
    while &(&hi * &hi) < x {
        hi = &hi * BigRational::new(BigInt::from(1025), BigInt::from(1024));
    }
    let mut lo = BigRational::from_float((approx - slack).max(0.0)).expect("finite sqrt");
    while &(&lo * &lo) > x {
        lo = &lo * BigRational::new(BigInt::from(1023), BigInt::from(1024));
    }
    (lo, hi)
}

fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn rc(re: (i64, i64), im: (i64, i64)) -> RationalComplex {
        RationalComplex::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn validation_is_exact_on_the_boundary() {
        assert!(SchwarzSpec::Constant {
            c: rc((3, 5), (4, 5))
        }
        .validate()
        .is_ok());
        assert!(SchwarzSpec::Constant {
            c: rc((3, 5), (81, 100))
        }
        .validate()
        .is_err());
        assert!(SchwarzSpec::Blaschke {
            a: rc((3, 5), (4, 5))
        }
        .validate()
        .is_err());
        assert!(SchwarzSpec::Blaschke {
            a: rc((1, 2), (-1, 3))
        }
        .validate()
        .is_ok());
        let poly = SchwarzSpec::NormalizedPoly {
            coeffs: vec![rc((1, 2), (0, 1)), rc((-3, 10), (2, 5))],
        };
        assert!(poly.validate().is_ok());
        let over = SchwarzSpec::NormalizedPoly {
            coeffs: vec![rc((1, 2), (0, 1)), rc((1, 2), (1, 1000))],
        };
        assert!(over.validate().is_err());
        let nested = SchwarzSpec::Product {
            factors: vec![
                SchwarzSpec::Monomial { m: 2 },
                SchwarzSpec::constant(rat(2, 1)),
            ],
        };
        assert!(nested.validate().is_err());
    }

    #[test]
    fn irrational_moduli_are_bracketed() {
        let (lo, hi) = sqrt_bracket(&rat(1, 2));
        assert!(lo < hi);
        assert!(&lo * &lo <= rat(1, 2) && &hi * &hi >= rat(1, 2));
        // |(1 + i)/2| = sqrt(2)/2 ~ 0.7071
        let poly = SchwarzSpec::NormalizedPoly {
            coeffs: vec![rc((1, 2), (1, 2)), rc((29, 100), (0, 1))],
        };
        assert!(poly.validate().is_ok());
        let poly = SchwarzSpec::NormalizedPoly {
            coeffs: vec![rc((1, 2), (1, 2)), rc((3, 10), (0, 1))],
        };
        assert!(poly.validate().is_err());
    }

    #[test]
    fn blaschke_series_matches_evaluation() {
        let spec = SchwarzSpec::Blaschke {
            a: rc((1, 3), (-1, 4)),
        };
        let s: Series<Complex64> = spec.series(30).unwrap();
        let z = Complex64::new(0.2, 0.1);
        assert!((s.eval(z) - spec.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn complex_parameters_need_the_float_backend() {
        let spec = SchwarzSpec::Constant {
            c: rc((0, 1), (1, 2)),
        };
        assert!(matches!(
            spec.series::<BigRational>(3),
            Err(Error::NotRepresentable { .. })
        ));
        assert!(spec.series::<Complex64>(3).is_ok());
    }

    #[test]
    fn json_shape() {
        let spec = SchwarzSpec::Product {
            factors: vec![
                SchwarzSpec::Monomial { m: 1 },
                SchwarzSpec::Blaschke {
                    a: rc((1, 2), (0, 1)),
                },
            ],
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"variant":"product","parameters":{"factors":[{"variant":"monomial","parameters":{"m":1}},{"variant":"blaschke","parameters":{"a":"1/2"}}]}}"#
        );
        let back: SchwarzSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
