//! Dense truncated power series.
//!
//! A `Series<S>` of order `N` stores the coefficients of `z^0 ..= z^N`; every
//! coefficient beyond `N` is unknown. Binary operations return the minimum of
//! the operand orders, and nothing ever silently extends a series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Backend, ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cannot combine a {left} series with a {right} series")]
    BackendMismatch { left: Backend, right: Backend },
    #[error("constant term is zero, series has no reciprocal")]
    NotInvertible,
    #[error("constant term must be {expected}")]
    NotNormalized { expected: &'static str },
    #[error("inner series of a composition must vanish at zero")]
    NotComposable,
    #[error("series must have the form z + O(z^2) to be reverted")]
    NotNormalizedForReversion,
    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}

#[derive(Clone, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    /// Builds a series of the given order, zero-padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Series { coeffs }
    }

    /// The order is `coeffs.len() - 1`; an empty vector gives the zero series of order 0.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// `c z^k`, truncated at `order`.
    pub fn monomial(c: S, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `z`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(S::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^k`, or `None` beyond the truncation order.
    pub fn get(&self, k: usize) -> Option<&S> {
        self.coeffs.get(k)
    }

    /// Coefficient of `z^k`. Panics beyond the truncation order.
    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    /// Drops coefficients above `order`. Asking for a larger order is a no-op.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: mul_raw(&self.coeffs, &other.coeffs, n + 1),
        }
    }

    /// Integer power by repeated squaring; negative exponents go through [`recip`](Self::recip).
    pub fn powi(&self, exp: i64) -> Result<Self, SeriesError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        Ok(Series {
            coeffs: recip_raw(&self.coeffs, self.coeffs.len()),
        })
    }

    /// `self / other`, truncated at the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Term-wise derivative. The order drops by one (an order-0 series maps
    /// to the zero series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_int(k as i64))
                .collect(),
        }
    }

    /// Antiderivative vanishing at zero. The order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() / S::from_int(k as i64 + 1)),
        );
        Series { coeffs }
    }

    /// `z * self`; exact, so the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// `self / z` for a series vanishing at zero; the order drops by one.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotNormalized { expected: "0" });
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `self(z^n)`. Known exactly through `z^(n*(order+1) - 1)`.
    pub fn dilate(&self, n: usize) -> Self {
        assert!(n >= 1, "dilation factor must be positive");
        let order = n * (self.order() + 1) - 1;
        let mut out = Self::zero(order);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * n] = c.clone();
        }
        out
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log_unit(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NotNormalized { expected: "1" });
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative().mul(&self.recip()?);
        Ok(quotient.integrate())
    }

    /// Formal exponential of a series with constant term 0.
    pub fn exp_zero(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotNormalized { expected: "0" });
        }
        let len = self.coeffs.len();
        let mut out: Vec<S> = Vec::with_capacity(len);
        out.push(S::one());
        // n e_n = sum_{k=1}^{n} k a_k e_{n-k}
        for n in 1..len {
            let mut acc = S::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + S::from_int(k as i64) * self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(acc / S::from_int(n as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// `self^mu` for a series with constant term 1, as `exp(mu log self)`.
    pub fn pow_real(&self, mu: &S::Real) -> Result<Self, SeriesError> {
        let log = self.log_unit()?;
        if mu.is_zero() {
            return Ok(Self::one(self.order()));
        }
        log.scale(&S::from_real(mu)).exp_zero()
    }

    /// `self(inner(z))`, truncated at the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NotComposable);
        }
        let n = self.order().min(inner.order());
        Ok(Series {
            coeffs: compose_raw(&self.coeffs[..=n], &inner.coeffs[..=n], n + 1),
        })
    }

    /// Compositional inverse of `z + O(z^2)` by Newton iteration; the number
    /// of correct coefficients doubles on every step.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let order = self.order();
        if order == 0 {
            return Err(SeriesError::NotNormalizedForReversion);
        }
        if !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(SeriesError::NotNormalizedForReversion);
        }
        let len = order + 1;
        // f' is known through z^(order-1); its top slot never reaches the
        // correction because the residual vanishes to order >= 2.
        let mut fprime = self.derivative().coeffs;
        fprime.resize(len, S::zero());

        let mut g = Self::variable(order).coeffs;
        let mut correct = 2;
        while correct < len {
            let target = (2 * correct).min(len);
            let mut residual = compose_raw(&self.coeffs, &g, target);
            residual[1] = residual[1].clone() - S::one();
            let slope = compose_raw(&fprime, &g, target);
            let step = mul_raw(&residual, &recip_raw(&slope, target), target);
            for (gk, sk) in g.iter_mut().zip(step) {
                *gk = gk.clone() - sk;
            }
            correct = target;
        }
        Ok(Series { coeffs: g })
    }

    /// Evaluates the truncated polynomial at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    /// Largest coefficient modulus of `self - other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        self.sub(other)
            .coeffs
            .iter()
            .map(Scalar::modulus)
            .fold(S::Real::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn encode(&self) -> SeriesRecord {
        SeriesRecord {
            order: self.order(),
            coefficients: self.coeffs.iter().map(Scalar::encode).collect(),
        }
    }

    pub fn decode(record: &SeriesRecord) -> Result<Self, SeriesError> {
        let coeffs = record
            .coefficients
            .iter()
            .map(|s| S::decode(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs, record.order))
    }
}

fn mul_raw<S: Scalar>(a: &[S], b: &[S], len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

fn recip_raw<S: Scalar>(a: &[S], len: usize) -> Vec<S> {
    let inv0 = S::one() / a[0].clone();
    let mut out: Vec<S> = Vec::with_capacity(len);
    out.push(inv0.clone());
    for n in 1..len {
        let mut acc = S::zero();
        for k in 1..=n.min(a.len() - 1) {
            if a[k].is_zero() {
                continue;
            }
            acc = acc + a[k].clone() * out[n - k].clone();
        }
        out.push(-(acc * inv0.clone()));
    }
    out
}

/// Horner evaluation of `outer(inner)` keeping `len` coefficients; `inner[0]` must be zero.
fn compose_raw<S: Scalar>(outer: &[S], inner: &[S], len: usize) -> Vec<S> {
    let top = outer.len().min(len);
    let mut acc = vec![S::zero(); len];
    for c in outer[..top].iter().rev() {
        acc = mul_raw(&acc, inner, len);
        acc[0] = acc[0].clone() + c.clone();
    }
    acc
}

impl<S: Scalar> fmt::Debug for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}](", self.order())?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&c.encode())?;
        }
        f.write_str(")")
    }
}

impl<S: Scalar> Add for &Series<S> {
    type Output = Series<S>;
    fn add(self, rhs: Self) -> Series<S> {
        Series::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &Series<S> {
    type Output = Series<S>;
    fn sub(self, rhs: Self) -> Series<S> {
        Series::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &Series<S> {
    type Output = Series<S>;
    fn mul(self, rhs: Self) -> Series<S> {
        Series::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &Series<S> {
    type Output = Series<S>;
    fn neg(self) -> Series<S> {
        Series::neg(self)
    }
}

/// Wire form of a series: coefficient strings plus the truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: usize,
    pub coefficients: Vec<String>,
}

impl<S: Scalar> Serialize for Series<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        self.encode().serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Series<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = SeriesRecord::deserialize(deserializer)?;
        Series::decode(&record).map_err(D::Error::custom)
    }
}

/// A series whose backend is chosen at run time, e.g. when read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Exact(Series<BigRational>),
    Float(Series<Complex64>),
}

impl AnySeries {
    pub fn backend(&self) -> Backend {
        match self {
            AnySeries::Exact(_) => Backend::Exact,
            AnySeries::Float(_) => Backend::Float,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnySeries::Exact(s) => s.order(),
            AnySeries::Float(s) => s.order(),
        }
    }

    fn mismatch(&self, other: &Self) -> SeriesError {
        SeriesError::BackendMismatch {
            left: self.backend(),
            right: other.backend(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.mul(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.add(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        match (self, inner) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.compose(b)?)),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.compose(b)?)),
            _ => Err(self.mismatch(inner)),
        }
    }

    pub fn encode(&self) -> SeriesRecord {
        match self {
            AnySeries::Exact(s) => s.encode(),
            AnySeries::Float(s) => s.encode(),
        }
    }

    /// Picks the backend from the coefficient syntax: `"re,im"` strings are
    /// complex floats, everything else is rational. Mixed syntax is rejected.
    pub fn decode(record: &SeriesRecord) -> Result<Self, SeriesError> {
        let complex = record
            .coefficients
            .iter()
            .filter(|c| c.contains(','))
            .count();
        if complex == 0 {
            Ok(AnySeries::Exact(Series::decode(record)?))
        } else if complex == record.coefficients.len() {
            Ok(AnySeries::Float(Series::decode(record)?))
        } else {
            Err(SeriesError::BackendMismatch {
                left: Backend::Exact,
                right: Backend::Float,
            })
        }
    }
}

impl Serialize for AnySeries {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        self.encode().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AnySeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = SeriesRecord::deserialize(deserializer)?;
        AnySeries::decode(&record).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type Q = Series<BigRational>;

    fn q(coeffs: &[i64], order: usize) -> Q {
        Series::from_ints(coeffs, order)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(q(&[1, 1], 2).mul(&q(&[1, -1], 2)), q(&[1, 0, -1], 2));
        let sq = q(&[1, -2, 1], 4);
        assert_eq!(sq.mul(&sq), q(&[1, -4, 6, -4, 1], 4));
    }

    #[test]
    fn mul_truncates_at_smaller_order() {
        let p = q(&[1, 1, 1, 1], 3).mul(&q(&[1, 1], 1));
        assert_eq!(p.order(), 1);
        assert_eq!(p, q(&[1, 2], 1));
    }

    #[test]
    fn recip_examples() {
        assert_eq!(q(&[1, -1], 5).recip().unwrap(), q(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(q(&[1, -2, 1], 3).recip().unwrap(), q(&[1, 2, 3, 4], 3));
        assert_eq!(q(&[0, 1], 3).recip(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn log_examples() {
        assert!(Q::one(4).log_unit().unwrap().is_zero());
        let log = q(&[1, -1], 4).log_unit().unwrap();
        let expected = Series::new(
            vec![rat(0, 1), rat(-1, 1), rat(-1, 2), rat(-1, 3), rat(-1, 4)],
            4,
        );
        assert_eq!(log, expected);
        assert_eq!(
            q(&[2, 1], 3).log_unit(),
            Err(SeriesError::NotNormalized { expected: "1" })
        );
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Q::zero(3).exp_zero().unwrap(), Q::one(3));
        let a = rat(3, 7);
        let e = Q::monomial(a.clone(), 1, 3).exp_zero().unwrap();
        let expected = Series::new(
            vec![
                rat(1, 1),
                a.clone(),
                a.clone() * a.clone() / rat(2, 1),
                a.clone() * a.clone() * a.clone() / rat(6, 1),
            ],
            3,
        );
        assert_eq!(e, expected);
        assert!(matches!(
            Q::one(2).exp_zero(),
            Err(SeriesError::NotNormalized { .. })
        ));
    }

    #[test]
    fn pow_real_examples() {
        let base = q(&[1, -1], 4);
        assert_eq!(base.pow_real(&rat(2, 1)).unwrap(), q(&[1, -2, 1], 4));
        assert_eq!(base.pow_real(&rat(0, 1)).unwrap(), Q::one(4));
        // (1 + B z)^(-lambda (A - B) / B) with A = 1, B = -1, lambda = 2
        let b = Q::new(vec![rat(1, 1), rat(-1, 1)], 4);
        let mu = -rat(2, 1) * rat(2, 1) / rat(-1, 1);
        assert_eq!(b.pow_real(&mu).unwrap(), q(&[1, -4, 6, -4, 1], 4));
        let half = q(&[1, 2, 1], 3).pow_real(&rat(1, 2)).unwrap();
        assert_eq!(half, q(&[1, 1], 3));
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(Q::one(0).integrate(), q(&[0, 1], 1));
        let two_over = Q::constant(rat(2, 1), 4).mul(&q(&[1, 0, -1], 4).recip().unwrap());
        let expected = Series::new(
            vec![
                rat(0, 1),
                rat(2, 1),
                rat(0, 1),
                rat(2, 3),
                rat(0, 1),
                rat(2, 5),
            ],
            5,
        );
        assert_eq!(two_over.integrate(), expected);
    }

    #[test]
    fn compose_examples() {
        let a = q(&[3, 1, 4, 1, 5], 4);
        assert_eq!(a.compose(&Q::variable(4)).unwrap(), a);
        let geometric = q(&[1, -1], 4).recip().unwrap();
        let z2 = q(&[0, 0, 1], 4);
        assert_eq!(geometric.compose(&z2).unwrap(), q(&[1, 0, 1, 0, 1], 4));
        assert_eq!(a.compose(&a), Err(SeriesError::NotComposable));
    }

    #[test]
    fn revert_examples() {
        assert_eq!(Q::variable(6).revert().unwrap(), Q::variable(6));
        let f = q(&[0, 1, 1, 1, 1], 4);
        assert_eq!(f.revert().unwrap(), q(&[0, 1, -1, 1, -1], 4));
        let koebe = q(&[0, 1, 2, 3, 4], 4);
        assert_eq!(koebe.revert().unwrap(), q(&[0, 1, -2, 5, -14], 4));
        assert_eq!(
            q(&[0, 2, 1], 3).revert(),
            Err(SeriesError::NotNormalizedForReversion)
        );
        assert_eq!(
            q(&[1, 1], 3).revert(),
            Err(SeriesError::NotNormalizedForReversion)
        );
    }

    #[test]
    fn dilate_knows_its_order() {
        let d = q(&[1, 2, 3], 2).dilate(3);
        assert_eq!(d.order(), 8);
        assert_eq!(d, q(&[1, 0, 0, 2, 0, 0, 3, 0, 0], 8));
    }

    #[test]
    fn any_series_rejects_mixed_backends() {
        let a = AnySeries::Exact(q(&[1, 1], 2));
        let b = AnySeries::Float(Series::one(2));
        assert_eq!(
            a.mul(&b),
            Err(SeriesError::BackendMismatch {
                left: Backend::Exact,
                right: Backend::Float
            })
        );
        assert!(a.mul(&a).is_ok());
    }

    #[test]
    fn json_shape() {
        let s = Series::new(vec![rat(1, 2), rat(-3, 1)], 2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":2,"coefficients":["1/2","-3","0"]}"#);
        let back: AnySeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, AnySeries::Exact(s));

        let f: Series<Complex64> = Series::new(vec![Complex64::new(1.0, -0.5)], 1);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"order":1,"coefficients":["1.0,-0.5","0.0,0.0"]}"#);
        let back: AnySeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back.backend(), Backend::Float);

        let mixed = r#"{"order":1,"coefficients":["1","0.0,0.0"]}"#;
        assert!(serde_json::from_str::<AnySeries>(mixed).is_err());
    }
}
