//! Members of the Janowski starlike class `S*(A, B)`.
//!
//! A member `f` satisfies `z f'/f = (1 + A z w) / (1 + B z w)` for a self-map
//! `w` of the closed unit disk. Members are built constructively from a
//! [`SchwarzSpec`], or taken from the extremal family
//! `k_{A,B}(z) = z (1 + B z)^{A/B - 1}` (`z e^{A z}` when `B = 0`) and its
//! `n`-fold root transforms `(k_{A,B}(z^n))^{1/n}`.
//!
//! The meromorphic class is never stored: `g(z) = 1/f(1/z)` is represented
//! through `f`, and its coefficients are the coefficients of `z/f`.

mod sample;

pub use sample::{sample, sample_spec};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::schwarz::SchwarzSpec;
use crate::series::Series;

/// The pair `(A, B)` with `-1 <= B < A <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JanowskiParams<R> {
    a: R,
    b: R,
}

impl<R: Real> JanowskiParams<R> {
    pub fn new(a: R, b: R) -> Result<Self> {
        let one = R::one();
        if !(b >= -one.clone() && b < a && a <= one) {
            return Err(Error::InvalidParams(format!(
                "need -1 <= B < A <= 1, got A = {a}, B = {b}"
            )));
        }
        Ok(JanowskiParams { a, b })
    }

    pub fn a(&self) -> &R {
        &self.a
    }

    pub fn b(&self) -> &R {
        &self.b
    }

    /// `A - B`, always positive.
    pub fn spread(&self) -> R {
        self.a.clone() - self.b.clone()
    }

    /// `delta = (1 - A) / (1 - B)`, in `[0, 1)`.
    pub fn delta(&self) -> R {
        (R::one() - self.a.clone()) / (R::one() - self.b.clone())
    }

    /// The parameters with `A` and `B` replaced by `A(delta)` on the line
    /// `A = 1 - delta (1 - B)`; used to place `delta` exactly.
    pub fn from_delta(delta: R, b: R) -> Result<Self> {
        let a = R::one() - delta * (R::one() - b.clone());
        Self::new(a, b)
    }
}

impl JanowskiParams<BigRational> {
    /// Converts exact parameters into another real backend.
    pub fn to_real<R: Real>(&self) -> JanowskiParams<R> {
        JanowskiParams {
            a: R::from_rational(&self.a),
            b: R::from_rational(&self.b),
        }
    }

    /// `S*`: starlike functions.
    pub fn starlike() -> Self {
        Self::from_ints(1, 1, -1, 1)
    }

    /// `S*(alpha)`: starlike of order `alpha`, `0 <= alpha < 1`.
    pub fn starlike_of_order(alpha: BigRational) -> Result<Self> {
        let one = BigRational::one();
        Self::new(
            one.clone() - <BigRational as Real>::from_int(2) * alpha,
            -one,
        )
    }

    /// `S*(1, 0)`.
    pub fn singh() -> Self {
        Self::from_ints(1, 1, 0, 1)
    }

    /// `S*(alpha, -alpha)`, `0 < alpha <= 1`.
    pub fn padmanabhan(alpha: BigRational) -> Result<Self> {
        Self::new(alpha.clone(), -alpha)
    }

    fn from_ints(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(BigRational::ratio(an, ad), BigRational::ratio(bn, bd))
            .expect("preset parameters are valid")
    }
}

impl<R: Real> Serialize for JanowskiParams<R> {
    fn serialize<Z: serde::Serializer>(
        &self,
        serializer: Z,
    ) -> std::result::Result<Z::Ok, Z::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("JanowskiParams", 2)?;
        st.serialize_field("A", &self.a.encode())?;
        st.serialize_field("B", &self.b.encode())?;
        st.end()
    }
}

/// How a class member was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Schwarz { spec: SchwarzSpec },
    Extremal,
    ExtremalRoot { n: usize },
    Supplied,
}

/// A normalized member `f(z) = z + a_2 z^2 + ...` of `S*(A, B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarlikeFunction<S: Scalar> {
    pub params: JanowskiParams<S::Real>,
    pub series: Series<S>,
    pub provenance: Provenance,
}

impl<S: Scalar> StarlikeFunction<S> {
    /// Wraps a user-supplied series. Only normalization is checked; use
    /// [`membership_diagnostic`] for a heuristic membership check.
    pub fn supplied(params: JanowskiParams<S::Real>, series: Series<S>) -> Result<Self> {
        if series.order() < 1 || !series.coeff(0).is_zero() || !series.coeff(1).is_one() {
            return Err(Error::Series(
                crate::series::SeriesError::NotNormalizedForReversion,
            ));
        }
        Ok(StarlikeFunction {
            params,
            series,
            provenance: Provenance::Supplied,
        })
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `f(z)/z`, of order one less than `f`.
    pub fn quotient(&self) -> Series<S> {
        self.series
            .div_z()
            .expect("normalized members vanish at the origin")
    }

    pub fn export(&self) -> StarlikeRecord {
        StarlikeRecord {
            a: self.params.a().encode(),
            b: self.params.b().encode(),
            order: self.order(),
            coefficients: self.series.coeffs().iter().map(Scalar::encode).collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Wire form of a class member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarlikeRecord {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub order: usize,
    pub coefficients: Vec<String>,
    pub provenance: Provenance,
}

fn params_scalars<S: Scalar>(p: &JanowskiParams<S::Real>) -> (S, S) {
    (S::from_real(p.a()), S::from_real(p.b()))
}

/// Solves `z f'/f = (1 + A z w) / (1 + B z w)` for `f` of the given order.
pub fn from_schwarz<S: Scalar>(
    spec: &SchwarzSpec,
    p: &JanowskiParams<S::Real>,
    order: usize,
) -> Result<StarlikeFunction<S>> {
    spec.validate()?;
    let omega = spec.series::<S>(order.saturating_sub(1))?;
    let series = from_omega_series(&omega, p, order)?;
    Ok(StarlikeFunction {
        params: p.clone(),
        series,
        provenance: Provenance::Schwarz { spec: spec.clone() },
    })
}

/// `f = z exp( integral_0^z (A - B) w(t) / (1 + B t w(t)) dt )`.
///
/// `omega` must be known through `z^(order - 2)`.
pub fn from_omega_series<S: Scalar>(
    omega: &Series<S>,
    p: &JanowskiParams<S::Real>,
    order: usize,
) -> Result<Series<S>> {
    if order == 0 {
        return Err(Error::InvalidIndex(
            "member order must be at least 1".into(),
        ));
    }
    if order == 1 {
        return Ok(Series::variable(1));
    }
    let inner = order - 2;
    if omega.order() < inner {
        return Err(Error::TruncationTooShort {
            needed: inner,
            available: omega.order(),
        });
    }
    let (a, b) = params_scalars::<S>(p);
    let omega = omega.truncate(inner);
    let z_omega = omega.mul_z().truncate(inner);
    let denom = Series::one(inner).add(&z_omega.scale(&b));
    let integrand = omega.scale(&(a - b.clone())).div(&denom)?;
    let log_quotient = integrand.integrate();
    Ok(log_quotient.exp_zero()?.mul_z())
}

/// The extremal member `k_{A,B}`.
pub fn extremal<S: Scalar>(
    p: &JanowskiParams<S::Real>,
    order: usize,
) -> Result<StarlikeFunction<S>> {
    if order == 0 {
        return Err(Error::InvalidIndex(
            "member order must be at least 1".into(),
        ));
    }
    let quotient = extremal_quotient::<S>(p, order - 1)?;
    Ok(StarlikeFunction {
        params: p.clone(),
        series: quotient.mul_z(),
        provenance: Provenance::Extremal,
    })
}

/// `k_{A,B}(z)/z` through `z^order`.
fn extremal_quotient<S: Scalar>(p: &JanowskiParams<S::Real>, order: usize) -> Result<Series<S>> {
    let (a, b) = params_scalars::<S>(p);
    if p.b().is_zero() {
        return Ok(Series::monomial(a, 1, order).exp_zero()?);
    }
    let exponent = p.a().clone() / p.b().clone() - S::Real::one();
    Ok(Series::new(vec![S::one(), b], order).pow_real(&exponent)?)
}

/// The root transform `(k_{A,B}(z^n))^{1/n}`; only exponents `1 mod n` appear.
pub fn extremal_root<S: Scalar>(
    p: &JanowskiParams<S::Real>,
    n: usize,
    order: usize,
) -> Result<StarlikeFunction<S>> {
    if n == 0 {
        return Err(Error::InvalidIndex("root transform needs n >= 1".into()));
    }
    if order == 0 {
        return Err(Error::InvalidIndex(
            "member order must be at least 1".into(),
        ));
    }
    let m = (order - 1) / n;
    let root =
        extremal_quotient::<S>(p, m)?.pow_real(&(S::Real::one() / S::Real::from_int(n as i64)))?;
    let series = root.dilate(n).truncate(order - 1).mul_z();
    Ok(StarlikeFunction {
        params: p.clone(),
        series,
        provenance: if n == 1 {
            Provenance::Extremal
        } else {
            Provenance::ExtremalRoot { n }
        },
    })
}

/// Result of inverting the subordination relation for `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaRecovery<S: Scalar> {
    /// `w` through `z^(order(f) - 2)`.
    pub omega: Series<S>,
    /// Largest coefficient modulus of `f - from_omega(w)`.
    pub residual: S::Real,
}

/// `z w(z) = (p - 1) / (A - B p)` with `p = z f'/f`.
pub fn recover_omega<S: Scalar>(f: &StarlikeFunction<S>) -> Result<OmegaRecovery<S>> {
    let order = f.order();
    if order < 2 {
        return Err(Error::TruncationTooShort {
            needed: 2,
            available: order,
        });
    }
    let (a, b) = params_scalars::<S>(&f.params);
    let p = f.series.derivative().div(&f.quotient())?;
    let one = Series::one(p.order());
    let numer = p.sub(&one);
    let denom = Series::constant(a, p.order()).sub(&p.scale(&b));
    let omega = numer.div(&denom)?.div_z()?;
    let rebuilt = from_omega_series(&omega, &f.params, order)?;
    let residual = rebuilt.max_abs_diff(&f.series);
    Ok(OmegaRecovery { omega, residual })
}

/// Heuristic membership report for series that were not built from a
/// [`SchwarzSpec`]: the recovered `w` is sampled on `|z| = 0.99`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipDiagnostic {
    pub residual: f64,
    pub max_boundary_modulus: f64,
    pub plausible: bool,
}

pub const DIAGNOSTIC_RADIUS: f64 = 0.99;
pub const DIAGNOSTIC_ANGLES: usize = 256;
pub const DIAGNOSTIC_SLACK: f64 = 1e-8;

pub fn membership_diagnostic<S: Scalar>(f: &StarlikeFunction<S>) -> Result<MembershipDiagnostic> {
    let rec = recover_omega(f)?;
    let max_boundary_modulus = (0..DIAGNOSTIC_ANGLES)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / DIAGNOSTIC_ANGLES as f64;
            rec.omega
                .eval(Complex64::from_polar(DIAGNOSTIC_RADIUS, theta))
                .norm()
        })
        .fold(0.0, f64::max);
    let residual = rec.residual.to_f64();
    Ok(MembershipDiagnostic {
        residual,
        max_boundary_modulus,
        plausible: residual <= 1e-10 && max_boundary_modulus <= 1.0 + DIAGNOSTIC_SLACK,
    })
}
