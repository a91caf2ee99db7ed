//! Inverse functions of class members.
//!
//! For `f(z) = z + a_2 z^2 + ...` the inverse is `F(w) = w + sum A_n w^n`.
//! Coefficients of powers of `F` are tied to negative powers of `f` by
//!
//! ```text
//! [w^n] (F(w)/w)^t = t/(t+n) [z^n] (f(z)/z)^-(t+n),   t + n != 0
//! ```
//!
//! which is where the sign convention comes from: `A_n(t, F)` means the
//! coefficient of `(F/w)^t`, so `f = z/(1-z)`, `t = n = 1` gives `-1` on
//! both sides.
//!
//! The meromorphic function `g(z) = 1/f(1/z) = z (1 + sum b_n z^-n)` has the
//! inverse `G(w) = 1/F(1/w) = w (1 + sum B_n w^-n)`. All expansions at
//! infinity are done formally in `u = 1/w`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::class::StarlikeFunction;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::series::{Series, SeriesRecord};

/// How an inverse expansion was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseMethod {
    DirectReversion,
    NegpowIdentity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseExpansion<S: Scalar> {
    pub source: StarlikeFunction<S>,
    /// `F(w) = w + A_2 w^2 + ...`, same order as the source.
    pub series: Series<S>,
    pub method: InverseMethod,
}

/// Wire form: the series record plus its method tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseRecord {
    pub method: InverseMethod,
    #[serde(flatten)]
    pub series: SeriesRecord,
}

impl<S: Scalar> InverseExpansion<S> {
    /// `A_n`, with `A_1 = 1`.
    pub fn coeff(&self, n: usize) -> &S {
        self.series.coeff(n)
    }

    pub fn export(&self) -> InverseRecord {
        InverseRecord {
            method: self.method,
            series: self.series.encode(),
        }
    }
}

fn need_order<S: Scalar>(f: &StarlikeFunction<S>, needed: usize) -> Result<()> {
    if f.order() < needed {
        return Err(Error::TruncationTooShort {
            needed,
            available: f.order(),
        });
    }
    Ok(())
}

/// Whether two scalars agree: exactly for rationals, to the float tolerance
/// (relative to `max(1, |a|)`) otherwise.
pub fn agree<S: Scalar>(a: &S, b: &S) -> bool {
    let diff = (a.clone() - b.clone()).modulus();
    let size = a.modulus();
    let scale = if size > S::Real::one() {
        size
    } else {
        S::Real::one()
    };
    diff <= <S::Real as Real>::tolerance() * scale
}

/// `F` by series reversion.
pub fn inverse_direct<S: Scalar>(f: &StarlikeFunction<S>) -> Result<InverseExpansion<S>> {
    Ok(InverseExpansion {
        source: f.clone(),
        series: f.series.revert()?,
        method: InverseMethod::DirectReversion,
    })
}

/// `A_n = a_{n-1}(-n, f) / n` for `n >= 2`.
pub fn inverse_via_negpow<S: Scalar>(f: &StarlikeFunction<S>, n: usize) -> Result<S> {
    if n < 2 {
        return Err(Error::InvalidIndex(format!(
            "inverse coefficient index must be >= 2, got {n}"
        )));
    }
    need_order(f, n)?;
    let q = f.quotient().truncate(n - 1);
    let a = q.powi(-(n as i64))?;
    Ok(a.coeff(n - 1).clone() / S::from_int(n as i64))
}

/// The whole of `F` assembled coefficient by coefficient from
/// [`inverse_via_negpow`].
pub fn inverse_by_negpow<S: Scalar>(f: &StarlikeFunction<S>) -> Result<InverseExpansion<S>> {
    let order = f.order();
    let mut coeffs = vec![S::zero(), S::one()];
    for n in 2..=order {
        coeffs.push(inverse_via_negpow(f, n)?);
    }
    Ok(InverseExpansion {
        source: f.clone(),
        series: Series::new(coeffs, order),
        method: InverseMethod::NegpowIdentity,
    })
}

/// `[z^n] (f(z)/z)^-lambda` for an integer exponent, exact in both backends.
pub fn neg_power_coeff_int<S: Scalar>(f: &StarlikeFunction<S>, lambda: i64, n: usize) -> Result<S> {
    need_order(f, n + 1)?;
    Ok(f.quotient().truncate(n).powi(-lambda)?.coeff(n).clone())
}

/// `[w^n] (F(w)/w)^t` through the negative powers of `f`.
pub fn jabotinsky<S: Scalar>(f: &StarlikeFunction<S>, t: i64, n: usize) -> Result<S> {
    if t == 0 {
        return Err(Error::InvalidIndex("the power t must be nonzero".into()));
    }
    if n == 0 {
        return Err(Error::InvalidIndex(
            "coefficient index must be at least 1".into(),
        ));
    }
    let sum = t + n as i64;
    if sum == 0 {
        return Err(Error::PoleIndex { t, n });
    }
    let a = neg_power_coeff_int(f, sum, n)?;
    Ok(S::from_int(t) * a / S::from_int(sum))
}

/// `[w^n] (F(w)/w)^t` computed directly from a series `F = w + ...`.
pub fn power_of_inverse_coeff<S: Scalar>(inverse: &Series<S>, t: i64, n: usize) -> Result<S> {
    if inverse.order() < n + 1 {
        return Err(Error::TruncationTooShort {
            needed: n + 1,
            available: inverse.order(),
        });
    }
    let q = inverse.div_z()?.truncate(n);
    Ok(q.powi(t)?.coeff(n).clone())
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdentityStatus<S> {
    Equal {
        value: S,
    },
    Mismatch {
        lhs: S,
        rhs: S,
    },
    /// The truncation order does not determine this instance.
    Skipped,
}

impl<S> IdentityStatus<S> {
    pub fn is_mismatch(&self) -> bool {
        matches!(self, IdentityStatus::Mismatch { .. })
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, IdentityStatus::Equal { .. })
    }
}

fn compare<S: Scalar>(lhs: S, rhs: S) -> IdentityStatus<S> {
    if agree(&lhs, &rhs) {
        IdentityStatus::Equal { value: lhs }
    } else {
        IdentityStatus::Mismatch { lhs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivativeReport<S> {
    /// Entry `m` compares `[z^m] (f'/f - 1/z)` with `[w^(m+1)] (w/F)^(m+1)`.
    pub entries: Vec<IdentityStatus<S>>,
    /// `[w] (w/F) = a_2`.
    pub leading: IdentityStatus<S>,
}

impl<S> LogDerivativeReport<S> {
    pub fn all_consistent(&self) -> bool {
        !self.leading.is_mismatch() && !self.entries.iter().any(IdentityStatus::is_mismatch)
    }
}

/// Checks the finitely many instances of the generating identity for the
/// coefficients `A_{-t}(t, F)` that the truncation order of `f` determines.
pub fn log_derivative_identity_check<S: Scalar>(
    f: &StarlikeFunction<S>,
    m_max: usize,
) -> Result<LogDerivativeReport<S>> {
    let order = f.order();
    if order < 2 {
        let skipped = vec![IdentityStatus::Skipped; m_max + 1];
        return Ok(LogDerivativeReport {
            entries: skipped,
            leading: IdentityStatus::Skipped,
        });
    }
    let h = f.quotient();
    // f'/f = 1/z + h'/h
    let log_deriv = h.derivative().div(&h.truncate(order - 2))?;
    let big_f = f.series.revert()?;
    let w_over_f = big_f.div_z()?.recip()?;
    let entries = (0..=m_max)
        .map(|m| {
            if m + 2 > order {
                return Ok(IdentityStatus::Skipped);
            }
            let rhs = w_over_f
                .truncate(m + 1)
                .powi(m as i64 + 1)?
                .coeff(m + 1)
                .clone();
            Ok(compare(log_deriv.coeff(m).clone(), rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    let leading = compare(w_over_f.coeff(1).clone(), f.series.coeff(2).clone());
    Ok(LogDerivativeReport { entries, leading })
}

/// `B_1, ..., B_N` of `G(w) = w (1 + sum B_n w^-n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeroInverseExpansion<S: Scalar> {
    pub source: StarlikeFunction<S>,
    /// `coeffs[k]` is `B_{k+1}`.
    pub coeffs: Vec<S>,
    pub method: InverseMethod,
}

impl<S: Scalar> MeroInverseExpansion<S> {
    /// `B_m`, `m >= 1`.
    pub fn coeff(&self, m: usize) -> &S {
        &self.coeffs[m - 1]
    }

    /// `G(w)/w` as a series in `u = 1/w`.
    pub fn as_series(&self) -> Series<S> {
        let mut c = vec![S::one()];
        c.extend(self.coeffs.iter().cloned());
        Series::from_coeffs(c)
    }
}

/// `B_1 = a_2` and `B_{n+1} = -a_{n+1}(-n, f) / n`.
pub fn mero_inverse<S: Scalar>(
    f: &StarlikeFunction<S>,
    n_max: usize,
) -> Result<MeroInverseExpansion<S>> {
    need_order(f, n_max + 2)?;
    let mut coeffs = Vec::with_capacity(n_max);
    if n_max >= 1 {
        coeffs.push(f.series.coeff(2).clone());
    }
    let q_inv = f.quotient().truncate(n_max).recip()?;
    let mut power = q_inv.clone();
    for n in 1..n_max {
        let b = -power.coeff(n + 1).clone() / S::from_int(n as i64);
        coeffs.push(b);
        power = power.mul(&q_inv);
    }
    Ok(MeroInverseExpansion {
        source: f.clone(),
        coeffs,
        method: InverseMethod::NegpowIdentity,
    })
}

/// `B_n` from `G(w) = 1/F(1/w) = w (u/F(u))` with `u = 1/w`.
pub fn mero_inverse_direct<S: Scalar>(
    f: &StarlikeFunction<S>,
    n_max: usize,
) -> Result<MeroInverseExpansion<S>> {
    need_order(f, n_max + 1)?;
    let psi = f.series.revert()?.div_z()?.recip()?;
    Ok(MeroInverseExpansion {
        source: f.clone(),
        coeffs: psi.coeffs()[1..=n_max].to_vec(),
        method: InverseMethod::DirectReversion,
    })
}

/// `1 + b_1 u + b_2 u^2 + ...` where `g(z) = 1/f(1/z) = z (1 + sum b_n z^-n)`;
/// that is `u/f(u)`.
pub fn sigma_coeffs<S: Scalar>(f: &StarlikeFunction<S>) -> Result<Series<S>> {
    Ok(f.quotient().recip()?)
}

/// Largest coefficient of `psi(u) phi(u/psi(u)) - 1`, where `psi = G(w)/w`
/// and `phi = g(z)/z` in `u = 1/w`, `u = 1/z`. Zero iff `G` inverts `g`.
pub fn mero_consistency_residual<S: Scalar>(
    g_over_z: &Series<S>,
    big_g_over_w: &Series<S>,
) -> Result<S::Real> {
    let psi = big_g_over_w;
    let inner = psi.recip()?.mul_z().truncate(psi.order());
    let lhs = psi.mul(&g_over_z.compose(&inner)?);
    let one = Series::one(lhs.order());
    Ok(lhs.max_abs_diff(&one))
}
