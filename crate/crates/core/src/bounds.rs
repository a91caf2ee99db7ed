//! Closed-form coefficient bounds for `S*(A, B)`.
//!
//! Everything is driven by one cutoff. With `delta = (1 - A)/(1 - B)` and
//! `M = floor(lambda (1 - delta)) + 1`, the negative-power coefficients of
//! `(f(z)/z)^(-lambda)` satisfy
//!
//! ```text
//! |a_l| <= P(l)             for l <= M
//! |a_l| <= (M / l) P(M)     for l >  M
//! P(l) = prod_{j=0}^{l-1} (lambda (A - B) + B j) / (j + 1)
//! ```
//!
//! The inverse-coefficient bounds follow from `A_n = a_{n-1}(-n, f) / n` and
//! the meromorphic ones from `B_{n+1} = -a_{n+1}(-n, f) / n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::class::{JanowskiParams, StarlikeFunction};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::series::Series;

/// Which half-open cell of `[0, 1)` a `delta` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// `[0, (lambda - [lambda]) / lambda)`; empty for integer `lambda`.
    J,
    /// `[(lambda - [lambda] + k) / lambda, (lambda - [lambda] + k + 1) / lambda)`.
    I(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionCell<R> {
    pub kind: CellKind,
    pub lambda: R,
    pub lo: R,
    pub hi: R,
}

impl<R: Real> PartitionCell<R> {
    pub fn contains(&self, delta: &R) -> bool {
        &self.lo <= delta && delta < &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

fn check_lambda<R: Real>(lambda: &R) -> Result<()> {
    if *lambda <= R::zero() {
        return Err(Error::InvalidLambda(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    Ok(())
}

fn check_delta<R: Real>(delta: &R) -> Result<()> {
    if *delta < R::zero() || *delta >= R::one() {
        return Err(Error::InvalidParams(format!(
            "delta must lie in [0, 1), got {delta}"
        )));
    }
    Ok(())
}

/// The cells `J(lambda), I_0(lambda), ..., I_{[lambda]-1}(lambda)`, in
/// increasing order. `J` is listed even when empty.
pub fn partition<R: Real>(lambda: &R) -> Result<Vec<PartitionCell<R>>> {
    check_lambda(lambda)?;
    let whole = lambda.floor_int();
    let frac = lambda.clone() - R::from_int(whole);
    let edge = |k: i64| (frac.clone() + R::from_int(k)) / lambda.clone();
    let mut cells = Vec::with_capacity(whole as usize + 1);
    cells.push(PartitionCell {
        kind: CellKind::J,
        lambda: lambda.clone(),
        lo: R::zero(),
        hi: edge(0),
    });
    for k in 0..whole {
        cells.push(PartitionCell {
            kind: CellKind::I(k as usize),
            lambda: lambda.clone(),
            lo: edge(k),
            hi: edge(k + 1),
        });
    }
    Ok(cells)
}

/// The unique cell containing `delta`.
pub fn locate<R: Real>(lambda: &R, delta: &R) -> Result<PartitionCell<R>> {
    check_delta(delta)?;
    partition(lambda)?
        .into_iter()
        .find(|c| c.contains(delta))
        .ok_or_else(|| Error::InvalidParams(format!("delta {delta} is in no cell")))
}

/// `M = floor(lambda (1 - delta)) + 1`: the largest `l` for which the full
/// product bound applies.
pub fn cutoff_m<R: Real>(lambda: &R, delta: &R) -> Result<usize> {
    check_lambda(lambda)?;
    check_delta(delta)?;
    let t = lambda.clone() * (R::one() - delta.clone());
    Ok(t.floor_int() as usize + 1)
}

/// `prod_{j=0}^{count-1} (lambda (A - B) + B j) / (j + 1)`.
pub fn product_bound<R: Real>(p: &JanowskiParams<R>, lambda: &R, count: usize) -> R {
    let base = lambda.clone() * p.spread();
    (0..count).fold(R::one(), |acc, j| {
        let j = R::from_int(j as i64);
        acc * (base.clone() + p.b().clone() * j.clone()) / (j + R::one())
    })
}

/// Which branch of a bound produced its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `0 < lambda <= 1`: `lambda (A - B) / l`.
    NegpowSmallLambda,
    /// `l <= M`, `delta` in some `I_k`, `lambda (1 - delta)` not an integer.
    NegpowProduct,
    /// `l <= M`, `delta` on the left edge of `I_k` (`lambda (1 - delta)` an integer).
    NegpowProductInteger,
    /// `l <= M`, `delta` in `J`.
    NegpowProductJ,
    /// `l > M`.
    NegpowTail,
    /// `A_n` with `delta` in `I_0(n)` or `I_1(n)`.
    InverseProduct,
    /// `A_n` with `delta` in `I_k(n)`, `2 <= k <= n - 2`.
    InverseTail,
    /// `A_n` with `delta` in `I_{n-1}(n)`: `(A - B)/(n - 1)`.
    InverseReciprocal,
    /// `B_1` and `B_2`.
    MeroLeading,
    /// `B_{n+1}` with `delta` in `I_k(n)`, `k <= n - 2`.
    MeroTail,
    /// `B_{n+1}` with `delta` in `I_{n-1}(n)`: `(A - B)/(n + 1)`.
    MeroReciprocal,
}

impl CaseTag {
    pub const ALL: [CaseTag; 11] = [
        CaseTag::NegpowSmallLambda,
        CaseTag::NegpowProduct,
        CaseTag::NegpowProductInteger,
        CaseTag::NegpowProductJ,
        CaseTag::NegpowTail,
        CaseTag::InverseProduct,
        CaseTag::InverseTail,
        CaseTag::InverseReciprocal,
        CaseTag::MeroLeading,
        CaseTag::MeroTail,
        CaseTag::MeroReciprocal,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::NegpowSmallLambda => "negpow-small-lambda",
            CaseTag::NegpowProduct => "negpow-product",
            CaseTag::NegpowProductInteger => "negpow-product-integer",
            CaseTag::NegpowProductJ => "negpow-product-j",
            CaseTag::NegpowTail => "negpow-tail",
            CaseTag::InverseProduct => "inverse-product",
            CaseTag::InverseTail => "inverse-tail",
            CaseTag::InverseReciprocal => "inverse-reciprocal",
            CaseTag::MeroLeading => "mero-leading",
            CaseTag::MeroTail => "mero-tail",
            CaseTag::MeroReciprocal => "mero-reciprocal",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown case tag {s:?}"))
    }
}

/// A bound together with the branch that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue<R> {
    pub value: R,
    pub case: CaseTag,
    /// The cutoff `M` used, when the bound came from the negative-power family.
    pub cutoff: Option<usize>,
}

/// Bound on `|a_l(-lambda, f)|`, the `l`-th coefficient of `(f(z)/z)^(-lambda)`.
pub fn bound_neg_power<R: Real>(
    p: &JanowskiParams<R>,
    lambda: &R,
    l: usize,
) -> Result<BoundValue<R>> {
    check_lambda(lambda)?;
    if l == 0 {
        return Err(Error::InvalidIndex(
            "coefficient index must be at least 1".into(),
        ));
    }
    let delta = p.delta();
    let m = cutoff_m(lambda, &delta)?;
    let value = if l <= m {
        product_bound(p, lambda, l)
    } else {
        R::from_int(m as i64) / R::from_int(l as i64) * product_bound(p, lambda, m)
    };
    let case = if *lambda <= R::one() {
        CaseTag::NegpowSmallLambda
    } else if l > m {
        CaseTag::NegpowTail
    } else {
        match locate(lambda, &delta)?.kind {
            CellKind::J => CaseTag::NegpowProductJ,
            CellKind::I(_) if (lambda.clone() * (R::one() - delta)).is_integer() => {
                CaseTag::NegpowProductInteger
            }
            CellKind::I(_) => CaseTag::NegpowProduct,
        }
    };
    Ok(BoundValue {
        value,
        case,
        cutoff: Some(m),
    })
}

/// Whether the bound collapses to `lambda (A - B) / l` for every `l`
/// (`lambda <= 1`, or `delta` in the last cell `I_{[lambda]-1}`), which is
/// exactly `lambda (1 - delta) <= 1`.
pub fn is_reciprocal_case<R: Real>(p: &JanowskiParams<R>, lambda: &R) -> bool {
    lambda.clone() * (R::one() - p.delta()) <= R::one()
}

/// Coefficients `1, a_1(-lambda, f), ..., a_order(-lambda, f)` of `(f(z)/z)^(-lambda)`.
pub fn neg_power_coeffs<S: Scalar>(
    f: &StarlikeFunction<S>,
    lambda: &S::Real,
    order: usize,
) -> Result<Series<S>> {
    let available = f.order() - 1;
    if order > available {
        return Err(Error::TruncationTooShort {
            needed: order + 1,
            available: f.order(),
        });
    }
    let inverse_quotient = f.quotient().truncate(order).recip()?;
    Ok(inverse_quotient.pow_real(lambda)?)
}

/// Both sides of the telescoping identity behind the product bound:
///
/// ```text
/// lambda^2 (A-B)^2 + sum_{n=1}^{l-1} [(lambda (A-B) + n B)^2 - n^2] P(n)^2
///     = prod_{j=0}^{l-1} (lambda (A-B) + B j)^2 / ((l-1)!)^2
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ProductIdentityCheck<R> {
    pub lhs: R,
    pub rhs: R,
    pub equal: bool,
}

pub fn product_identity_check<R: Real>(
    p: &JanowskiParams<R>,
    lambda: &R,
    l: usize,
) -> Result<ProductIdentityCheck<R>> {
    if l == 0 {
        return Err(Error::InvalidIndex(
            "identity index must be at least 1".into(),
        ));
    }
    let base = lambda.clone() * p.spread();
    let b = p.b().clone();
    let mut lhs = base.clone() * base.clone();
    // P(n)^2, built incrementally
    let mut p_sq = R::one();
    for n in 1..l {
        let j = R::from_int(n as i64 - 1);
        let factor = (base.clone() + b.clone() * j.clone()) / (j + R::one());
        p_sq = p_sq * factor.clone() * factor;
        let nr = R::from_int(n as i64);
        let lead = base.clone() + nr.clone() * b.clone();
        lhs = lhs + (lead.clone() * lead - nr.clone() * nr) * p_sq.clone();
    }
    let mut numer = R::one();
    for j in 0..l {
        let t = base.clone() + b.clone() * R::from_int(j as i64);
        numer = numer * t.clone() * t;
    }
    let fact = (1..l).fold(R::one(), |acc, k| acc * R::from_int(k as i64));
    let rhs = numer / (fact.clone() * fact);
    let equal = lhs.close(&rhs);
    Ok(ProductIdentityCheck { lhs, rhs, equal })
}

fn unit_cell<R: Real>(n: usize, delta: &R) -> usize {
    // I_k(n) = [k/n, (k+1)/n)
    (R::from_int(n as i64) * delta.clone()).floor_int() as usize
}

/// Bound on `|A_n|` for the inverse `F(w) = w + sum A_n w^n`, `n >= 2`.
pub fn bound_inverse<R: Real>(p: &JanowskiParams<R>, n: usize) -> Result<BoundValue<R>> {
    if n < 2 {
        return Err(Error::InvalidIndex(format!(
            "inverse coefficient index must be >= 2, got {n}"
        )));
    }
    let nr = R::from_int(n as i64);
    let base = bound_neg_power(p, &nr, n - 1)?;
    let k = unit_cell(n, &p.delta());
    let case = if k <= 1 {
        CaseTag::InverseProduct
    } else if k == n - 1 {
        CaseTag::InverseReciprocal
    } else {
        CaseTag::InverseTail
    };
    Ok(BoundValue {
        value: base.value / nr,
        case,
        cutoff: base.cutoff,
    })
}

/// Bound on `|B_m|` for the inverse `G(w) = w (1 + sum B_m w^-m)` of
/// `g(z) = 1/f(1/z)`, `m >= 1`.
pub fn bound_mero_inverse<R: Real>(p: &JanowskiParams<R>, m: usize) -> Result<BoundValue<R>> {
    match m {
        0 => Err(Error::InvalidIndex(
            "meromorphic inverse index must be >= 1".into(),
        )),
        1 => Ok(BoundValue {
            value: p.spread(),
            case: CaseTag::MeroLeading,
            cutoff: None,
        }),
        _ => {
            let n = m - 1;
            let nr = R::from_int(n as i64);
            let base = bound_neg_power(p, &nr, n + 1)?;
            let case = if n == 1 {
                CaseTag::MeroLeading
            } else if unit_cell(n, &p.delta()) == n - 1 {
                CaseTag::MeroReciprocal
            } else {
                CaseTag::MeroTail
            };
            Ok(BoundValue {
                value: base.value / nr,
                case,
                cutoff: base.cutoff,
            })
        }
    }
}

/// Bound `(A - B)/n` on the coefficient `b_n` of `g(z) = z (1 + sum b_n z^-n)`.
pub fn bound_mero_coeff<R: Real>(p: &JanowskiParams<R>, n: usize) -> Result<BoundValue<R>> {
    bound_neg_power(p, &R::one(), n)
}

/// Which bound family a table row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    NegPower,
    Inverse,
    MeroInverse,
}

/// One row of an exported bound table. For inverse tables `lambda_or_n` and
/// `l` both hold the coefficient subscript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub lambda_or_n: String,
    pub l: usize,
    pub bound: String,
    pub case_fired: CaseTag,
    #[serde(rename = "M")]
    pub cutoff: Option<usize>,
}

fn row<R: Real>(
    p: &JanowskiParams<R>,
    lambda_or_n: String,
    l: usize,
    v: BoundValue<R>,
) -> BoundRow {
    BoundRow {
        a: p.a().encode(),
        b: p.b().encode(),
        lambda_or_n,
        l,
        bound: v.value.encode(),
        case_fired: v.case,
        cutoff: v.cutoff,
    }
}

/// Rows `l = 1..=l_max` of `|a_l(-lambda, f)|` bounds.
pub fn neg_power_table<R: Real>(
    p: &JanowskiParams<R>,
    lambda: &R,
    l_max: usize,
) -> Result<Vec<BoundRow>> {
    (1..=l_max)
        .map(|l| Ok(row(p, lambda.encode(), l, bound_neg_power(p, lambda, l)?)))
        .collect()
}

/// Rows `n = 2..=n_max` of `|A_n|` bounds.
pub fn inverse_table<R: Real>(p: &JanowskiParams<R>, n_max: usize) -> Result<Vec<BoundRow>> {
    (2..=n_max)
        .map(|n| Ok(row(p, n.to_string(), n, bound_inverse(p, n)?)))
        .collect()
}

/// Rows `m = 1..=n_max` of `|B_m|` bounds.
pub fn mero_table<R: Real>(p: &JanowskiParams<R>, n_max: usize) -> Result<Vec<BoundRow>> {
    (1..=n_max)
        .map(|m| Ok(row(p, m.to_string(), m, bound_mero_inverse(p, m)?)))
        .collect()
}

/// Recomputes the bound named by a row, for round-trip checks.
pub fn reevaluate_row<R: Real>(kind: TableKind, r: &BoundRow) -> Result<BoundRow> {
    let parse = |s: &str| R::decode(s).map_err(|e| Error::InvalidParams(e.to_string()));
    let p = JanowskiParams::new(parse(&r.a)?, parse(&r.b)?)?;
    Ok(match kind {
        TableKind::NegPower => {
            let lambda = parse(&r.lambda_or_n)?;
            row(&p, lambda.encode(), r.l, bound_neg_power(&p, &lambda, r.l)?)
        }
        TableKind::Inverse => row(&p, r.l.to_string(), r.l, bound_inverse(&p, r.l)?),
        TableKind::MeroInverse => row(&p, r.l.to_string(), r.l, bound_mero_inverse(&p, r.l)?),
    })
}
