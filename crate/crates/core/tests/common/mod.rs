//! Independent oracles for integration tests. Nothing here goes through the
//! library's series code or its cutoff dispatch.
#![allow(dead_code)]

use janowski::class::JanowskiParams;
use janowski::scalar::rat;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Q {
    rat(n, d)
}

fn int(n: i64) -> Q {
    rat(n, 1)
}

/// Generalized binomial `mu choose l`.
pub fn binom(mu: &Q, l: usize) -> Q {
    (0..l).fold(Q::one(), |acc, j| {
        acc * (mu - int(j as i64)) / int(j as i64 + 1)
    })
}

/// Naive truncated polynomial product.
pub fn poly_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1/a` by the schoolbook recurrence.
pub fn poly_recip(a: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    out[0] = Q::one() / &a[0];
    for n in 1..len {
        let mut s = Q::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s / &a[0];
    }
    out
}

pub fn poly_pow(a: &[Q], e: i64, len: usize) -> Vec<Q> {
    let base = if e < 0 {
        poly_recip(a, len)
    } else {
        a[..a.len().min(len)].to_vec()
    };
    let mut out = vec![Q::zero(); len];
    out[0] = Q::one();
    for _ in 0..e.unsigned_abs() {
        out = poly_mul(&out, &base, len);
    }
    out
}

/// `[w^n] F` for the inverse of `f = z + ...` by Lagrange inversion:
/// `(1/n) [z^(n-1)] (z/f)^n`.
pub fn lagrange_inverse(f: &[Q], n: usize) -> Q {
    let quotient = &f[1..];
    let p = poly_pow(quotient, -(n as i64), n);
    p[n - 1].clone() / int(n as i64)
}

/// `[z^l] (k_{A,B}(z)/z)^(-lambda)` in closed form.
pub fn extremal_neg_power(a: &Q, b: &Q, lambda: &Q, l: usize) -> Q {
    if b.is_zero() {
        // exp(-lambda A z)
        let x = -(lambda * a);
        let fact = (1..=l).fold(Q::one(), |acc, j| acc * int(j as i64));
        return (0..l).fold(Q::one(), |acc, _| acc * &x) / fact;
    }
    // (1 + B z)^(-lambda (A - B)/B)
    let mu = -(lambda * (a - b)) / b;
    binom(&mu, l) * (0..l).fold(Q::one(), |acc, _| acc * b)
}

fn floor(x: &Q) -> i64 {
    x.floor().to_integer().try_into().unwrap()
}

fn prod(p: &JanowskiParams<Q>, lambda: &Q, count: i64) -> Q {
    let base = lambda * p.spread();
    (0..count).fold(Q::one(), |acc, j| {
        acc * (&base + p.b() * int(j)) / int(j + 1)
    })
}

/// Cell of `delta` found by scanning the literal interval endpoints.
/// `None` is the cell `J`.
pub fn literal_cell(lambda: &Q, delta: &Q) -> Option<i64> {
    let whole = floor(lambda);
    let frac = lambda - int(whole);
    if *delta < &frac / lambda {
        return None;
    }
    let k = (0..whole).find(|&k| {
        let lo = (&frac + int(k)) / lambda;
        let hi = (&frac + int(k + 1)) / lambda;
        lo <= *delta && *delta < hi
    });
    Some(k.unwrap_or_else(|| panic!("delta {delta} in no cell of lambda {lambda}")))
}

/// Negative-power bound read off the case statements: small `lambda`,
/// `delta` in `I_k` (with the integer variant), `delta` in `J`.
pub fn literal_neg_power(p: &JanowskiParams<Q>, lambda: &Q, l: usize) -> Q {
    let ab = p.spread();
    let l_i = l as i64;
    if *lambda <= Q::one() {
        return lambda * ab / int(l_i);
    }
    let delta = p.delta();
    let whole = floor(lambda);
    match literal_cell(lambda, &delta) {
        Some(k) => {
            let c = whole - k;
            let integer = (lambda * (Q::one() - &delta)).is_integer();
            let head_end = if integer { c + 1 } else { c };
            if l_i <= head_end {
                prod(p, lambda, l_i)
            } else {
                int(c) / int(l_i) * prod(p, lambda, c)
            }
        }
        None => {
            let c = whole + 1;
            if l_i <= c {
                prod(p, lambda, l_i)
            } else {
                int(c) / int(l_i) * prod(p, lambda, c)
            }
        }
    }
}

/// `k` with `delta` in `[k/n, (k+1)/n)`, by scanning.
pub fn unit_cell(n: i64, delta: &Q) -> i64 {
    (0..n)
        .find(|&k| int(k) / int(n) <= *delta && *delta < int(k + 1) / int(n))
        .unwrap()
}

/// Inverse-coefficient bound from the three stated cases.
pub fn literal_inverse(p: &JanowskiParams<Q>, n: usize) -> Q {
    let n = n as i64;
    let k = unit_cell(n, &p.delta());
    let nl = int(n);
    if k <= 1 {
        prod(p, &nl, n - 1) / &nl
    } else if k <= n - 2 {
        int(n - k) / int(n * (n - 1)) * prod(p, &nl, n - k)
    } else {
        p.spread() / int(n - 1)
    }
}

/// Meromorphic inverse bound from the stated cases, `m >= 1`.
pub fn literal_mero(p: &JanowskiParams<Q>, m: usize) -> Q {
    match m {
        1 => p.spread(),
        2 => p.spread() / int(2),
        _ => {
            let n = m as i64 - 1;
            let k = unit_cell(n, &p.delta());
            if k <= n - 2 {
                int(n - k) / int(n * (n + 1)) * prod(p, &int(n), n - k)
            } else {
                p.spread() / int(n + 1)
            }
        }
    }
}
