//! Exact big-rational oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn exact(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().expect("representable")
}

pub fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn int(v: BigInt) -> Q {
    Q::from_integer(v)
}

/// `sum_k (C(n,k) x^k (1-x)^(n-k))^2`, straight from the definition.
pub fn f_exact(n: u64, x: &Q) -> Q {
    let one_minus = Q::one() - x;
    (0..=n)
        .map(|k| {
            let p = int(binom(n, k)) * pow(x, k) * pow(&one_minus, n - k);
            &p * &p
        })
        .fold(Q::zero(), |a, b| a + b)
}

/// `sum_k (C(n,k) x^k (1+x)^(-n))^2`.
pub fn u_exact(n: u64, x: &Q) -> Q {
    let denom = pow(&(Q::one() + x), n);
    (0..=n)
        .map(|k| {
            let p = int(binom(n, k)) * pow(x, k) / &denom;
            &p * &p
        })
        .fold(Q::zero(), |a, b| a + b)
}

/// Finite sum for `G_n`, integer `n >= 1`.
pub fn g_exact(n: u64, x: &Q) -> Q {
    let r = Q::one() / (q(2, 1) * x + Q::one());
    let s: Q = (0..n)
        .map(|k| int(binom(2 * k, k) * binom(2 * (n - 1 - k), n - 1 - k)) * pow(&r, 2 * k + 1))
        .fold(Q::zero(), |a, b| a + b);
    s / pow(&q(4, 1), n - 1)
}

/// Finite sum for `J_n`.
pub fn j_exact(n: u64, x: &Q) -> Q {
    let r = (Q::one() - x) / (Q::one() + x);
    let s: Q = (0..=n)
        .map(|k| int(binom(2 * k, k) * binom(2 * (n - k), n - k)) * pow(&r, 2 * k + 1))
        .fold(Q::zero(), |a, b| a + b);
    s / pow(&q(4, 1), n)
}

/// `P_n(t) = 2^-n sum_k C(n,k)^2 (t+1)^k (t-1)^(n-k)`.
pub fn legendre_exact(n: u64, t: &Q) -> Q {
    let plus = t + Q::one();
    let minus = t - Q::one();
    let s: Q = (0..=n)
        .map(|k| {
            let c = binom(n, k);
            int(&c * &c) * pow(&plus, k) * pow(&minus, n - k)
        })
        .fold(Q::zero(), |a, b| a + b);
    s / pow(&q(2, 1), n)
}

pub fn pow(base: &Q, e: u64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
