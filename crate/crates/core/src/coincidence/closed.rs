//! Closed forms as finite binomial sums.
//!
//! ```text
//! F_n(x) = sum_{k=0}^{n} (-1)^k C(n,k) C(2k,k) (x(1-x))^k
//! G_n(x) = 4^(1-n) sum_{k=0}^{n-1} C(2k,k) C(2n-2k-2,n-k-1) (2x+1)^(-2k-1)
//! U_n(x) = 4^(-n) C(2n,n) sum_{k=0}^{n} C(n,k)^2 / C(2n,2k) ((x-1)/(x+1))^(2k)
//! J_n(x) = 4^(-n) sum_{k=0}^{n} (2k)!(2n-2k)! / (k!^2 (n-k)!^2) ((1-x)/(1+x))^(2k+1)
//! K_n(x) = e^(-2nx) sum_{k>=0} (nx)^(2k) / (k!)^2
//! ```
//!
//! The `*_raw` functions evaluate the rational expressions without a domain
//! check; the cross-family identities need them at negative arguments.

use super::canonical::canonical_of;
use super::{CoincidenceValue, Method};
use crate::error::{Error, Result};
use crate::numeric::{as_whole, central_binomial_ratios, ln_factorial, DoubleDouble, NeumaierSum};
use crate::pmf::{Family, FamilySpec, TruncationPolicy};

const DD_UNIT: f64 = 1.232_595_164_407_831e-32; // 2^-106

/// Alternating sum for `F_n`, accumulated in double-double.
///
/// Returns the value and an error indicator proportional to the sum of
/// absolute terms, which is what cancellation costs.
pub fn f_closed_raw(n: u64, x: f64) -> (f64, f64) {
    let w = DoubleDouble::from_f64(x) * DoubleDouble::diff(1.0, x);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut magnitude = 1.0;
    for k in 1..=n {
        let kf = k as f64;
        // C(n,k)/C(n,k-1) = (n-k+1)/k,  C(2k,k)/C(2k-2,k-1) = 2(2k-1)/k
        let num = ((n - k + 1) as f64) * 2.0 * (2.0 * kf - 1.0);
        term = (term * w).mul_f64(-num).div_f64(kf * kf);
        sum = sum + term;
        magnitude += term.hi.abs();
    }
    let value = sum.to_f64();
    let err = 4.0 * (n + 1) as f64 * magnitude * DD_UNIT + value.abs() * f64::EPSILON / 2.0;
    (value, err)
}

/// `G_n` for integer `n >= 1` at any `x != -1/2`.
pub fn g_closed_raw(n: u64, x: f64) -> f64 {
    assert!(n >= 1, "G_n needs n >= 1");
    let m = (n - 1) as usize;
    let a = central_binomial_ratios(m);
    let r = 1.0 / (2.0 * x + 1.0);
    let r2 = r * r;
    // r * sum_k a_k a_{m-k} (r^2)^k, Horner from the top coefficient
    let mut acc = 0.0;
    for k in (0..=m).rev() {
        acc = acc * r2 + a[k] * a[m - k];
    }
    r * acc
}

/// `U_n` at any `x != -1`; coefficients `C(n,k)^2 / C(2n,2k)` by their
/// term ratio, which keeps them in `(0, 1]`.
pub fn u_closed_raw(n: u64, x: f64) -> f64 {
    let central = central_binomial_ratios(n as usize)[n as usize];
    let rho = ((x - 1.0) / (x + 1.0)).powi(2);
    let nf = n as f64;
    let mut b = 1.0;
    let mut pow = 1.0;
    let mut sum = NeumaierSum::new();
    for k in 0..=n {
        sum.add(b * pow);
        if k < n {
            let kf = k as f64;
            let ratio = (nf - kf) / (kf + 1.0);
            b *= ratio * ratio * ((2.0 * kf + 1.0) * (2.0 * kf + 2.0))
                / ((2.0 * nf - 2.0 * kf) * (2.0 * nf - 2.0 * kf - 1.0));
            pow *= rho;
        }
    }
    central * sum.value()
}

/// `J_n` at any `x != -1`.
pub fn j_closed_raw(n: u64, x: f64) -> f64 {
    let a = central_binomial_ratios(n as usize);
    let r = (1.0 - x) / (1.0 + x);
    let r2 = r * r;
    let n = n as usize;
    let mut acc = 0.0;
    for k in (0..=n).rev() {
        acc = acc * r2 + a[k] * a[n - k];
    }
    r * acc
}

/// Poisson series with terms evaluated independently in log space, summed
/// outward from the largest term. Returns the value and the tail bound.
pub fn k_closed(n: f64, x: f64, policy: &TruncationPolicy) -> Result<(f64, f64)> {
    let z = n * x;
    if z == 0.0 {
        return Ok((1.0, 0.0));
    }
    let ln_z = z.ln();
    let term = |k: u64| (2.0 * (k as f64 * ln_z - ln_factorial(k)) - 2.0 * z).exp();
    let peak = z.floor() as u64;
    if peak as usize >= policy.max_terms {
        return Err(Error::Truncation {
            terms: policy.max_terms,
            tail: 1.0,
        });
    }
    let mut sum = NeumaierSum::new();
    for k in (0..=peak).rev() {
        sum.add(term(k));
    }
    let mut k = peak + 1;
    loop {
        let t = term(k);
        sum.add(t);
        // ratio of the next term to this one, decreasing in k
        let r = (z / (k + 1) as f64).powi(2);
        if r < 1.0 {
            let tail = t * r / (1.0 - r);
            if tail <= policy.rel_tol * sum.value() {
                return Ok((sum.value(), tail));
            }
        }
        k += 1;
        if (k - peak) as usize + peak as usize >= policy.max_terms {
            return Err(Error::Truncation {
                terms: k as usize,
                tail: t,
            });
        }
    }
}

pub fn ic_closed(family: &FamilySpec, x: f64) -> Result<CoincidenceValue> {
    ic_closed_with(family, x, &TruncationPolicy::default())
}

/// Closed form for the family; the policy only matters for the Poisson series.
pub fn ic_closed_with(family: &FamilySpec, x: f64, policy: &TruncationPolicy) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Closed));
    }
    let n = family.order();
    let done = |v: f64, err: f64| CoincidenceValue::new(v, Method::Closed, err);
    let eps = |v: f64| v * 4.0 * f64::EPSILON;
    match family.family() {
        Family::Binomial => {
            let (v, err) = f_closed_raw(n as u64, x);
            done(v, err)
        }
        Family::NegBinomial => {
            let n = as_whole(n).ok_or_else(|| {
                Error::unsupported(format!("closed form of G_n needs an integer order, got {n}"))
            })?;
            let v = g_closed_raw(n, x);
            done(v, eps(v))
        }
        Family::Bbh => {
            let v = u_closed_raw(n as u64, x);
            done(v, eps(v))
        }
        Family::Mkz => {
            let v = j_closed_raw(n as u64, x);
            done(v, eps(v))
        }
        Family::Poisson => {
            let (v, tail) = k_closed(n, x, policy)?;
            done(v, tail)
        }
        Family::GeneralC => {
            let canon = canonical_of(family, x);
            ic_closed_with(&canon.family()?, canon.point(), policy)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        for &x in &[0.1, 0.25, 0.6, 0.9] {
            let (f1, _) = f_closed_raw(1, x);
            assert!((f1 - (1.0 - 2.0 * x + 2.0 * x * x)).abs() < 1e-15);
            assert_eq!(f_closed_raw(0, x).0, 1.0);
        }
        for &x in &[0.0, 0.3, 1.0, 3.0] {
            assert!((g_closed_raw(1, x) - 1.0 / (2.0 * x + 1.0)).abs() < 1e-15);
            let g2 = (1.0 + 2.0 * x + 2.0 * x * x) / (2.0 * x + 1.0).powi(3);
            assert!((g_closed_raw(2, x) - g2).abs() < 1e-15);
            assert_eq!(u_closed_raw(0, x), 1.0);
            let u1 = (1.0 + x * x) / (1.0 + x).powi(2);
            assert!((u_closed_raw(1, x) - u1).abs() < 1e-15);
        }
        for &x in &[0.0, 0.3, 0.9] {
            assert!((j_closed_raw(0, x) - (1.0 - x) / (1.0 + x)).abs() < 1e-16);
            let j1 = (1.0 - x) * (1.0 + x * x) / (1.0 + x).powi(3);
            assert!((j_closed_raw(1, x) - j1).abs() < 1e-15);
        }
    }

    #[test]
    fn examples() {
        assert_eq!(f_closed_raw(2, 0.25).0, 0.4609375);
        assert_eq!(f_closed_raw(2, 0.5).0, 0.375);
        let g = ic_closed(&FamilySpec::neg_binomial(1.0).unwrap(), 1.0).unwrap();
        assert!((g.value - 1.0 / 3.0).abs() < 1e-16);
        let k = ic_closed(&FamilySpec::poisson(1.0).unwrap(), 0.5).unwrap();
        assert!((k.value - 0.4657596).abs() < 1e-7);
    }

    #[test]
    fn mkz_at_zero_sums_to_one() {
        for n in 0..=40 {
            assert!((j_closed_raw(n, 0.0) - 1.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn non_integer_order_is_unsupported() {
        let g = FamilySpec::neg_binomial(2.5).unwrap();
        assert!(matches!(ic_closed(&g, 1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cancellation_indicator_grows_with_order() {
        let (_, e10) = f_closed_raw(10, 0.5);
        let (v80, e80) = f_closed_raw(80, 0.5);
        assert!(e80 > e10);
        assert!(e80 / v80 > 1e-13);
    }
}
