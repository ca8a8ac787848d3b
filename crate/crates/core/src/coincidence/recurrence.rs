//! Forward iteration of the three-term recurrences in the order.
//!
//! ```text
//! 2(n+1) F_{n+1} = (2n+1)(1 + (1-2x)^2) F_n - 2n (1-2x)^2 F_{n-1}
//! n (1+2x)^2 G_{n+1} = (2n-1)(1 + 2x + 2x^2) G_n - (n-1) G_{n-1}
//! (n+1)(1+x)^2 U_{n+1} = (2n+1)(x^2+1) U_n - n (1-x)^2 U_{n-1}     (same for J)
//! ```
//!
//! All four follow the dominant solution on their domains, so forward
//! iteration is stable.

use super::canonical::{canonical_of, CanonicalForm};
use super::{CoincidenceValue, Method};
use crate::error::{Error, Result};
use crate::numeric::as_whole;
use crate::pmf::{Family, FamilySpec};

fn iterate(seed0: f64, seed1: f64, first: u64, target: u64, step: impl Fn(f64, f64, f64) -> f64) -> f64 {
    if target == first {
        return seed0;
    }
    let (mut prev, mut cur) = (seed0, seed1);
    for k in (first + 1)..target {
        let next = step(k as f64, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

pub(crate) fn f_recurrence(n: u64, x: f64) -> f64 {
    let d2 = (1.0 - 2.0 * x).powi(2);
    let f1 = 1.0 - 2.0 * x + 2.0 * x * x;
    iterate(1.0, f1, 0, n, |k, cur, prev| {
        ((2.0 * k + 1.0) * (1.0 + d2) * cur - 2.0 * k * d2 * prev) / (2.0 * (k + 1.0))
    })
}

pub(crate) fn g_recurrence(n: u64, x: f64) -> f64 {
    let s = 2.0 * x + 1.0;
    let q = 1.0 + 2.0 * x + 2.0 * x * x;
    let g1 = 1.0 / s;
    let g2 = q / (s * s * s);
    iterate(g1, g2, 1, n, |k, cur, prev| {
        ((2.0 * k - 1.0) * q * cur - (k - 1.0) * prev) / (k * s * s)
    })
}

fn bbh_mkz_step(x: f64) -> impl Fn(f64, f64, f64) -> f64 {
    let lead = (1.0 + x) * (1.0 + x);
    let mid = x * x + 1.0;
    let back = (1.0 - x) * (1.0 - x);
    move |k, cur, prev| ((2.0 * k + 1.0) * mid * cur - k * back * prev) / ((k + 1.0) * lead)
}

pub(crate) fn u_recurrence(n: u64, x: f64) -> f64 {
    let u1 = (1.0 + x * x) / ((1.0 + x) * (1.0 + x));
    iterate(1.0, u1, 0, n, bbh_mkz_step(x))
}

pub(crate) fn j_recurrence(n: u64, x: f64) -> f64 {
    let j0 = (1.0 - x) / (1.0 + x);
    let j1 = (1.0 - x) * (1.0 + x * x) / (1.0 + x).powi(3);
    iterate(j0, j1, 0, n, bbh_mkz_step(x))
}

pub fn ic_recurrence(family: &FamilySpec, x: f64) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Recurrence));
    }
    let whole = || {
        family.integer_order().ok_or_else(|| {
            Error::unsupported(format!("recurrence needs an integer order, got {family}"))
        })
    };
    let v = match family.family() {
        Family::Binomial => f_recurrence(whole()?, x),
        Family::NegBinomial => g_recurrence(whole()?, x),
        Family::Bbh => u_recurrence(whole()?, x),
        Family::Mkz => j_recurrence(whole()?, x),
        Family::Poisson => {
            return Err(Error::unsupported("no order recurrence for the Poisson index"));
        }
        Family::GeneralC => match canonical_of(family, x) {
            CanonicalForm::BinomialAt { l, y } => f_recurrence(l, y),
            CanonicalForm::NegBinomialAt { m, y } => {
                let m = as_whole(m).ok_or_else(|| {
                    Error::unsupported(format!("recurrence needs an integer order n/c, got {m}"))
                })?;
                g_recurrence(m, y)
            }
            CanonicalForm::PoissonAt { .. } => {
                return Err(Error::unsupported("no order recurrence for the Poisson index"));
            }
        },
    };
    CoincidenceValue::new(v, Method::Recurrence, v * f64::EPSILON * (1.0 + family.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        assert_eq!(f_recurrence(2, 0.25), 0.4609375);
        assert_eq!(u_recurrence(2, 1.0), 0.375);
        assert_eq!(j_recurrence(0, 0.5), 1.0 / 3.0);
        assert!((g_recurrence(2, 1.0) - 5.0 / 27.0).abs() < 1e-16);
    }

    #[test]
    fn poisson_unsupported() {
        let p = FamilySpec::poisson(1.0).unwrap();
        assert!(matches!(ic_recurrence(&p, 0.5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn endpoint_of_binomial_domain() {
        for n in 0..30 {
            assert_eq!(f_recurrence(n, 1.0), 1.0);
        }
    }
}
