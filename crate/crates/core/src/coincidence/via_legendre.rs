//! Indices of coincidence from Legendre polynomials.
//!
//! With `t = (1 - 2x + 2x^2)/(1 - 2x)`:
//!
//! ```text
//! F_n(x)          = (1-2x)^n       P_n(t)
//! G_{n+1}(-x)     = (1-2x)^(-n-1)  P_n(t)
//! U_n(x/(1-x))    = (1-2x)^n       P_n(t)
//! J_n((x-1)/x)    = -(1-2x)^(-n-1) P_n(t)
//! ```
//!
//! `F` on `(1/2, 1]` uses `F_n(x) = F_n(1-x)` and `U` on `(1, inf)` the
//! matching chart point `1/(1+u)`. The pole `x = 1/2` is delegated to the
//! closed form. `G` and `J` use the map off the chart (`x < 0`, `x >= 1`),
//! where `|t| >= 1` and the recurrence still runs on the dominant solution.

use super::canonical::{canonical_of, CanonicalForm};
use super::closed::ic_closed;
use super::{CoincidenceValue, Method};
use crate::error::{Error, Result};
use crate::legendre::{chart_map, legendre_eval_dd};
use crate::numeric::as_whole;
use crate::pmf::{Family, FamilySpec};

/// `(1-2x)^n P_n(t)` on the chart, `None` at the pole.
fn f_on_chart(n: u64, x: f64) -> Option<f64> {
    if x == 0.5 {
        return None;
    }
    let d = 1.0 - 2.0 * x;
    let p = legendre_eval_dd(n, chart_map(x));
    Some(p.mul_f64(d.powi(n as i32)).to_f64())
}

fn f_legendre(n: u64, x: f64) -> Option<f64> {
    let xs = if x > 0.5 { 1.0 - x } else { x };
    f_on_chart(n, xs)
}

fn u_legendre(n: u64, u: f64) -> Option<f64> {
    if u == 1.0 {
        return None;
    }
    let xs = if u < 1.0 { u / (1.0 + u) } else { 1.0 / (1.0 + u) };
    f_on_chart(n, xs)
}

/// `G_m(y)` from the chart point `x = -y`.
fn g_legendre(m: u64, y: f64) -> f64 {
    let x = -y;
    let d = 1.0 - 2.0 * x;
    let p = legendre_eval_dd(m - 1, chart_map(x));
    p.div_f64(d.powi(m as i32)).to_f64()
}

/// `J_n(v)` from the chart point `x = 1/(1-v)`, so that `(x-1)/x = v`.
fn j_legendre(n: u64, v: f64) -> f64 {
    let x = 1.0 / (1.0 - v);
    let d = 1.0 - 2.0 * x;
    let p = legendre_eval_dd(n, chart_map(x));
    (-p.div_f64(d.powi(n as i32 + 1))).to_f64()
}

pub fn ic_via_legendre(family: &FamilySpec, x: f64) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Legendre));
    }
    let whole = |m: f64| {
        as_whole(m).ok_or_else(|| Error::unsupported(format!("Legendre route needs an integer order, got {m}")))
    };
    let n = family.order();
    let v = match family.family() {
        Family::Binomial => f_legendre(n as u64, x),
        Family::Bbh => u_legendre(n as u64, x),
        Family::NegBinomial => Some(g_legendre(whole(n)?, x)),
        Family::Mkz => Some(j_legendre(n as u64, x)),
        Family::Poisson => {
            return Err(Error::unsupported("no Legendre relation for the Poisson index"));
        }
        Family::GeneralC => match canonical_of(family, x) {
            CanonicalForm::BinomialAt { l, y } => f_legendre(l, y),
            CanonicalForm::NegBinomialAt { m, y } => Some(g_legendre(whole(m)?, y)),
            CanonicalForm::PoissonAt { .. } => {
                return Err(Error::unsupported("no Legendre relation for the Poisson index"));
            }
        },
    };
    match v {
        Some(v) if v.is_finite() => {
            CoincidenceValue::new(v, Method::Legendre, v * f64::EPSILON * (2.0 + n))
        }
        Some(v) => Err(Error::Numeric(format!("Legendre route overflowed ({v}) for {family} at x = {x}"))),
        // pole of the chart map
        None => ic_closed(family, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let f = ic_via_legendre(&FamilySpec::binomial(2), 0.25).unwrap();
        assert_eq!(f.value, 0.4609375);
        assert_eq!(f.method, Method::Legendre);

        let g = ic_via_legendre(&FamilySpec::neg_binomial(1.0).unwrap(), 0.25).unwrap();
        assert!((g.value - 2.0 / 3.0).abs() < 1e-16);

        let g2 = ic_via_legendre(&FamilySpec::neg_binomial(2.0).unwrap(), 1.0).unwrap();
        assert!((g2.value - 5.0 / 27.0).abs() < 1e-16);
    }

    #[test]
    fn pole_goes_to_closed_form() {
        let f = ic_via_legendre(&FamilySpec::binomial(4), 0.5).unwrap();
        assert_eq!(f.method, Method::Closed);
        let u = ic_via_legendre(&FamilySpec::bbh(4), 1.0).unwrap();
        assert_eq!(u.method, Method::Closed);
    }

    #[test]
    fn mkz_seeds() {
        for &v in &[0.1, 0.5, 0.95] {
            let j0 = j_legendre(0, v);
            assert!((j0 - (1.0 - v) / (1.0 + v)).abs() < 1e-15);
            let j1 = j_legendre(1, v);
            let seed = (1.0 - v) * (1.0 + v * v) / (1.0 + v).powi(3);
            assert!((j1 - seed).abs() < 1e-15);
        }
    }

    #[test]
    fn reflection_for_right_half() {
        for n in 0..10 {
            let a = ic_via_legendre(&FamilySpec::binomial(n), 0.8).unwrap().value;
            let b = ic_via_legendre(&FamilySpec::binomial(n), 0.2).unwrap().value;
            assert!((a - b).abs() < 1e-15);
        }
    }
}
