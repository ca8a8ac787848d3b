//! Index of coincidence `S = sum_k p_k^2` for every family, through five
//! independent backends:
//!
//! | backend      | route                                                   |
//! |--------------|---------------------------------------------------------|
//! | `direct`     | squares of a truncated pmf row                          |
//! | `closed`     | finite binomial-coefficient sums (series for Poisson)   |
//! | `recurrence` | three-term recurrence in the order, from two seeds      |
//! | `quadrature` | Gauss-Chebyshev rule on the integral representation     |
//! | `legendre`   | `P_n` at the mapped argument, times the chart prefactor |
//!
//! [`ic_auto`] picks a primary backend, evaluates one independent check and
//! fails if they disagree.

mod canonical;
mod closed;
mod direct;
mod quadrature;
mod recurrence;
mod via_legendre;

use std::fmt;
use std::str::FromStr;

pub use canonical::{canonicalize, CanonicalForm};
pub use closed::{
    f_closed_raw, g_closed_raw, ic_closed, ic_closed_with, j_closed_raw, k_closed, u_closed_raw,
};
pub use direct::ic_direct;
pub use quadrature::{chebyshev_gauss_rule, ic_quadrature, Integrand, QuadNodes, QuadratureRule};
pub use recurrence::ic_recurrence;
pub use via_legendre::ic_via_legendre;

use crate::error::{Error, Result};
use crate::numeric::rel_diff;
use crate::pmf::{Family, FamilySpec, TruncationPolicy};

/// Relative disagreement above which [`ic_auto`] reports a consistency error.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Auto,
    Direct,
    Closed,
    Recurrence,
    Quadrature,
    Legendre,
}

impl Method {
    pub const BACKENDS: [Method; 5] = [
        Method::Direct,
        Method::Closed,
        Method::Recurrence,
        Method::Quadrature,
        Method::Legendre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Direct => "direct",
            Method::Closed => "closed",
            Method::Recurrence => "recurrence",
            Method::Quadrature => "quadrature",
            Method::Legendre => "legendre",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Method::Auto]
            .into_iter()
            .chain(Method::BACKENDS)
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parameter(format!("unknown method `{s}`")))
    }
}

/// A computed index of coincidence.
///
/// `err_estimate` is a heuristic indicator (tail mass, doubling difference,
/// cross-backend discrepancy), not a rigorous bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceValue {
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

impl CoincidenceValue {
    /// Checks `0 < value <= 1`, absorbing rounding overshoot above one.
    pub(crate) fn new(value: f64, method: Method, err_estimate: f64) -> Result<Self> {
        if !(value > 0.0) || value > 1.0 + 1e-12 {
            return Err(Error::Numeric(format!(
                "{method} backend produced S = {value:e}, outside (0, 1]"
            )));
        }
        Ok(CoincidenceValue {
            value: value.min(1.0),
            method,
            err_estimate: err_estimate.abs(),
        })
    }

    /// `S = 1` of the degenerate distribution at `x = 0`.
    pub(crate) fn one(method: Method) -> Self {
        CoincidenceValue {
            value: 1.0,
            method,
            err_estimate: 0.0,
        }
    }
}

/// One evaluation request for the CLI and other callers that choose the
/// backend at run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub family: FamilySpec,
    pub x: f64,
    pub method: Method,
    pub policy: TruncationPolicy,
    pub nodes: QuadNodes,
}

impl EvalRequest {
    pub fn new(family: FamilySpec, x: f64, method: Method) -> Self {
        EvalRequest {
            family,
            x,
            method,
            policy: TruncationPolicy::default(),
            nodes: QuadNodes::Auto,
        }
    }
}

pub fn evaluate(req: &EvalRequest) -> Result<CoincidenceValue> {
    match req.method {
        Method::Auto => ic_auto(&req.family, req.x),
        Method::Direct => ic_direct(&req.family, req.x, &req.policy),
        Method::Closed => ic_closed_with(&req.family, req.x, &req.policy),
        Method::Recurrence => ic_recurrence(&req.family, req.x),
        Method::Quadrature => ic_quadrature(&req.family, req.x, req.nodes),
        Method::Legendre => ic_via_legendre(&req.family, req.x),
    }
}

/// Relative closed-form error indicator above which the alternating sum is
/// not trusted as the primary value.
const CLOSED_TRUST: f64 = 1e-13;

/// Dispatching evaluation with an independent cross-check.
///
/// Integer orders use the closed form checked by the recurrence (general
/// `c`: checked by the direct sum of the general-`c` row). When the closed
/// form has lost accuracy to cancellation, the recurrence becomes primary and
/// the direct sum the check. Non-integer orders use quadrature checked by the
/// direct sum; Poisson uses the direct sum checked by its series.
pub fn ic_auto(family: &FamilySpec, x: f64) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Closed));
    }
    let policy = TruncationPolicy::default();
    let poisson = family.family() == Family::Poisson
        || (family.family() == Family::GeneralC && family.c() == Some(0.0));
    let (primary, check) = if poisson {
        (ic_direct(family, x, &policy)?, ic_closed_with(family, x, &policy)?)
    } else if family.integer_order().is_some() {
        let closed = ic_closed(family, x)?;
        let accurate = closed.err_estimate <= CLOSED_TRUST * closed.value;
        match (family.family(), accurate) {
            (Family::GeneralC, true) => (closed, ic_direct(family, x, &policy)?),
            (_, true) => (closed, ic_recurrence(family, x)?),
            (_, false) => (ic_recurrence(family, x)?, ic_direct(family, x, &policy)?),
        }
    } else {
        (
            ic_quadrature(family, x, QuadNodes::Auto)?,
            ic_direct(family, x, &policy)?,
        )
    };
    let rel = rel_diff(primary.value, check.value);
    if rel > CONSISTENCY_TOL {
        return Err(Error::Consistency {
            primary: primary.method.name(),
            check: check.method.name(),
            a: primary.value,
            b: check.value,
            rel,
        });
    }
    Ok(CoincidenceValue {
        err_estimate: (primary.value - check.value).abs(),
        ..primary
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_examples() {
        let b = FamilySpec::binomial(5);
        let v = ic_auto(&b, 0.3).unwrap();
        assert_eq!(v.method, Method::Closed);
        assert!(v.err_estimate <= 1e-12 * v.value);

        let p = FamilySpec::poisson(2.0).unwrap();
        assert_eq!(ic_auto(&p, 0.0).unwrap().value, 1.0);

        let g = FamilySpec::general(0.5, 0.75).unwrap();
        let v = ic_auto(&g, 2.0).unwrap();
        assert_eq!(v.method, Method::Quadrature);
        let d = ic_direct(&g, 2.0, &TruncationPolicy::default()).unwrap();
        assert!(rel_diff(v.value, d.value) < 1e-10);
    }

    #[test]
    fn auto_falls_back_when_alternating_sum_cancels() {
        let b = FamilySpec::binomial(90);
        let v = ic_auto(&b, 0.5).unwrap();
        assert_eq!(v.method, Method::Recurrence);
        assert!(v.err_estimate <= 1e-12 * v.value);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Auto].into_iter().chain(Method::BACKENDS) {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("simpson".parse::<Method>().is_err());
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        assert!(CoincidenceValue::new(0.0, Method::Direct, 0.0).is_err());
        assert!(CoincidenceValue::new(1.5, Method::Direct, 0.0).is_err());
        assert!(CoincidenceValue::new(f64::NAN, Method::Direct, 0.0).is_err());
        assert_eq!(CoincidenceValue::new(1.0 + 1e-15, Method::Direct, 0.0).unwrap().value, 1.0);
    }
}
