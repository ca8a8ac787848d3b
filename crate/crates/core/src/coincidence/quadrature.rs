//! Gauss-Chebyshev quadrature of the integral representations
//!
//! ```text
//! S = (1/pi) int_0^1 (t + (1-t) A)^e dt / sqrt(t(1-t))
//! ```
//!
//! with `(A, e)` equal to `((1-2x)^2, n)` for `F_n`, `(((1-x)/(1+x))^2, n)`
//! for `U_n`, `((1+2x)^2, -n)` for `G_n`, `(((1+x)/(1-x))^2, -n-1)` for `J_n`
//! and `((1+2cx)^2, -n/c)` for a general `c != 0`.

use std::f64::consts::PI;

use super::{CoincidenceValue, Method};
use crate::error::{Error, Result};
use crate::numeric::{as_whole, NeumaierSum};
use crate::pmf::{Family, FamilySpec};

/// `m`-point rule for the weight `1 / sqrt(t(1-t))` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub m: usize,
    /// `t_j = (1 + cos((2j-1) pi / 2m)) / 2`
    pub nodes: Vec<f64>,
    /// `1 - t_j`, computed without cancellation.
    pub complements: Vec<f64>,
    /// All equal to `pi / m`.
    pub weights: Vec<f64>,
}

pub fn chebyshev_gauss_rule(m: usize) -> QuadratureRule {
    assert!(m >= 1, "quadrature rule needs at least one node");
    let mut nodes = Vec::with_capacity(m);
    let mut complements = Vec::with_capacity(m);
    for j in 1..=m {
        let half = (2 * j - 1) as f64 * PI / (4 * m) as f64;
        let (s, c) = half.sin_cos();
        nodes.push(c * c);
        complements.push(s * s);
    }
    QuadratureRule {
        m,
        nodes,
        complements,
        weights: vec![PI / m as f64; m],
    }
}

impl QuadratureRule {
    /// `(1/pi) sum_j w_j q(t_j, 1 - t_j)`.
    pub fn normalized_sum(&self, q: impl Fn(f64, f64) -> f64) -> f64 {
        let s: NeumaierSum = self
            .nodes
            .iter()
            .zip(&self.complements)
            .zip(&self.weights)
            .map(|((&t, &s), &w)| w * q(t, s))
            .collect();
        s.value() / PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    /// Non-negative integer power: polynomial integrand.
    Whole(u64),
    Real(f64),
}

/// `(t + (1 - t) base)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrand {
    pub base: f64,
    pub exponent: Exponent,
}

impl Integrand {
    pub fn for_family(family: &FamilySpec, x: f64) -> Result<Integrand> {
        let n = family.order();
        let real_or_whole = |e: f64| match as_whole(e) {
            Some(k) => Exponent::Whole(k),
            None => Exponent::Real(e),
        };
        let (base, exponent) = match family.family() {
            Family::Binomial => ((1.0 - 2.0 * x).powi(2), Exponent::Whole(n as u64)),
            Family::Bbh => (((1.0 - x) / (1.0 + x)).powi(2), Exponent::Whole(n as u64)),
            Family::NegBinomial => ((1.0 + 2.0 * x).powi(2), Exponent::Real(-n)),
            Family::Mkz => (((1.0 + x) / (1.0 - x)).powi(2), Exponent::Real(-n - 1.0)),
            Family::GeneralC => {
                let c = family.c().unwrap_or(0.0);
                if c == 0.0 {
                    return Err(Error::unsupported("no integral representation for c = 0"));
                }
                ((1.0 + 2.0 * c * x).powi(2), real_or_whole(-n / c))
            }
            Family::Poisson => {
                return Err(Error::unsupported("no integral representation for the Poisson index"));
            }
        };
        Ok(Integrand { base, exponent })
    }

    pub fn degree(&self) -> Option<u64> {
        match self.exponent {
            Exponent::Whole(k) => Some(k),
            Exponent::Real(_) => None,
        }
    }

    #[inline]
    pub fn eval(&self, t: f64, s: f64) -> f64 {
        let f = t + s * self.base;
        match self.exponent {
            Exponent::Whole(k) if k <= i32::MAX as u64 => f.powi(k as i32),
            Exponent::Whole(k) => f.powf(k as f64),
            Exponent::Real(e) => match as_whole(-e) {
                Some(k) if k <= i32::MAX as u64 => f.powi(-(k as i32)),
                _ => f.powf(e),
            },
        }
    }

    pub fn integrate(&self, rule: &QuadratureRule) -> f64 {
        rule.normalized_sum(|t, s| self.eval(t, s))
    }
}

/// Node-count selection for [`ic_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadNodes {
    /// Exact rule for polynomial integrands; doubling from 64 nodes until
    /// successive values agree otherwise.
    Auto,
    Fixed(usize),
}

const AUTO_START: usize = 64;
const AUTO_MAX: usize = 1 << 20;
const AUTO_REL_TOL: f64 = 1e-14;

pub fn ic_quadrature(family: &FamilySpec, x: f64, nodes: QuadNodes) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    let integrand = Integrand::for_family(family, x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Quadrature));
    }
    let at = |m: usize| integrand.integrate(&chebyshev_gauss_rule(m));
    let (value, err) = match (nodes, integrand.degree()) {
        (QuadNodes::Fixed(m), _) => {
            if m == 0 {
                return Err(Error::parameter("quadrature needs at least one node"));
            }
            let v = at(m);
            (v, (v - at(2 * m)).abs())
        }
        (QuadNodes::Auto, Some(deg)) => {
            let m = 16.max((deg as usize).div_ceil(2) + 2);
            let v = at(m);
            (v, (v - at(2 * m)).abs())
        }
        (QuadNodes::Auto, None) => {
            let mut m = AUTO_START;
            let mut coarse = at(m);
            loop {
                let fine = at(2 * m);
                let diff = (fine - coarse).abs();
                m *= 2;
                if diff <= AUTO_REL_TOL * fine.abs() || m >= AUTO_MAX {
                    break (fine, diff);
                }
                coarse = fine;
            }
        }
    };
    CoincidenceValue::new(value, Method::Quadrature, err)
}
