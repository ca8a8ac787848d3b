//! Legendre polynomials by the three-term recurrence, and the rational map
//! `x -> t = (1 - 2x + 2x^2) / (1 - 2x)` under which
//! `P_n(t) = (1 - 2x)^(-n) F_n(x)`.

use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::numeric::DoubleDouble;

/// A point `x` of the chart `[0, 1/2)` and its image `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreArgument {
    pub x: f64,
    pub t: f64,
}

pub const CHART: Interval = Interval::closed_open(0.0, 0.5);

pub fn legendre_argument(x: f64) -> Result<LegendreArgument> {
    if !CHART.contains(x) {
        return Err(Error::domain(x, CHART));
    }
    Ok(LegendreArgument { x, t: chart_map(x) })
}

/// The map without the chart restriction. The relations for `G` and `J`
/// use it at `x < 0` and `x >= 1`, where `|t| >= 1` still holds.
pub(crate) fn chart_map(x: f64) -> f64 {
    let d = 1.0 - 2.0 * x;
    (d + 2.0 * x * x) / d
}

/// `P_n(t)` by forward recurrence from `P_0 = 1`, `P_1 = t`, carried in
/// double-double so the returned double is the rounded exact value.
pub fn legendre_eval(n: u64, t: f64) -> f64 {
    legendre_eval_dd(n, t).to_f64()
}

pub(crate) fn legendre_eval_dd(n: u64, t: f64) -> DoubleDouble {
    let mut prev = DoubleDouble::ONE;
    if n == 0 {
        return prev;
    }
    let mut cur = DoubleDouble::from_f64(t);
    for k in 1..n {
        let kf = k as f64;
        // (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}
        let next = (cur.mul_f64(t).mul_f64(2.0 * kf + 1.0) - prev.mul_f64(kf)).div_f64(kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_0(t), ..., P_nmax(t)` in plain double arithmetic.
pub fn legendre_table(nmax: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(1.0);
    if nmax == 0 {
        return out;
    }
    out.push(t);
    for k in 1..nmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}
