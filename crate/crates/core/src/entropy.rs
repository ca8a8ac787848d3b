//! Order-2 Rényi and Tsallis entropies of the families.
//!
//! Rényi entropies are in nats unless a [`LogBase`] says otherwise.

use std::fmt;
use std::str::FromStr;

use crate::coincidence::ic_auto;
use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::pmf::FamilySpec;

const S_RANGE: Interval = Interval {
    lo: 0.0,
    hi: 1.0,
    lo_closed: false,
    hi_closed: true,
};

fn check_s(s: f64) -> Result<()> {
    if S_RANGE.contains(s) {
        Ok(())
    } else {
        Err(Error::domain(s, S_RANGE))
    }
}

/// `-ln s`.
pub fn renyi_entropy(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(0.0 - s.ln())
}

/// `1 - s`.
pub fn tsallis_entropy(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(1.0 - s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    /// Converts an entropy in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            _ => Err(Error::parameter(format!("log base must be `e` or `2`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint {
    pub x: f64,
    pub s: f64,
    /// Nats.
    pub renyi: f64,
    pub tsallis: f64,
}

impl EntropyPoint {
    pub fn from_s(x: f64, s: f64) -> Result<Self> {
        Ok(EntropyPoint {
            x,
            s,
            renyi: renyi_entropy(s)?,
            tsallis: tsallis_entropy(s)?,
        })
    }
}

/// One point per grid entry, each from [`ic_auto`]. The first failure is
/// returned tagged with its grid index.
pub fn entropy_profile(family: &FamilySpec, grid: &[f64]) -> Result<Vec<EntropyPoint>> {
    grid.iter()
        .enumerate()
        .map(|(index, &x)| {
            ic_auto(family, x)
                .and_then(|v| EntropyPoint::from_s(x, v.value))
                .map_err(|e| Error::AtGridPoint {
                    index,
                    x,
                    source: Box::new(e),
                })
        })
        .collect()
}

/// Slack of the entropy form of `S_a <= coef * S_b`, namely
/// `R(S_a) - (R(S_b) - ln coef)`; nonnegative when the bound holds.
pub fn bound_transfer_slack(s_a: f64, s_b: f64, coef: f64) -> Result<f64> {
    if !(coef > 0.0) {
        return Err(Error::parameter(format!("bound coefficient must be positive, got {coef}")));
    }
    Ok(renyi_entropy(s_a)? - renyi_entropy(s_b)? + coef.ln())
}
