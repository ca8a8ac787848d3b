//! Exact relations between the families, checked numerically.
//!
//! | id                      | relation                                                      |
//! |-------------------------|---------------------------------------------------------------|
//! | `ID-2.1`                | `F_n(x) = (1-2x)^(2n+1) G_{n+1}(-x)`                          |
//! | `ID-2.2`                | `F_n(x) = U_n(x/(1-x))`                                       |
//! | `ID-2.3`                | `F_n(x) = -(1-2x)^(2n+1) J_n((x-1)/x)`                        |
//! | `ID-2.16`               | `J_n(x) = (1-x)/(1+x) U_n(x)`                                 |
//! | `ID-2.5`                | `P_n(t)` against the four chart expressions of `F, G, U, J`   |
//! | `canonical-binomial`    | `S_{n,c}(x) = F_l(-cx)` for `c < 0`, `n = -cl`                |
//! | `canonical-negbinomial` | `S_{n,c}(x) = G_{n/c}(cx)` for `c > 0`                        |
//!
//! Arguments outside a family's domain go through the raw closed forms.
//! The general-family sides use the direct sum of the general pmf, so each
//! canonical reduction compares two independent computations.

use crate::coincidence::{g_closed_raw, ic_auto, ic_direct, j_closed_raw};
use crate::error::{Error, Result};
use crate::grid::{interior_grid, Interval};
use crate::legendre::legendre_argument;
use crate::legendre::legendre_eval;
use crate::numeric::rel_diff;
use crate::pmf::{FamilySpec, TruncationPolicy};

/// Deviation above which an identity is reported as failing.
pub const IDENTITY_TOL: f64 = 1e-10;

pub const IDENTITY_IDS: [&str; 7] = [
    "ID-2.1",
    "ID-2.2",
    "ID-2.3",
    "ID-2.16",
    "ID-2.5",
    "canonical-binomial",
    "canonical-negbinomial",
];

const CANONICAL_NEG_C: [f64; 3] = [-2.0, -1.0, -0.5];
const CANONICAL_POS_C: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: &'static str,
    pub points: usize,
    pub max_rel_deviation: f64,
    /// `(n, x)` where the maximum occurs.
    pub worst: (u64, f64),
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.max_rel_deviation <= IDENTITY_TOL
    }
}

#[derive(Default)]
struct Tracker {
    points: usize,
    max: f64,
    worst: (u64, f64),
}

impl Tracker {
    fn record(&mut self, n: u64, x: f64, a: f64, b: f64) {
        let d = rel_diff(a, b);
        self.points += 1;
        if d > self.max || d.is_nan() {
            self.max = if d.is_nan() { f64::INFINITY } else { d };
            self.worst = (n, x);
        }
    }

    fn finish(self, id: &'static str) -> IdentityReport {
        IdentityReport {
            id,
            points: self.points,
            max_rel_deviation: self.max,
            worst: self.worst,
        }
    }
}

fn f(n: u64, x: f64) -> Result<f64> {
    Ok(ic_auto(&FamilySpec::binomial(n), x)?.value)
}

fn u(n: u64, x: f64) -> Result<f64> {
    Ok(ic_auto(&FamilySpec::bbh(n), x)?.value)
}

fn j(n: u64, x: f64) -> Result<f64> {
    Ok(ic_auto(&FamilySpec::mkz(n), x)?.value)
}

const LEFT_HALF: Interval = Interval::open(0.0, 0.5);
const UNIT_OPEN: Interval = Interval::open(0.0, 1.0);

fn run(id: &'static str, n_max: u64, x_points: usize) -> Result<IdentityReport> {
    let mut t = Tracker::default();
    let policy = TruncationPolicy::default();
    match id {
        "ID-2.1" => {
            for x in interior_grid(&LEFT_HALF, x_points) {
                for n in 0..=n_max {
                    let rhs = (1.0 - 2.0 * x).powi(2 * n as i32 + 1) * g_closed_raw(n + 1, -x);
                    t.record(n, x, f(n, x)?, rhs);
                }
            }
        }
        "ID-2.2" => {
            for x in interior_grid(&UNIT_OPEN, x_points) {
                for n in 0..=n_max {
                    t.record(n, x, f(n, x)?, u(n, x / (1.0 - x))?);
                }
            }
        }
        "ID-2.3" => {
            for x in interior_grid(&LEFT_HALF, x_points) {
                for n in 0..=n_max {
                    let rhs = -(1.0 - 2.0 * x).powi(2 * n as i32 + 1) * j_closed_raw(n, (x - 1.0) / x);
                    t.record(n, x, f(n, x)?, rhs);
                }
            }
        }
        "ID-2.16" => {
            for x in interior_grid(&UNIT_OPEN, x_points) {
                for n in 0..=n_max {
                    t.record(n, x, j(n, x)?, (1.0 - x) / (1.0 + x) * u(n, x)?);
                }
            }
        }
        "ID-2.5" => {
            for x in interior_grid(&LEFT_HALF, x_points) {
                let arg = legendre_argument(x)?;
                let d = 1.0 - 2.0 * x;
                for n in 0..=n_max {
                    let p = legendre_eval(n, arg.t);
                    let e = n as i32;
                    t.record(n, x, p, d.powi(-e) * f(n, x)?);
                    t.record(n, x, p, d.powi(e + 1) * g_closed_raw(n + 1, -x));
                    t.record(n, x, p, d.powi(-e) * u(n, x / (1.0 - x))?);
                    t.record(n, x, p, -d.powi(e + 1) * j_closed_raw(n, (x - 1.0) / x));
                }
            }
        }
        "canonical-binomial" => {
            for c in CANONICAL_NEG_C {
                for x in interior_grid(&Interval::open(0.0, -1.0 / c), x_points) {
                    for l in 1..=n_max {
                        let general = FamilySpec::general(c, -c * l as f64)?;
                        let s = ic_direct(&general, x, &policy)?.value;
                        t.record(l, x, s, f(l, -c * x)?);
                    }
                }
            }
        }
        "canonical-negbinomial" => {
            for c in CANONICAL_POS_C {
                for x in interior_grid(&Interval::open(0.0, 1.0), x_points) {
                    for n in 1..=n_max {
                        let n = n as f64;
                        if n < c {
                            continue;
                        }
                        let general = FamilySpec::general(c, n)?;
                        let s = ic_direct(&general, x, &policy)?.value;
                        let g = ic_auto(&FamilySpec::neg_binomial(n / c)?, c * x)?.value;
                        t.record(n as u64, x, s, g);
                    }
                }
            }
        }
        other => return Err(Error::UnknownId(other.to_string())),
    }
    Ok(t.finish(id))
}

/// Maximum relative deviation of each identity over `n <= n_max` and an
/// interior grid of `x_points` points.
pub fn check_identities(n_max: u64, x_points: usize) -> Result<Vec<IdentityReport>> {
    if x_points < 2 {
        return Err(Error::parameter(format!("x_points must be at least 2, got {x_points}")));
    }
    IDENTITY_IDS.iter().map(|id| run(id, n_max, x_points)).collect()
}
