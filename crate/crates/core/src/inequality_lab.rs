//! The inequality catalog as checkable predicates, and grid sweeps that
//! report signed margins.
//!
//! A margin is `rhs - lhs` computed from [`ic_auto`] values: nonnegative
//! means the inequality holds at that point. Two-sided entries report the
//! smaller of their lower and upper margins. Margins are floating-point
//! evidence, not proofs.

use std::cmp::Ordering;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::coincidence::ic_auto;
use crate::error::{Error, Result};
use crate::grid::{domain_grid, Interval};
use crate::numeric::as_whole;
use crate::pmf::{Family, FamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatementKind {
    RatioBound,
    Convexity,
    Monotonicity,
    TwoSided,
}

impl StatementKind {
    pub fn name(self) -> &'static str {
        match self {
            StatementKind::RatioBound => "ratio_bound",
            StatementKind::Convexity => "convexity",
            StatementKind::Monotonicity => "monotonicity",
            StatementKind::TwoSided => "two_sided",
        }
    }
}

/// Coefficient as a function of the order and the point.
type Coef = fn(f64, f64) -> f64;

#[derive(Debug, Clone, Copy)]
enum Rule {
    /// `X_{n+lhs}(x) <= coef(n, x) X_{n+rhs}(x)`
    Ratio { lhs: i64, rhs: i64, coef: Coef },
    /// `X_{n+1} <= X_n`
    Decreasing,
    /// `2 X_n <= X_{n-1} + X_{n+1}`
    Convex,
    /// `lo(n, x) X_n <= X_{n+1} <= hi(n, x) X_n`
    Sandwich { lo: Coef, hi: Coef },
    /// `S_{n-c,c} >= (1 + 2cx(1 + cx)) S_{n,c}` for `c < 0`, reversed for `c > 0`.
    ShiftByC,
}

#[derive(Debug, Clone)]
pub struct InequalityDescriptor {
    pub id: &'static str,
    pub families: &'static [Family],
    /// Smallest admissible order; for `INEQ-4.1` see [`InequalityDescriptor::admits`].
    pub min_order: u64,
    /// For `INEQ-4.1` this is intersected with the domain of the chosen `c`.
    pub x_domain: Interval,
    pub statement_kind: StatementKind,
    pub statement: &'static str,
    /// Values of `c` swept by [`verify_grid`]; empty for fixed families.
    pub c_values: &'static [f64],
    rule: Rule,
}

/// `c` values exercised for the general-family entry.
pub const GENERAL_C_VALUES: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];

fn w_bin(x: f64) -> f64 {
    x * (1.0 - x)
}

fn w_nb(x: f64) -> f64 {
    x * (1.0 + x)
}

fn bin_31(n: f64, x: f64) -> f64 {
    let w = w_bin(x);
    (1.0 + (4.0 * n - 2.0) * w) / (1.0 + (4.0 * n + 2.0) * w)
}

fn bin_32(n: f64, x: f64) -> f64 {
    let w = w_bin(x);
    (1.0 + 4.0 * n * w) / (1.0 + (4.0 * n + 2.0) * w)
}

fn nb_310(n: f64, x: f64) -> f64 {
    let v = w_nb(x);
    (1.0 + (4.0 * n - 2.0) * v) / (1.0 + (4.0 * n + 2.0) * v)
}

fn nb_311(n: f64, x: f64) -> f64 {
    let v = w_nb(x);
    (1.0 + 4.0 * n * v) / (1.0 + (4.0 * n + 2.0) * v)
}

fn quad_37(n: f64, x: f64) -> f64 {
    (1.0 + 4.0 * n * x + x * x) / (1.0 + (4.0 * n + 4.0) * x + x * x)
}

fn quad_38(n: f64, x: f64) -> f64 {
    (1.0 + (4.0 * n + 2.0) * x + x * x) / (1.0 + (4.0 * n + 4.0) * x + x * x)
}

fn bin_lo(_: f64, x: f64) -> f64 {
    1.0 - 2.0 * w_bin(x)
}

fn bin_hi(n: f64, x: f64) -> f64 {
    let w = w_bin(x);
    (1.0 + (4.0 * n + 4.0) * w) / (1.0 + (4.0 * n + 6.0) * w)
}

fn nb_lo(_: f64, x: f64) -> f64 {
    1.0 / (1.0 + 2.0 * w_nb(x))
}

fn nb_hi(n: f64, x: f64) -> f64 {
    let v = w_nb(x);
    (1.0 + (4.0 * n + 4.0) * v) / (1.0 + (4.0 * n + 6.0) * v)
}

fn u_lo(_: f64, x: f64) -> f64 {
    (1.0 + x * x) / ((1.0 + x) * (1.0 + x))
}

fn u_hi(n: f64, x: f64) -> f64 {
    (1.0 + (4.0 * n + 6.0) * x + x * x) / (1.0 + (4.0 * n + 8.0) * x + x * x)
}

/// `1 + 2cx(1 + cx)`.
pub fn shift_coefficient(c: f64, x: f64) -> f64 {
    1.0 + 2.0 * c * x * (1.0 + c * x)
}

const UNIT: Interval = Interval::closed(0.0, 1.0);
const HALF_LINE: Interval = Interval::half_line();
const UNIT_OPEN: Interval = Interval::closed_open(0.0, 1.0);

const BIN: &[Family] = &[Family::Binomial];
const NB: &[Family] = &[Family::NegBinomial];
const BBH: &[Family] = &[Family::Bbh];
const MKZ: &[Family] = &[Family::Mkz];
const GEN: &[Family] = &[Family::GeneralC];

fn build_catalog() -> Vec<InequalityDescriptor> {
    use StatementKind::*;
    let d = |id, families, min_order, x_domain, statement_kind, statement, rule| InequalityDescriptor {
        id,
        families,
        min_order,
        x_domain,
        statement_kind,
        statement,
        c_values: &[],
        rule,
    };
    vec![
        d("INEQ-3.1", BIN, 1, UNIT, RatioBound,
          "F_{n+1} <= (1+(4n-2)x(1-x))/(1+(4n+2)x(1-x)) F_{n-1}",
          Rule::Ratio { lhs: 1, rhs: -1, coef: bin_31 }),
        d("INEQ-3.2", BIN, 1, UNIT, RatioBound,
          "F_n <= (1+4nx(1-x))/(1+(4n+2)x(1-x)) F_{n-1}",
          Rule::Ratio { lhs: 0, rhs: -1, coef: bin_32 }),
        d("INEQ-3.3", BIN, 0, UNIT, Monotonicity, "F_{n+1} <= F_n", Rule::Decreasing),
        d("INEQ-3.4", BIN, 1, UNIT, Convexity, "2F_n <= F_{n-1} + F_{n+1}", Rule::Convex),
        d("INEQ-3.6", BBH, 1, HALF_LINE, Convexity, "2U_n <= U_{n-1} + U_{n+1}", Rule::Convex),
        d("INEQ-3.7", BBH, 1, HALF_LINE, RatioBound,
          "U_{n+1} <= (1+4nx+x^2)/(1+(4n+4)x+x^2) U_{n-1}",
          Rule::Ratio { lhs: 1, rhs: -1, coef: quad_37 }),
        d("INEQ-3.8", BBH, 1, HALF_LINE, RatioBound,
          "U_n <= (1+(4n+2)x+x^2)/(1+(4n+4)x+x^2) U_{n-1}",
          Rule::Ratio { lhs: 0, rhs: -1, coef: quad_38 }),
        d("INEQ-3.9", NB, 2, HALF_LINE, Convexity, "2G_n <= G_{n-1} + G_{n+1}", Rule::Convex),
        d("INEQ-3.10", NB, 2, HALF_LINE, RatioBound,
          "G_{n+1} <= (1+(4n-2)x(1+x))/(1+(4n+2)x(1+x)) G_{n-1}",
          Rule::Ratio { lhs: 1, rhs: -1, coef: nb_310 }),
        d("INEQ-3.11", NB, 2, HALF_LINE, RatioBound,
          "G_n <= (1+4nx(1+x))/(1+(4n+2)x(1+x)) G_{n-1}",
          Rule::Ratio { lhs: 0, rhs: -1, coef: nb_311 }),
        d("INEQ-3.12", MKZ, 1, UNIT_OPEN, Convexity, "2J_n <= J_{n-1} + J_{n+1}", Rule::Convex),
        d("INEQ-3.13", MKZ, 1, UNIT_OPEN, RatioBound,
          "J_{n+1} <= (1+4nx+x^2)/(1+(4n+4)x+x^2) J_{n-1}",
          Rule::Ratio { lhs: 1, rhs: -1, coef: quad_37 }),
        d("INEQ-3.14", MKZ, 1, UNIT_OPEN, RatioBound,
          "J_n <= (1+(4n+2)x+x^2)/(1+(4n+4)x+x^2) J_{n-1}",
          Rule::Ratio { lhs: 0, rhs: -1, coef: quad_38 }),
        InequalityDescriptor {
            c_values: &GENERAL_C_VALUES,
            ..d("INEQ-4.1", GEN, 1, HALF_LINE, RatioBound,
                "S_{n-c,c} >= (1+2cx(1+cx)) S_{n,c} for c < 0, reversed for c > 0",
                Rule::ShiftByC)
        },
        d("INEQ-4.2F", BIN, 1, UNIT, TwoSided,
          "(1-2x(1-x)) F_n <= F_{n+1} <= (1+(4n+4)x(1-x))/(1+(4n+6)x(1-x)) F_n",
          Rule::Sandwich { lo: bin_lo, hi: bin_hi }),
        d("INEQ-4.2G", NB, 1, HALF_LINE, TwoSided,
          "G_n/(1+2x(1+x)) <= G_{n+1} <= (1+(4n+4)x(1+x))/(1+(4n+6)x(1+x)) G_n",
          Rule::Sandwich { lo: nb_lo, hi: nb_hi }),
        d("INEQ-4.3U", BBH, 0, HALF_LINE, TwoSided,
          "(1+x^2)/(1+x)^2 U_n <= U_{n+1} <= (1+(4n+6)x+x^2)/(1+(4n+8)x+x^2) U_n",
          Rule::Sandwich { lo: u_lo, hi: u_hi }),
        d("INEQ-4.4J", MKZ, 0, UNIT_OPEN, TwoSided,
          "(1+x^2)/(1+x)^2 J_n <= J_{n+1} <= (1+(4n+6)x+x^2)/(1+(4n+8)x+x^2) J_n",
          Rule::Sandwich { lo: u_lo, hi: u_hi }),
    ]
}

/// The complete catalog, in a fixed order.
pub fn catalog() -> &'static [InequalityDescriptor] {
    static CATALOG: OnceLock<Vec<InequalityDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn descriptor(id: &str) -> Result<&'static InequalityDescriptor> {
    catalog()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// A point of an inequality's validity region. `c` is required for
/// `INEQ-4.1` and rejected elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityPoint {
    pub n: u64,
    pub x: f64,
    pub c: Option<f64>,
}

impl InequalityPoint {
    pub fn new(n: u64, x: f64) -> Self {
        InequalityPoint { n, x, c: None }
    }

    pub fn with_c(n: u64, x: f64, c: f64) -> Self {
        InequalityPoint { n, x, c: Some(c) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margin {
    /// `rhs - lhs`; the smaller side for two-sided entries.
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl Margin {
    fn single(value: f64) -> Self {
        Margin {
            value,
            lower: None,
            upper: None,
        }
    }
}

fn named(family: Family, n: u64) -> Result<FamilySpec> {
    match family {
        Family::Binomial => Ok(FamilySpec::binomial(n)),
        Family::NegBinomial => FamilySpec::neg_binomial(n as f64),
        Family::Bbh => Ok(FamilySpec::bbh(n)),
        Family::Mkz => Ok(FamilySpec::mkz(n)),
        other => Err(Error::unsupported(format!("no fixed-order index for {other}"))),
    }
}

impl InequalityDescriptor {
    /// Whether `(n, c)` lies in the order range of this entry.
    pub fn admits(&self, n: u64, c: Option<f64>) -> bool {
        match (self.rule, c) {
            (Rule::ShiftByC, Some(c)) if c < 0.0 => {
                n >= 1 && as_whole(n as f64 / -c).is_some_and(|l| l >= 1)
            }
            (Rule::ShiftByC, Some(c)) if c > 0.0 => n >= 1 && n as f64 >= 2.0 * c,
            (Rule::ShiftByC, _) => false,
            (_, None) => n >= self.min_order,
            (_, Some(_)) => false,
        }
    }

    /// The x-interval of the entry for the given `c`.
    pub fn domain_for(&self, c: Option<f64>) -> Interval {
        match (self.rule, c) {
            (Rule::ShiftByC, Some(c)) if c < 0.0 => Interval::closed(0.0, -1.0 / c),
            _ => self.x_domain,
        }
    }

    /// The coefficients on the bounding side at `(n, x)`: one for ratio
    /// bounds, `[lower, upper]` for two-sided entries, none otherwise.
    pub fn coefficients(&self, n: u64, x: f64, c: Option<f64>) -> Vec<f64> {
        let nf = n as f64;
        match self.rule {
            Rule::Ratio { coef, .. } => vec![coef(nf, x)],
            Rule::Sandwich { lo, hi } => vec![lo(nf, x), hi(nf, x)],
            Rule::ShiftByC => c.map(|c| vec![shift_coefficient(c, x)]).unwrap_or_default(),
            Rule::Decreasing | Rule::Convex => Vec::new(),
        }
    }

    fn check(&self, p: &InequalityPoint) -> Result<()> {
        if let (Rule::ShiftByC, Some(c)) = (self.rule, p.c) {
            if c == 0.0 || !c.is_finite() {
                return Err(Error::parameter(format!("{} needs a finite c != 0", self.id)));
            }
        }
        if !self.admits(p.n, p.c) {
            return Err(Error::parameter(format!(
                "({}, n = {}, c = {:?}) is outside the order range",
                self.id, p.n, p.c
            )));
        }
        let dom = self.domain_for(p.c);
        if !dom.contains(p.x) {
            return Err(Error::domain(p.x, dom));
        }
        Ok(())
    }

    pub fn evaluate(&self, p: &InequalityPoint) -> Result<Margin> {
        self.check(p)?;
        let (n, x) = (p.n, p.x);
        let nf = n as f64;
        let family = self.families[0];
        let s = |k: u64| -> Result<f64> { Ok(ic_auto(&named(family, k)?, x)?.value) };
        let shifted = |k: i64| s((n as i64 + k) as u64);
        let margin = match self.rule {
            Rule::Ratio { lhs, rhs, coef } => Margin::single(coef(nf, x) * shifted(rhs)? - shifted(lhs)?),
            Rule::Decreasing => Margin::single(s(n)? - s(n + 1)?),
            Rule::Convex => Margin::single(s(n - 1)? + s(n + 1)? - 2.0 * s(n)?),
            Rule::Sandwich { lo, hi } => {
                let (cur, next) = (s(n)?, s(n + 1)?);
                let lower = next - lo(nf, x) * cur;
                let upper = hi(nf, x) * cur - next;
                Margin {
                    value: lower.min(upper),
                    lower: Some(lower),
                    upper: Some(upper),
                }
            }
            Rule::ShiftByC => {
                let c = p.c.unwrap_or_default();
                let base = ic_auto(&FamilySpec::general(c, nf)?, x)?.value;
                let moved = ic_auto(&FamilySpec::general(c, nf - c)?, x)?.value;
                let bound = shift_coefficient(c, x) * base;
                Margin::single(if c < 0.0 { moved - bound } else { bound - moved })
            }
        };
        Ok(margin)
    }
}

pub fn evaluate_inequality(id: &str, point: &InequalityPoint) -> Result<Margin> {
    descriptor(id)?.evaluate(point)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMargin {
    pub n: u64,
    pub c: Option<f64>,
    pub x: f64,
    pub margin: f64,
}

impl PointMargin {
    fn order_key(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.c.unwrap_or(0.0).total_cmp(&other.c.unwrap_or(0.0)))
            .then_with(|| self.x.total_cmp(&other.x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridDescription {
    pub n_max: u64,
    pub x_points: usize,
    pub c_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    pub grid: GridDescription,
    /// Sorted by `(n, c, x)`.
    pub points: Vec<PointMargin>,
    pub min_margin: f64,
    pub violations: Vec<PointMargin>,
    pub tolerance: f64,
}

impl InequalityDescriptor {
    fn grid_points(&self, n_max: u64, x_points: usize) -> Vec<InequalityPoint> {
        let cs: Vec<Option<f64>> = if self.c_values.is_empty() {
            vec![None]
        } else {
            self.c_values.iter().copied().map(Some).collect()
        };
        let mut out = Vec::new();
        for c in cs {
            let xs = domain_grid(&self.domain_for(c), x_points);
            for n in 0..=n_max {
                if self.admits(n, c) {
                    out.extend(xs.iter().map(|&x| InequalityPoint { n, x, c }));
                }
            }
        }
        out
    }
}

/// Resolves `ids` against the catalog, in catalog order without duplicates.
pub fn select(ids: &[&str]) -> Result<Vec<&'static InequalityDescriptor>> {
    for id in ids {
        descriptor(id)?;
    }
    Ok(catalog().iter().filter(|d| ids.contains(&d.id)).collect())
}

/// Sweeps each entry over its admissible orders `n <= n_max` and an
/// equispaced grid of `x_points` points on its domain (closed endpoints
/// included, open ones approached to half a step). Points are evaluated in
/// parallel and reported in sorted order.
pub fn verify_grid(ids: &[&str], n_max: u64, x_points: usize, tolerance: f64) -> Result<Vec<VerificationReport>> {
    if n_max < 2 {
        return Err(Error::parameter(format!("n_max must be at least 2, got {n_max}")));
    }
    if x_points < 2 {
        return Err(Error::parameter(format!("x_points must be at least 2, got {x_points}")));
    }
    if !(tolerance > 0.0) {
        return Err(Error::parameter(format!("tolerance must be positive, got {tolerance}")));
    }
    select(ids)?
        .into_iter()
        .map(|d| {
            let mut points = d
                .grid_points(n_max, x_points)
                .into_par_iter()
                .map(|p| {
                    d.evaluate(&p).map(|m| PointMargin {
                        n: p.n,
                        c: p.c,
                        x: p.x,
                        margin: m.value,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            points.sort_by(PointMargin::order_key);
            let min_margin = points.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
            let violations = points.iter().copied().filter(|p| p.margin < -tolerance).collect();
            Ok(VerificationReport {
                id: d.id.to_string(),
                grid: GridDescription {
                    n_max,
                    x_points,
                    c_values: d.c_values.to_vec(),
                },
                points,
                min_margin,
                violations,
                tolerance,
            })
        })
        .collect()
}

/// All catalog ids, in catalog order.
pub fn all_ids() -> Vec<&'static str> {
    catalog().iter().map(|d| d.id).collect()
}
