//! Basis probabilities of the distribution families and truncated pmf rows.
//!
//! For a real order `n` and family parameter `c` the basis probability is
//!
//! ```text
//! p_{n,k}(x) = (-1)^k C(-n/c, k) (c x)^k (1 + c x)^(-n/c - k)     c != 0
//! p_{n,k}(x) = (n x)^k / k! e^(-n x)                              c == 0
//! ```
//!
//! with `c = -1, 0, 1` giving the binomial, Poisson and negative binomial
//! laws. Two further families are attached: `C(n,k) x^k (1+x)^(-n)` on
//! `[0, inf)` and `C(n+k,k) x^k (1-x)^(n+1)` on `[0, 1)`.
//!
//! Single probabilities use the saddle-point (Stirling error plus deviance)
//! form of the log-density, exponentiated once, which stays accurate to a
//! few ulps for orders in the thousands. Rows are produced from the mode
//! outwards by the exact term ratio, re-anchored on a fresh density every
//! 64 terms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::numeric::{as_whole, binomial_density, neg_binomial_density, poisson_density};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Binomial,
    Poisson,
    NegBinomial,
    /// `C(n,k) x^k (1+x)^(-n)`, Bleimann-Butzer-Hahn.
    Bbh,
    /// `C(n+k,k) x^k (1-x)^(n+1)`, Meyer-Koenig-Zeller.
    Mkz,
    GeneralC,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Binomial,
        Family::Poisson,
        Family::NegBinomial,
        Family::Bbh,
        Family::Mkz,
        Family::GeneralC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Binomial => "binomial",
            Family::Poisson => "poisson",
            Family::NegBinomial => "negbinomial",
            Family::Bbh => "bbh",
            Family::Mkz => "mkz",
            Family::GeneralC => "general",
        }
    }

    /// Conventional letter of the index of coincidence of the family.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Binomial => "F",
            Family::Poisson => "K",
            Family::NegBinomial => "G",
            Family::Bbh => "U",
            Family::Mkz => "J",
            Family::GeneralC => "S",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::parameter(format!("unknown family `{s}`")))
    }
}

/// One distribution family together with its order and admissibility data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    family: Family,
    n: f64,
    c: Option<f64>,
    /// Integer `l` with `n = -c l` when `c < 0`.
    l: Option<u64>,
}

impl FamilySpec {
    pub fn binomial(n: u64) -> Self {
        FamilySpec {
            family: Family::Binomial,
            n: n as f64,
            c: Some(-1.0),
            l: Some(n),
        }
    }

    pub fn poisson(n: f64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::parameter(format!("Poisson order must be positive, got {n}")));
        }
        Ok(FamilySpec {
            family: Family::Poisson,
            n,
            c: Some(0.0),
            l: None,
        })
    }

    pub fn neg_binomial(n: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::parameter(format!(
                "negative binomial order must satisfy n >= c = 1, got {n}"
            )));
        }
        Ok(FamilySpec {
            family: Family::NegBinomial,
            n,
            c: Some(1.0),
            l: None,
        })
    }

    pub fn bbh(n: u64) -> Self {
        FamilySpec {
            family: Family::Bbh,
            n: n as f64,
            c: None,
            l: None,
        }
    }

    pub fn mkz(n: u64) -> Self {
        FamilySpec {
            family: Family::Mkz,
            n: n as f64,
            c: None,
            l: None,
        }
    }

    /// General family parameter `c`. Requires `n = -c l` with `l` a positive
    /// integer when `c < 0`, `n > 0` when `c = 0` and `n >= c` when `c > 0`.
    pub fn general(c: f64, n: f64) -> Result<Self> {
        if !c.is_finite() || !n.is_finite() {
            return Err(Error::parameter("c and n must be finite"));
        }
        if n <= 0.0 {
            return Err(Error::parameter(format!("order must be positive, got n = {n}")));
        }
        let l = if c < 0.0 {
            match as_whole(n / -c) {
                Some(l) if l >= 1 => Some(l),
                _ => {
                    return Err(Error::parameter(format!(
                        "for c < 0 the order must be n = -c l with integer l >= 1; n/(-c) = {}",
                        n / -c
                    )))
                }
            }
        } else {
            if c > 0.0 && n < c {
                return Err(Error::parameter(format!("for c > 0 the order must satisfy n >= c, got n = {n}, c = {c}")));
            }
            None
        };
        Ok(FamilySpec {
            family: Family::GeneralC,
            n,
            c: Some(c),
            l,
        })
    }

    /// Builds a spec from loosely typed inputs (CLI flags).
    pub fn new(family: Family, n: f64, c: Option<f64>) -> Result<Self> {
        let whole = |what: &str| {
            as_whole(n).ok_or_else(|| {
                Error::parameter(format!("{what} order must be a non-negative integer, got {n}"))
            })
        };
        if family != Family::GeneralC && c.is_some() {
            return Err(Error::parameter("--c is only accepted for the general family"));
        }
        match family {
            Family::Binomial => Ok(FamilySpec::binomial(whole("binomial")?)),
            Family::Poisson => FamilySpec::poisson(n),
            Family::NegBinomial => FamilySpec::neg_binomial(n),
            Family::Bbh => Ok(FamilySpec::bbh(whole("bbh")?)),
            Family::Mkz => Ok(FamilySpec::mkz(whole("mkz")?)),
            Family::GeneralC => {
                let c = c.ok_or_else(|| Error::parameter("the general family needs --c"))?;
                FamilySpec::general(c, n)
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> f64 {
        self.n
    }

    /// The family parameter `c`; absent for the two attached families.
    pub fn c(&self) -> Option<f64> {
        self.c
    }

    pub fn l(&self) -> Option<u64> {
        self.l
    }

    /// Integer order when one exists: `n` for the named families, the
    /// canonical order (`l` or `n / c`) for the general family.
    pub fn integer_order(&self) -> Option<u64> {
        match self.family {
            Family::Binomial | Family::Bbh | Family::Mkz => Some(self.n as u64),
            Family::NegBinomial | Family::Poisson => as_whole(self.n),
            Family::GeneralC => {
                let c = self.c.unwrap_or(0.0);
                if c < 0.0 {
                    self.l
                } else if c > 0.0 {
                    as_whole(self.n / c)
                } else {
                    as_whole(self.n)
                }
            }
        }
    }

    pub fn domain(&self) -> Interval {
        match self.family {
            Family::Binomial => Interval::closed(0.0, 1.0),
            Family::Poisson | Family::NegBinomial | Family::Bbh => Interval::half_line(),
            Family::Mkz => Interval::closed_open(0.0, 1.0),
            Family::GeneralC => {
                let c = self.c.unwrap_or(0.0);
                if c < 0.0 {
                    Interval::closed(0.0, -1.0 / c)
                } else {
                    Interval::half_line()
                }
            }
        }
    }

    pub fn check_x(&self, x: f64) -> Result<()> {
        let d = self.domain();
        if d.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(x, d))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.c) {
            (Family::GeneralC, Some(c)) => write!(f, "general(c={c}, n={})", self.n),
            _ => write!(f, "{}(n={})", self.family, self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(Error::parameter("truncation policy needs rel_tol > 0 and max_terms >= 1"));
        }
        Ok(TruncationPolicy { rel_tol, max_terms })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            rel_tol: 1e-14,
            max_terms: 100_000,
        }
    }
}

/// `alpha (alpha - 1) ... (alpha - k + 1) / k!`.
pub fn general_binomial_coefficient(alpha: f64, k: u64) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (alpha - j as f64) / (j + 1) as f64;
    }
    acc
}

/// A family fixed at one evaluation point.
#[derive(Debug, Clone, Copy)]
enum Law {
    Binomial { l: u64, y: f64 },
    Poisson { lambda: f64 },
    NegBinomial { a: f64, y: f64 },
    Bbh { n: u64, x: f64 },
    Mkz { n: u64, x: f64 },
    General { c: f64, n: f64, l: Option<u64>, x: f64 },
}

impl Law {
    fn at(family: &FamilySpec, x: f64) -> Result<Law> {
        family.check_x(x)?;
        let n = family.order();
        Ok(match family.family() {
            Family::Binomial => Law::Binomial { l: n as u64, y: x },
            Family::Poisson => Law::Poisson { lambda: n * x },
            Family::NegBinomial => Law::NegBinomial { a: n, y: x },
            Family::Bbh => Law::Bbh { n: n as u64, x },
            Family::Mkz => Law::Mkz { n: n as u64, x },
            Family::GeneralC => {
                let c = family.c().unwrap_or(0.0);
                if c == 0.0 {
                    Law::Poisson { lambda: n * x }
                } else {
                    Law::General { c, n, l: family.l(), x }
                }
            }
        })
    }

    /// Index carrying all the mass, for degenerate points.
    fn point_mass(&self) -> Option<u64> {
        match *self {
            Law::Binomial { y, .. } | Law::NegBinomial { y, .. } if y == 0.0 => Some(0),
            Law::Binomial { l, y } if y == 1.0 => Some(l),
            Law::Poisson { lambda } if lambda == 0.0 => Some(0),
            Law::Bbh { n, x } if x == 0.0 || n == 0 => Some(0),
            Law::Mkz { x, .. } if x == 0.0 => Some(0),
            Law::General { x, .. } if x == 0.0 => Some(0),
            Law::General { c, l: Some(l), x, .. } if 1.0 + c * x == 0.0 => Some(l),
            _ => None,
        }
    }

    /// Last index with non-zero mass for the finite families.
    fn last(&self) -> Option<u64> {
        match *self {
            Law::Binomial { l, .. } => Some(l),
            Law::Bbh { n, .. } => Some(n),
            Law::General { c, l, .. } if c < 0.0 => l,
            _ => None,
        }
    }

    /// Ratio `p_{k+1} / p_k` written as `(alpha + beta k) q / (k + 1)`.
    fn ratio_parts(&self) -> (f64, f64, f64) {
        match *self {
            Law::Binomial { l, y } => (l as f64, -1.0, y / (1.0 - y)),
            Law::Poisson { lambda } => (lambda, 0.0, 1.0),
            Law::NegBinomial { a, y } => (a, 1.0, y / (1.0 + y)),
            Law::Bbh { n, x } => (n as f64, -1.0, x),
            Law::Mkz { n, x } => ((n + 1) as f64, 1.0, x),
            Law::General { c, n, x, .. } => (n / c, 1.0, c * x / (1.0 + c * x)),
        }
    }

    /// `p_k` from the saddle-point form of the density, which keeps full
    /// relative accuracy at large orders.
    fn density(&self, k: u64) -> f64 {
        let kf = k as f64;
        match *self {
            Law::Binomial { l, y } => binomial_density(kf, l as f64, y, 1.0 - y),
            Law::Poisson { lambda } => poisson_density(kf, lambda),
            Law::NegBinomial { a, y } => neg_binomial_density(kf, a, 1.0 / (1.0 + y), y / (1.0 + y)),
            Law::Bbh { n, x } => binomial_density(kf, n as f64, x / (1.0 + x), 1.0 / (1.0 + x)),
            Law::Mkz { n, x } => neg_binomial_density(kf, (n + 1) as f64, 1.0 - x, x),
            Law::General { c, n, l, x } => {
                let cx = c * x;
                if c < 0.0 {
                    binomial_density(kf, l.unwrap_or(0) as f64, -cx, 1.0 + cx)
                } else {
                    neg_binomial_density(kf, n / c, 1.0 / (1.0 + cx), cx / (1.0 + cx))
                }
            }
        }
    }

    fn mode(&self) -> u64 {
        let (alpha, beta, q) = self.ratio_parts();
        // ratio(k) <= 1  <=>  k (1 - beta q) >= alpha q - 1
        let k = ((alpha * q - 1.0) / (1.0 - beta * q)).ceil().max(0.0);
        let k = if k.is_finite() { k as u64 } else { 0 };
        match self.last() {
            Some(last) => k.min(last),
            None => k,
        }
    }
}

/// Basis probability `p_{n,k}(x)` evaluated in log space.
pub fn basis_probability(family: &FamilySpec, k: u64, x: f64) -> Result<f64> {
    let law = Law::at(family, x)?;
    if let Some(m) = law.point_mass() {
        return Ok(if k == m { 1.0 } else { 0.0 });
    }
    Ok(law.density(k).min(1.0))
}

/// Truncated pmf row `p_0, p_1, ...` with an upper bound on the omitted mass.
#[derive(Debug, Clone, PartialEq)]
pub struct PmfRow {
    pub probabilities: Vec<f64>,
    pub tail_bound: f64,
}

impl PmfRow {
    pub fn mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

const REANCHOR: u64 = 64;

pub fn pmf_row(family: &FamilySpec, x: f64, policy: &TruncationPolicy) -> Result<PmfRow> {
    let law = Law::at(family, x)?;
    if let Some(m) = law.point_mass() {
        let mut probabilities = vec![0.0; m as usize + 1];
        probabilities[m as usize] = 1.0;
        return Ok(PmfRow {
            probabilities,
            tail_bound: 0.0,
        });
    }
    let (alpha, beta, q) = law.ratio_parts();
    let ratio = |k: u64| (alpha + beta * k as f64) * q / (k + 1) as f64;

    let mode = law.mode();
    let last = law.last();
    if mode as usize >= policy.max_terms {
        return Err(Error::Truncation {
            terms: policy.max_terms,
            tail: 1.0,
        });
    }

    // every REANCHOR steps the ratio chain restarts from a fresh density
    let fresh = |k: u64| (mode.abs_diff(k)) % REANCHOR == 0;
    let mut probabilities = vec![0.0; mode as usize + 1];
    probabilities[mode as usize] = law.density(mode);
    for k in (1..=mode).rev() {
        let j = k - 1;
        probabilities[j as usize] = if fresh(j) {
            law.density(j)
        } else {
            probabilities[k as usize] / ratio(j)
        };
    }
    let mut mass: f64 = probabilities.iter().sum();

    let mut k = mode;
    loop {
        if last == Some(k) {
            return Ok(PmfRow {
                probabilities,
                tail_bound: 0.0,
            });
        }
        let prev = probabilities[k as usize];
        let next = if fresh(k + 1) { law.density(k + 1) } else { prev * ratio(k) };
        k += 1;
        probabilities.push(next);
        mass += next;
        if last.is_some() {
            continue;
        }
        // ratios are non-increasing past the mode, so the observed ratio
        // bounds every later one
        let r = if prev > 0.0 { next / prev } else { 0.0 };
        if r < 1.0 {
            let tail = if next > 0.0 { next * r / (1.0 - r) } else { 0.0 };
            if tail <= policy.rel_tol * mass {
                return Ok(PmfRow {
                    probabilities,
                    tail_bound: tail,
                });
            }
            if probabilities.len() >= policy.max_terms {
                return Err(Error::Truncation {
                    terms: probabilities.len(),
                    tail,
                });
            }
        } else if probabilities.len() >= policy.max_terms {
            return Err(Error::Truncation {
                terms: probabilities.len(),
                tail: f64::INFINITY,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomial_coefficients() {
        assert_eq!(general_binomial_coefficient(5.0, 2), 10.0);
        assert_eq!(general_binomial_coefficient(-3.7, 0), 1.0);
        assert_eq!(general_binomial_coefficient(-0.5, 2), 0.375);
    }

    #[test]
    fn binomial_basis_value() {
        let f = FamilySpec::binomial(2);
        assert!((basis_probability(&f, 1, 0.25).unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn zero_point_is_degenerate_for_every_family() {
        let specs = [
            FamilySpec::binomial(3),
            FamilySpec::poisson(2.0).unwrap(),
            FamilySpec::neg_binomial(1.5).unwrap(),
            FamilySpec::bbh(4),
            FamilySpec::mkz(0),
            FamilySpec::general(-2.0, 4.0).unwrap(),
            FamilySpec::general(0.5, 0.75).unwrap(),
        ];
        for f in specs {
            assert_eq!(basis_probability(&f, 0, 0.0).unwrap(), 1.0, "{f}");
            let row = pmf_row(&f, 0.0, &TruncationPolicy::default()).unwrap();
            assert_eq!(row.probabilities, vec![1.0], "{f}");
            assert_eq!(row.tail_bound, 0.0);
        }
    }

    #[test]
    fn binomial_row_is_exact() {
        let row = pmf_row(&FamilySpec::binomial(2), 0.25, &TruncationPolicy::default()).unwrap();
        assert_eq!(row.probabilities, vec![0.5625, 0.375, 0.0625]);
        assert_eq!(row.tail_bound, 0.0);
        let row = pmf_row(&FamilySpec::binomial(5), 1.0, &TruncationPolicy::default()).unwrap();
        assert_eq!(row.probabilities, vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn poisson_at_zero() {
        let row = pmf_row(&FamilySpec::poisson(1.0).unwrap(), 0.0, &TruncationPolicy::default()).unwrap();
        assert_eq!(row.probabilities, vec![1.0]);
        assert_eq!(row.tail_bound, 0.0);
    }

    #[test]
    fn geometric_row() {
        let policy = TruncationPolicy::new(1e-12, 10_000).unwrap();
        let row = pmf_row(&FamilySpec::neg_binomial(1.0).unwrap(), 1.0, &policy).unwrap();
        for (k, p) in row.probabilities.iter().enumerate() {
            let expected = 0.5f64.powi(k as i32 + 1);
            assert!((p - expected).abs() <= 1e-15 * expected, "k={k}");
        }
        assert!((row.mass() + row.tail_bound - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn parameter_rules() {
        assert!(FamilySpec::general(-2.0, 3.0).is_err());
        assert_eq!(FamilySpec::general(-2.0, 4.0).unwrap().l(), Some(2));
        assert_eq!(FamilySpec::general(-0.5, 1.5).unwrap().l(), Some(3));
        assert!(FamilySpec::general(2.0, 1.0).is_err());
        assert!(FamilySpec::general(2.0, 2.0).is_ok());
        assert!(FamilySpec::general(0.0, 0.0).is_err());
        assert!(FamilySpec::neg_binomial(0.5).is_err());
        assert!(FamilySpec::poisson(-1.0).is_err());
        assert!(FamilySpec::new(Family::Binomial, 2.5, None).is_err());
        assert!(FamilySpec::new(Family::Binomial, 2.0, Some(1.0)).is_err());
    }

    #[test]
    fn domain_errors() {
        let f = FamilySpec::binomial(3);
        assert!(matches!(basis_probability(&f, 0, 1.5), Err(Error::Domain { .. })));
        let j = FamilySpec::mkz(2);
        assert!(matches!(pmf_row(&j, 1.0, &TruncationPolicy::default()), Err(Error::Domain { .. })));
        let g = FamilySpec::general(-4.0, 8.0).unwrap();
        assert!(g.check_x(0.25).is_ok());
        assert!(g.check_x(0.3).is_err());
    }

    #[test]
    fn truncation_failure_when_budget_too_small() {
        let policy = TruncationPolicy::new(1e-14, 5).unwrap();
        let r = pmf_row(&FamilySpec::mkz(3), 0.9, &policy);
        assert!(matches!(r, Err(Error::Truncation { .. })));
    }

    #[test]
    fn large_orders_do_not_overflow() {
        let f = FamilySpec::binomial(600);
        let row = pmf_row(&f, 0.3, &TruncationPolicy::default()).unwrap();
        assert_eq!(row.probabilities.len(), 601);
        assert!((row.mass() - 1.0).abs() < 1e-12);
        let p = FamilySpec::poisson(400.0).unwrap();
        let row = pmf_row(&p, 2.0, &TruncationPolicy::default()).unwrap();
        assert!((row.mass() + row.tail_bound - 1.0).abs() < 1e-12);
    }
}
