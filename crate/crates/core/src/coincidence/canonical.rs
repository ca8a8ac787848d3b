use crate::error::Result;
use crate::pmf::FamilySpec;

/// Reduction of a general family parameter to the binomial, negative
/// binomial or Poisson law at a rescaled point.
///
/// The pmf only depends on `c x` and `n / c`, so
/// `S_{n,c}(x) = F_l(-c x)` for `c < 0`, `G_{n/c}(c x)` for `c > 0` and
/// `K_n(x)` for `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalForm {
    BinomialAt { l: u64, y: f64 },
    NegBinomialAt { m: f64, y: f64 },
    PoissonAt { n: f64, x: f64 },
}

impl CanonicalForm {
    pub fn family(&self) -> Result<FamilySpec> {
        match *self {
            CanonicalForm::BinomialAt { l, .. } => Ok(FamilySpec::binomial(l)),
            CanonicalForm::NegBinomialAt { m, .. } => FamilySpec::neg_binomial(m),
            CanonicalForm::PoissonAt { n, .. } => FamilySpec::poisson(n),
        }
    }

    pub fn point(&self) -> f64 {
        match *self {
            CanonicalForm::BinomialAt { y, .. } | CanonicalForm::NegBinomialAt { y, .. } => y,
            CanonicalForm::PoissonAt { x, .. } => x,
        }
    }
}

pub fn canonicalize(c: f64, n: f64, x: f64) -> Result<CanonicalForm> {
    let spec = FamilySpec::general(c, n)?;
    spec.check_x(x)?;
    Ok(canonical_of(&spec, x))
}

/// Canonical form of an admissible general spec at an in-domain point.
pub(crate) fn canonical_of(spec: &FamilySpec, x: f64) -> CanonicalForm {
    let c = spec.c().unwrap_or(0.0);
    let n = spec.order();
    if c < 0.0 {
        CanonicalForm::BinomialAt {
            l: spec.l().unwrap_or(0),
            // x = -1/c can round to slightly above one
            y: (-c * x).min(1.0),
        }
    } else if c > 0.0 {
        CanonicalForm::NegBinomialAt { m: n / c, y: c * x }
    } else {
        CanonicalForm::PoissonAt { n, x }
    }
}
