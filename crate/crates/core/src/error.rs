use thiserror::Error;

/// Errors raised by the evaluation backends and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluation point lies outside the family's parameter domain.
    #[error("x = {x} is outside the domain {domain}")]
    Domain { x: f64, domain: String },

    /// The family parameters violate the admissibility rules.
    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// An infinite pmf row could not be truncated within the term budget.
    #[error("truncation failed after {terms} terms (remaining tail bound {tail:e})")]
    Truncation { terms: usize, tail: f64 },

    /// The requested backend does not apply to this family or order.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two independent backends disagreed beyond the consistency threshold.
    #[error("backend disagreement: {primary} = {a:e}, {check} = {b:e} (relative {rel:e})")]
    Consistency {
        primary: &'static str,
        check: &'static str,
        a: f64,
        b: f64,
        rel: f64,
    },

    /// A backend produced a value outside the range of an index of coincidence.
    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("unknown inequality id `{0}`")]
    UnknownId(String),

    /// Error attached to one point of a grid evaluation.
    #[error("grid point {index} (x = {x}): {source}")]
    AtGridPoint {
        index: usize,
        x: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(x: f64, domain: impl std::fmt::Display) -> Self {
        Error::Domain {
            x,
            domain: domain.to_string(),
        }
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// Strips any grid-point wrapper.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtGridPoint { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
