use super::{CoincidenceValue, Method};
use crate::error::Result;
use crate::numeric::NeumaierSum;
use crate::pmf::{pmf_row, FamilySpec, TruncationPolicy};

/// `sum p_k^2` over the truncated row. Since `p_k <= 1` the omitted squares
/// are bounded by the omitted mass, which becomes the error estimate.
pub fn ic_direct(family: &FamilySpec, x: f64, policy: &TruncationPolicy) -> Result<CoincidenceValue> {
    family.check_x(x)?;
    if x == 0.0 {
        return Ok(CoincidenceValue::one(Method::Direct));
    }
    let row = pmf_row(family, x, policy)?;
    let s: NeumaierSum = row.probabilities.iter().map(|p| p * p).collect();
    CoincidenceValue::new(s.value(), Method::Direct, row.tail_bound)
}
