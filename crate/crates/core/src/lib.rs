pub mod cli;
pub mod coincidence;
pub mod entropy;
pub mod error;
pub mod grid;
pub mod identities;
pub mod inequality_lab;
pub mod legendre;
pub mod numeric;
pub mod pmf;

pub use coincidence::{evaluate, ic_auto, CoincidenceValue, EvalRequest, Method};
pub use error::{Error, Result};
pub use pmf::{basis_probability, pmf_row, Family, FamilySpec, PmfRow, TruncationPolicy};
