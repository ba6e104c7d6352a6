//! Symmetric pairs `(g, θ)`, the tensors `C` and `G`, and curvature of the
//! associated symmetric spaces.

mod curvature;
mod division;
mod pair;

pub use curvature::{proportionality, verify_curvature_casimir, CurvatureTensor};
pub use division::{realified, DivisionAlgebra};
pub use pair::{CgCoefficients, Involution, Representation, SplittingReport, SymmetricPair};

use thiserror::Error;

use crate::tensor::TensorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("element is not in the span of the basis")]
    NotInSpan,
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("Gram matrix of κ is singular")]
    SingularGram,
    #[error("splitting violated: {relation} at ({left}, {right})")]
    SplittingViolation { relation: String, left: usize, right: usize },
    #[error("no proportionality: {0}")]
    NoProportionality(String),
    #[error("{0}")]
    NotAvailable(String),
    #[error("inconsistent construction: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
