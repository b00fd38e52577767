//! Error type shared by the algebraic operations.
//!
//! Parse errors for the input language live in [`crate::dsl`]; everything
//! here is a mathematical precondition failure.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("not a subalgebra: bracket of basis vectors {0} and {1} leaves the span")]
    NotSubalgebra(usize, usize),

    #[error("character does not vanish on [h,h]: bracket of basis vectors {i} and {j} maps to {value}")]
    CharacterNotVanishing { i: usize, j: usize, value: String },

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("subspaces do not split the algebra as a direct sum")]
    NotComplement,

    #[error("preferred completion vector at index {0} is dependent on the part already chosen")]
    DependentPreferred(usize),

    #[error("non-transverse pair: h + b does not span g (resample the linear form)")]
    NonTransverse,

    #[error("beta inverse applied to a non-reduced element (support touches the subalgebra part)")]
    NonReduced,

    #[error("polarization certificate failed: {0}")]
    PolarizationCertificate(String),

    #[error("lagrangian condition fails at the sampled profile (dim h.f, dim g.f) = ({0}, {1})")]
    NotLagrangian(usize, usize),

    #[error("differential-operator exponent needs every term of derivative order >= 1")]
    ZeroOrderExponent,

    #[error("sample count must be positive")]
    ZeroSamples,

    #[error("singular matrix where an invertible one was required")]
    Singular,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
