//! Error type shared by every module of the crate.

use num::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // exact linear algebra
    #[error("matrix is singular")]
    SingularMatrix,

    // resolution graphs
    #[error("dual graph is not connected")]
    Disconnected,
    #[error("bad reference: {0}")]
    BadReference(String),
    #[error("det(-E) = {0}, but a plane-curve dual graph must have det(-E) = 1")]
    NotUnimodular(BigInt),
    #[error("minus the intersection matrix is not positive definite")]
    NotNegativeDefinite,
    #[error("intersection matrix is singular")]
    SingularIntersectionMatrix,

    // curve resolution
    #[error("parametrization of `{0}` is not primitive (not injective)")]
    NotPrimitive(String),
    #[error("branches `{0}` and `{1}` define the same germ or could not be separated")]
    IndistinguishableBranches(String, String),
    #[error("parametrization of `{0}` carries too few terms to finish the resolution")]
    TruncationTooShort(String),
    #[error("seed {0} lands on a special point of component {1}")]
    SeedNotGeneric(String, String),
    #[error("curvette seeds disagree: {0}")]
    SeedsDisagree(String),

    // series and factor forms
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible truncations")]
    TruncationMismatch,
    #[error("substitution sends factor {0} to the zero exponent vector")]
    DegenerateSubstitution(String),
    #[error("nontrivial character tag in an integer-coefficient expansion")]
    NontrivialCharacterTag,

    // equivariant layer
    #[error("character does not annihilate the relations of H")]
    NotWellDefined,
    #[error("exponent vector {0} is not divisible by {1}")]
    NotDivisible(String, String),

    // ideal calculus
    #[error("unknown component: {0}")]
    UnknownComponent(String),
    #[error("unknown branch: {0}")]
    UnknownBranch(String),
    #[error("curve `{0}` has exponent zero in every ideal of the set")]
    HypothesisViolated(String),

    // oracle comparison and input handling
    #[error("oracle mismatch at monomial {monomial}: engine has {engine}, oracle has {oracle}")]
    OracleMismatch {
        monomial: String,
        engine: String,
        oracle: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
