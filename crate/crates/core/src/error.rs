use thiserror::Error;

use crate::exactla::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of differentials is not zero")]
    CompositionNotZero,
    #[error("map is not a chain map: {0}")]
    NotAChainMap(&'static str),
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("operation not defined for Laurent monomials")]
    LaurentNotSupported,
    #[error("chain degree {0} is too low for this operation")]
    DegreeTooLow(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("comparison composite is not a scalar multiple of the identity")]
    FactorNotScalar,
    #[error("invalid sheaf: {0}")]
    InvalidSpec(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Koszul coboundary does not vanish after Hom(-, A)")]
    KoszulCoboundaryNonzero,
    #[error("multidegree {0:?} beyond the enumeration bound is not exact")]
    ShellNotExact(Vec<i64>),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
