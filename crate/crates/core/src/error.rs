use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different ground fields")]
    MixedFields,
    #[error("operands belong to different extension scenarios")]
    MixedScenarios,
    #[error("division by zero")]
    DivisionByZero,
    #[error("sigma is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("sigma has no finite order below the cap {cap}")]
    InfiniteOrder { cap: usize },
    #[error("defining polynomial is reducible over Q: {0}")]
    ReduciblePolynomial(String),
    #[error("quaternion algebra is split (not a division algebra)")]
    NotDivisionAlgebra,
    #[error("element is not central")]
    NotCentral,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("series is zero")]
    ZeroSeries,
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("residual root is not simple")]
    NotSimpleRoot,
    #[error("seed is not a residual root: {0}")]
    NoResidualRoot(String),
    #[error("element is singular: the algebra is not a division ring for this scenario")]
    SingularElement,
    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),
    #[error("term is not a polynomial")]
    NotPolynomial,
    #[error("series does not lie in the invariant series field")]
    NotInvariantSeries,
    #[error("level {level} has no embedding into the next level")]
    EmbeddingMissing { level: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("scenario check `{check}` failed: {detail}")]
    ScenarioInvalid { check: &'static str, detail: String },
}
