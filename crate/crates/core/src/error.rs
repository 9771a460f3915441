use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by group construction, morphism validation, and the
/// counting algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String },
    #[error("closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("unknown builtin family `{family}`")]
    UnknownFamily { family: String },
    #[error("parameter out of range for `{family}`: {detail}")]
    ParamOutOfRange { family: String, detail: String },
    #[error("not a homomorphism: image({a}*{b}) != image({a})*image({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("the supplied elements do not generate the group")]
    NotGeneratingSet,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("subgroup is not contained in the centre")]
    NotCentral,
    #[error("not a subgroup: {reason}")]
    NotSubgroup { reason: String },
    #[error("map does not leave the subgroup invariant")]
    NotInvariant,
    #[error("endomorphism is not bijective")]
    NotAutomorphism,
    #[error("endomorphism is not class-preserving")]
    NotClassPreserving,
    #[error("sum expected to be an integer was not: {detail}")]
    NonIntegerSum { detail: String },
    #[error("hypothesis violated: {which}")]
    HypothesisViolated { which: &'static str },
    #[error("enumeration exceeded the cap of {cap}")]
    EnumerationCapExceeded { cap: usize },
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("inner product is not rational")]
    NonRationalResult,
    #[error("character lifting failed: {detail}")]
    LiftingFailure { detail: String },
    #[error("no suitable prime found for the modular character computation")]
    PrimeSearchExhausted,
    #[error("internal cross-check failed: {detail}")]
    InternalMismatch { detail: String },
    #[error("pullback of row {row} does not match any table row")]
    RowMatchFailure { row: usize },
    #[error("divisor-sum condition fails at n = {n}")]
    ThetaConditionViolated { n: u64 },
    #[error("{value} is not prime")]
    NotPrime { value: u64 },
}
