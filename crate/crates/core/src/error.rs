use crate::place::Place;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("scaling factor must be nonzero")]
    ZeroScalar,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("finite places above 2^63 are not supported (got {0})")]
    PlaceTooLarge(u64),
    #[error("prime factor does not fit in 64 bits")]
    FactorTooLarge,
    #[error("legendre symbol requires an odd prime modulus")]
    OddPrimeRequired,
    #[error("legendre symbol requires arguments coprime to the modulus")]
    NotCoprime,
    #[error("argument is a local square, no partner with symbol -1 exists")]
    IsSquare,
    #[error("a diagonal form needs at least one entry")]
    EmptyForm,
    #[error("deleting every index would leave an empty form")]
    EmptyResult,
    #[error("index {0} is out of range for this form")]
    InvalidIndex(usize),
    #[error("dimension too small: need at least {needed}, got {got}")]
    DimensionTooSmall { needed: usize, got: usize },
    #[error("subform dimension exceeds the ambient dimension")]
    DimensionExceeded,
    #[error("local data belongs to different places")]
    PlaceMismatch,
    #[error("first form must have strictly smaller dimension than the second")]
    DimensionOrder,
    #[error("forms must have equal dimension")]
    NotComparable,
    #[error("operation requires odd dimension")]
    EvenDimension,
    #[error("form is not admissible (signature must be (m-1,1) or (1,m-1))")]
    NotAdmissible,
    #[error("prime-set size has the wrong parity for this dimension")]
    ParityViolation,
    #[error("duplicate constraint at place {0}")]
    DuplicateConstraint(Place),
    #[error("invalid synthesis profile: {0}")]
    InvalidProfile(String),
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
