use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system type {family}{rank}: {reason}")]
    UnsupportedType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("coefficient vector {0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Weyl group order exceeds the configured bound of {0} elements")]
    GroupTooLarge(usize),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i32>),
    #[error("weight {got:?} has rank {} but the root system has rank {expected}", got.len())]
    RankMismatch { expected: usize, got: Vec<i32> },
    #[error("expansion too large: {0}")]
    ExpansionTooLarge(String),
    #[error("result is not integral after dividing by {0}")]
    NonIntegralResult(String),
    #[error("exact division left a nonzero remainder: {0}")]
    DivisionFailure(String),
    #[error("rational expression does not simplify to a polynomial: {0}")]
    NonPolynomial(String),
    #[error("root {0:?} is not a positive short root")]
    NotShortPositive(Vec<i32>),
    #[error("affine root chain assertion failed: {0}")]
    ChainAssertion(String),
    #[error("no closed form for this weight: {0}")]
    NoClosedForm(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
