use thiserror::Error;

use crate::induction::VerifyError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear form is zero")]
    ZeroForm,
    #[error("hyperplane {0} appears more than once")]
    DuplicateForm(String),
    #[error("{forms} forms but {mult} multiplicities")]
    MultiplicityLength { forms: usize, mult: usize },
    #[error("hyperplane index {index} out of range for {len} hyperplanes")]
    InvalidHyperplane { index: usize, len: usize },
    #[error("hyperplane {index} has multiplicity zero")]
    ZeroMultiplicity { index: usize },
    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,
    #[error("expected a rank-2 flat, found rank {rank}")]
    NotRank2Flat { rank: usize },
    #[error("distinguished hyperplane does not contain the flat")]
    HyperplaneNotInFlat,
    #[error("exponent sizes do not match: deletion has {deleted}, restriction has {restricted}")]
    SizeMismatch { deleted: usize, restricted: usize },
    #[error("no {needed} independent derivations found up to degree {cap}")]
    DegreeCapExhausted { cap: u32, needed: usize },
    #[error("invalid catalog key {0:?}")]
    InvalidCatalogKey(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("restriction pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("search budget of {budget} step attempts exceeded")]
    BudgetExceeded { budget: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Verification(#[from] VerifyError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
