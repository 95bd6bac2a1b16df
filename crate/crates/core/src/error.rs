use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("coordinate or norm does not fit the machine word used by the search kernel")]
    Overflow,
    #[error("determinant ratio {0} is not the square of an integer")]
    NotASquareRatio(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("unsupported rank {rank} for root lattice {kind}")]
    UnsupportedRank { kind: char, rank: usize },
    #[error("invalid glue index {index} for {kind}{rank}")]
    InvalidGlueIndex { kind: char, rank: usize, index: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("glue generator does not give an integral lattice: {0}")]
    NonIntegralGlue(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("root component could not be classified (rank {rank}, det {det}, roots {roots})")]
    UnclassifiableComponent { rank: usize, det: String, roots: usize },
    #[error("vectors are not contained in a single component of the root sublattice")]
    NotInRootSublattice,
    #[error("modulus {0} exceeds the configured search size")]
    SizeExceeded(String),
    #[error("lattice is not unimodular at p = {0}")]
    NotUnimodular(u64),
    #[error("minimum {0} is smaller than 2")]
    MinTooSmall(String),
    #[error("g({0}) is not known; supply a value")]
    UnknownG(usize),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
