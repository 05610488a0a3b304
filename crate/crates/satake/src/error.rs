use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry at index {0} is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("entry ({0},{1}) is zero but ({1},{0}) is not")]
    AsymmetricZero(usize, usize),
    #[error("height bound must be at least 1")]
    HeightBoundTooSmall,
    #[error("matrix is not symmetrizable; root multiplicities are unavailable")]
    NotSymmetrizable,
    #[error("exponents have different base coweights")]
    MismatchedBase,
    #[error("stabilizer parabolic is not of finite type")]
    InfiniteStabilizer,
    #[error("offset has a negative coefficient, so it is not dominated")]
    OffsetNotDominatedBy,
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("coweight is not dominant and regular")]
    NotDominantRegular,
    #[error("coweight is not dominant")]
    NotDominant,
    #[error("coroot table does not reach the requested depth")]
    TableTooShallow,
    #[error("Weyl ball bound {given} is too small; an element of length {needed} still contributes")]
    BallTooSmall { given: usize, needed: usize },
    #[error("root datum is not of finite type")]
    NotFiniteType,
    #[error("exponent assignment vanishes on a positive coroot")]
    PoleAtCoroot,
    #[error("Laurent window too narrow to decide a valuation")]
    InsufficientPrecision,
    #[error("precision {given} too low; need at least {needed}")]
    PrecisionTooLow { given: i64, needed: i64 },
    #[error("unsupported residue field size {0}; only 2 and 3 are supported")]
    UnsupportedResidueField(u32),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("check failed: {0}")]
    CheckFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
