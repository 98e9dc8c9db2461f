use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. Every variant is a refusal to produce a value, never a
/// partial result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplicities {0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("multiplicity list is empty")]
    EmptyData,

    #[error("multiplicity 0 is not allowed")]
    ZeroMultiplicity,

    #[error("no fiber of order {0}")]
    NoSuchFiber(u64),

    #[error("fiber of order {0} is ambiguous")]
    AmbiguousFiber(u64),

    #[error("fiber index {index} out of range for {len} multiplicities")]
    BadIndex { index: usize, len: usize },

    #[error(
        "fiber of order {order}{} is not stabilized ({order} <= {complement}, the product of the other multiplicities); \
         d is not splice-additive along unstabilized fibers, use `bounds` for an interval",
        side.map(|s| format!(" on side {s}")).unwrap_or_default()
    )]
    NotStabilized {
        order: u64,
        complement: u64,
        side: Option<usize>,
    },

    #[error("continued fraction needs 0 < b < a with gcd(a, b) = 1, got {a}/{b}")]
    BadFraction { a: u64, b: u64 },

    #[error("negatively oriented data has no negative-definite plumbing; use d(-Y) = -d(Y)")]
    NegativeOrientation,

    #[error("side {0} must be positively oriented")]
    WrongOrientation(usize),

    #[error("plumbing graph is not a tree: {0}")]
    NotATree(String),

    #[error("matrix is not square and symmetric")]
    NotSymmetric,

    #[error("lattice is not negative definite")]
    NotNegativeDefinite,

    #[error("lattice is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("Gram matrix is singular modulo 2")]
    Singular,

    #[error("computed d-invariant {0} is not an even integer")]
    ParityViolation(String),

    #[error("Wu class norm gives non-integral mu-bar {0}")]
    NonIntegerMuBar(String),

    #[error("knot data is missing: {0}")]
    MissingData(String),

    #[error("V0 values must be nonnegative, got {0}")]
    NegativeV(i64),

    #[error("d-invariant {0} is odd")]
    OddD(i64),

    #[error("interval [{lower}, {upper}] is empty")]
    EmptyInterval { lower: i64, upper: i64 },

    #[error("d = {d} < -2 mu-bar = {bound}")]
    InequalityViolated { d: i64, bound: i64 },

    #[error("d = {d} differs from -2 mu-bar = {bound}")]
    EqualityFailed { d: i64, bound: i64 },

    #[error("not a splice: twisting parameters must be zero")]
    NotASplice,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotCoprime(..) => "NotCoprime",
            Error::EmptyData => "EmptyData",
            Error::ZeroMultiplicity => "ZeroMultiplicity",
            Error::NoSuchFiber(_) => "NoSuchFiber",
            Error::AmbiguousFiber(_) => "AmbiguousFiber",
            Error::BadIndex { .. } => "BadIndex",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::BadFraction { .. } => "BadFraction",
            Error::NegativeOrientation => "NegativeOrientation",
            Error::WrongOrientation(_) => "WrongOrientation",
            Error::NotATree(_) => "NotATree",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotNegativeDefinite => "NotNegativeDefinite",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::Singular => "Singular",
            Error::ParityViolation(_) => "ParityViolation",
            Error::NonIntegerMuBar(_) => "NonIntegerMuBar",
            Error::MissingData(_) => "MissingData",
            Error::NegativeV(_) => "NegativeV",
            Error::OddD(_) => "OddD",
            Error::EmptyInterval { .. } => "EmptyInterval",
            Error::InequalityViolated { .. } => "InequalityViolated",
            Error::EqualityFailed { .. } => "EqualityFailed",
            Error::NotASplice => "NotASplice",
            Error::Overflow(_) => "Overflow",
            Error::Internal(_) => "Internal",
        }
    }
}
