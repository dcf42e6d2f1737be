use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    MismatchedRings,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("S-pair of degree {degree} exceeds the degree cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("all {trials} generic-coordinate trials produced different initial ideals")]
    AllTrialsDisagree { trials: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("monomial ideal is not Borel-fixed")]
    NotBorelFixed,
    #[error("monomial ideal is not stable")]
    NotStable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("expected Krull dimension {expected}, found {found}")]
    DimensionMismatch { expected: i64, found: i64 },
    #[error("point counts disagree between seeds ({first} vs {second})")]
    SeedDisagreement { first: usize, second: usize },
    #[error("degenerate point set: {0}")]
    DegeneratePoints(String),
    #[error("Hilbert function is not achievable: {0}")]
    InvalidHilbertFunction(String),
    #[error("polynomial is not monic in x0: {0}")]
    NonMonic(String),
}
