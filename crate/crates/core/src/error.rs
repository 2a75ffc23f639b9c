use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("explicit reduction unsupported at non-rational place")]
    UnsupportedPlace,
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("S must contain at least one place")]
    EmptyPlaceSet,
    #[error("S-unit lattice supported only over rational places")]
    NonRationalLattice,
    #[error("enumeration cap exceeded: {needed} candidates > cap {cap}")]
    EnumerationCap { needed: u128, cap: u128 },
    #[error("not a reduced map")]
    NotReduced,
    #[error("constant map")]
    ConstantMap,
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("place is not of simple good reduction")]
    NotSimpleGoodReduction,
    #[error("point is not periodic with minimal period {0}")]
    NotPeriodic(usize),
    #[error("orbit not of the required shape: {0}")]
    BadOrbitShape(String),
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("composition cap exceeded: degree {degree} > cap {cap}")]
    CompositionCap { degree: u128, cap: u128 },
    #[error("iterate is the identity map; every point is periodic")]
    IdentityIterate,
    #[error("sieve cap exceeded: {limit} > {cap}")]
    SieveCap { limit: String, cap: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Coarse classification used for process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::UnknownSuite(_) => ErrorKind::Parse,
            Error::EnumerationCap { .. } | Error::CompositionCap { .. } | Error::SieveCap { .. } => {
                ErrorKind::CapExceeded
            }
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    CapExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;
