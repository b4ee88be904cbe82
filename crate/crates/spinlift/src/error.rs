use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("dimension {0} outside 1..=8")]
    DimensionOutOfRange(usize),
    #[error("element has components outside grade 1")]
    NonVector,
    #[error("element does not satisfy x' = x and x·conj(x) = 1")]
    NotSpin,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("matrix has determinant -1, so it is not in SO(n)")]
    NotInSO,
    #[error("matrix is not a signed permutation matrix")]
    NotSignedPerm,
    #[error("matrix is not in the image of the covering map")]
    NotInImage,
    #[error("result needs a radical outside Q(sqrt 2)")]
    UnsupportedScalar,
    #[error("closure exceeded the bound of {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("coset enumeration exceeded the bound of {0} cosets")]
    EnumerationBoundExceeded(usize),
    #[error("no catalog group of order {order} matches (element orders {profile})")]
    UnknownGroup { order: usize, profile: String },
    #[error("family {family}: {detail}")]
    InconsistentRecord { family: String, detail: String },
    #[error("family {0} not found in catalog")]
    FamilyNotFound(String),
    #[error("family {0} is not orientable: holonomy does not lie in SL(n,Z)")]
    NonOrientable(String),
    #[error("{0} generators is too many to enumerate sign assignments")]
    TooManyGenerators(usize),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse failure category; the CLI maps these to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Io,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io(_) => ErrorKind::Io,
            Error::Invariant(_) | Error::NonVector => ErrorKind::Internal,
            _ => ErrorKind::InvalidInput,
        }
    }

    pub(crate) fn inconsistent(family: &str, detail: impl Into<String>) -> Self {
        Error::InconsistentRecord {
            family: family.to_string(),
            detail: detail.into(),
        }
    }
}
