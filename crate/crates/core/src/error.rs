use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// stable error identifiers emitted by the CLI and the C interface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("bad target class {target} for class {class}")]
    BadClass { target: usize, class: usize },
    #[error("element is not in the last term of the lower central series")]
    NotCentral,
    #[error("polynomial is not a Lie element")]
    NotLieElement,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("not a bijection of the generators")]
    NotABijection,
    #[error("invalid block partition: {0}")]
    PartitionInvalid(String),
    #[error("block constraint violated: {0}")]
    BlockConstraintViolated(String),
    #[error("element is not in the commutator subgroup")]
    NotInGamma2,
    #[error("invalid certificate: {0}")]
    CertificateInvalid(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("map does not fix the designated generators")]
    DoesNotFixD,
    #[error("rank too small: {0}")]
    RankTooSmall(String),
    #[error("map does not induce the identity modulo the center")]
    NotCentralIA,
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "InvalidContext",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::MalformedWord(_) => "MalformedWord",
            Error::ContextMismatch => "ContextMismatch",
            Error::BadClass { .. } => "BadClass",
            Error::NotCentral => "NotCentral",
            Error::NotLieElement => "NotLieElement",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::NotABijection => "NotABijection",
            Error::PartitionInvalid(_) => "PartitionInvalid",
            Error::BlockConstraintViolated(_) => "BlockConstraintViolated",
            Error::NotInGamma2 => "NotInGamma2",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::NotUnimodular => "NotUnimodular",
            Error::DoesNotFixD => "DoesNotFixD",
            Error::RankTooSmall(_) => "RankTooSmall",
            Error::NotCentralIA => "NotCentralIA",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
