use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("words are nonempty; got an empty letter sequence")]
    EmptyWord,

    #[error("cannot parse word {0:?}")]
    ParseWord(String),

    #[error("letter index must be at least 1")]
    ZeroLetterIndex,

    #[error("symmetric ideal requires an even matrix size, got n = {0}")]
    OddSymmetric(usize),

    #[error("group {group} requires an even matrix size, got n = {n}")]
    OddSize { group: &'static str, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("letter index {index} exceeds the {available} matrices of the representation")]
    LetterOutOfRange { index: u32, available: usize },

    #[error("matrix size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("matrix is not self-adjoint under the symplectic involution")]
    NotSymplecticSelfAdjoint,

    #[error("matrix is singular")]
    Singular,

    #[error("torus parameters must be nonzero")]
    ZeroParameter,

    #[error("sampler failed to produce a valid {0} element")]
    SamplerExhausted(&'static str),

    #[error("quotient did not vanish by degree {0}")]
    NotNilpotent(usize),

    #[error("unsupported combination: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
