use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(String),
    #[error("unknown letter {letter:?} (alphabet: {alphabet})")]
    UnknownLetter { letter: String, alphabet: String },
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("short stream: requested {requested} letters but only {available} are available")]
    ShortStream { requested: usize, available: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("substitution is erasing: image of {0:?} is empty")]
    Erasing(String),
    #[error("substitution {name} is missing a rule for letter {letter:?}")]
    MissingRule { name: String, letter: String },
    #[error("fixed point precondition failed: {0}")]
    FixedPoint(String),
    #[error("matrix is not primitive (no positive power up to exponent {0})")]
    NotPrimitive(usize),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} occurs fewer than two times in the window")]
    InsufficientOccurrences(String),
    #[error("window is not recurrent: {0}")]
    NotRecurrent(String),
    #[error("seed incompatibility at index {index}: {detail}")]
    SeedIncompatible { index: usize, detail: String },
    #[error("not everywhere growing up to depth {depth}: seed image length stalled at {length}")]
    NotGrowing { depth: usize, length: usize },
    #[error("directive sequence has no seed letters (language-only)")]
    NoSeeds,
    #[error("directive sequence ends at index {0}")]
    DirectiveExhausted(usize),
    #[error("dimension mismatch at index {index}: {detail}")]
    DimensionMismatch { index: usize, detail: String },
    #[error("frequency vector not converged: {0}")]
    NotConverged(String),
    #[error("input outside the domain of {map}: {detail}")]
    OutsideCone { map: String, detail: String },
    #[error("edge matrix of {0} is not invertible")]
    NotInvertible(String),
    #[error("path is inconsistent at index {0}")]
    InconsistentPath(usize),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("unknown substitution {name:?}; available: {available}")]
    UnknownSubstitution { name: String, available: String },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
