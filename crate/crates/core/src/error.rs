use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("words have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("symbol {symbol} out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },

    #[error("duplicate word {0}")]
    DuplicateWord(String),

    #[error("code must contain at least one word")]
    EmptyCode,

    #[error("minimum distance is undefined for a code with {0} word(s)")]
    DistanceUndefined(usize),

    #[error("word {0} is not in the code")]
    WordNotInCode(String),

    #[error("coordinate {coordinate} out of range 1..={len}")]
    CoordinateOutOfRange { coordinate: usize, len: usize },

    #[error("code is not systematic in its first {k} coordinates: {reason}")]
    NotSystematic { k: u32, reason: String },

    #[error("operation requires a binary code (q = {0})")]
    NotBinary(u32),

    #[error("operation requires a prime alphabet size (q = {0})")]
    NotPrime(u32),

    #[error("code is not linear: {0}")]
    NotLinear(String),

    #[error("generator matrix is rank deficient (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("polynomial {0} is reducible over GF(2)")]
    Reducible(String),

    #[error("zero element has no minimal polynomial")]
    ZeroElement,

    #[error("defining set is not closed under doubling mod {n}: {member} is in the set but {missing} is not")]
    IncompleteDefiningSet { n: u32, member: u32, missing: u32 },

    #[error("target distance {target} exceeds code distance {distance}")]
    TargetAboveDistance { target: u32, distance: u32 },

    #[error("distance dropped from {from} to {to} after a single puncture")]
    DistanceSkipped { from: u32, to: u32 },

    #[error("codes have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("pairing is not a bijection: {0}")]
    BadPairing(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
