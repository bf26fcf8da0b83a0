use thiserror::Error;

/// Errors produced by the engine.
///
/// Variants are grouped loosely by the layer that raises them; the CLI maps
/// them onto exit codes (input errors → 2, unsupported regimes → 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid scalar {value:?}: {reason}")]
    InvalidScalar { value: String, reason: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("action is not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("generated group exceeds the order bound {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("unknown group element {0:?}")]
    UnknownElement(String),

    #[error("element does not belong to this skew ring: {0}")]
    ContextMismatch(String),

    #[error("no quasi-inverse exists: the element witnesses non-regularity")]
    NoSolution,

    #[error("algebra dimension {dim} exceeds the configured bound {bound}")]
    DimensionBoundExceeded { dim: usize, bound: usize },

    #[error("characteristic {characteristic} is not supported for an algebra of dimension {dim}")]
    UnsupportedCharacteristic { characteristic: u64, dim: usize },

    #[error("element generates a proper ideal of dimension {ideal_dim} < {ambient_dim}")]
    NotGenerating { ideal_dim: usize, ambient_dim: usize },

    #[error("length reduction needs a nonzero input")]
    ZeroInput,

    #[error("level {level} is out of range (required at least {required}, at most {max})")]
    LevelOutOfRange { level: usize, required: usize, max: usize },

    #[error("depth {depth} exceeds the configured bound {bound}")]
    DepthBoundExceeded { depth: usize, bound: usize },

    #[error("subgroup {0} is not normal")]
    NotNormal(usize),

    #[error("subgroup chain is not descending at position {0}")]
    NotDescending(usize),

    #[error("generator {name:?} has base level {base} above level {level}")]
    GeneratorBelowBaseLevel { name: String, base: usize, level: usize },

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("polynomial error: {0}")]
    Polynomial(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("content hash mismatch: certificate was issued for {expected}, input hashes to {found}")]
    HashMismatch { expected: String, found: String },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
