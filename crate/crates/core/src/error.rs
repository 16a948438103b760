use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid backend spec: {0}")]
    InvalidSpec(String),
    #[error("backend too large: {0}")]
    TooLarge(String),
    #[error("no map {from} -> {to}")]
    NoSuchMap { from: String, to: String },
    #[error("index mismatch: {0}")]
    MismatchedIndex(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("unsupported backend: {0}")]
    UnsupportedBackend(String),
    #[error("bound {bound} too small: {what}")]
    BoundTooSmall { bound: u32, what: String },
    #[error("operands live over different presentations")]
    MixedPresentation,
    #[error("collection is not closed: {witness}")]
    NotClosed { witness: String },
    #[error("collection is not almost essentially unital: {0}")]
    NotAeUnital(String),
    #[error("system is not unital")]
    NotUnital,
    #[error("target does not lie above the image of the system")]
    TargetNotAbove,
    #[error("pair is not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a family: {0}")]
    InvalidFamily(String),
    #[error("not a transfer system: {0}")]
    InvalidTransferSystem(String),
    #[error("not a sieve: {0}")]
    InvalidSieve(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid G-set: {0}")]
    InvalidAction(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
