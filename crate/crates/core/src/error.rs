use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("image list {0:?} is not a bijection")]
    NotABijection(Vec<usize>),
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    RepeatedPoint(usize),
    #[error("bad cycle notation {text:?}: {message}")]
    CycleSyntax { text: String, message: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("element {0} does not lie in group {1}")]
    ForeignElement(String, String),
    #[error("group closure exceeded the cap of {cap} elements")]
    ElementCapExceeded { cap: usize },
    #[error("tuple space of {size} exceeds the cap of {cap}")]
    TupleCapExceeded { size: u128, cap: u128 },
    #[error("the identity has no cogenerator requirement; pass a nontrivial element")]
    TrivialElement,
    #[error("syntax error at offset {offset}: {message}")]
    WordSyntax { offset: usize, message: String },
    #[error("exponent {0} does not fit in 64 bits")]
    ExponentOverflow(String),
    #[error("word has arity {expected} but {got} arguments were supplied")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("group parameters out of range: {0}")]
    GroupOutOfRange(String),
    #[error("action mismatch: {0}")]
    ActionMismatch(String),
    #[error("domain is not invariant under the action: {0}")]
    DomainNotInvariant(String),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus {modulus} exceeds the cap of {cap}")]
    ModulusCapExceeded { modulus: u64, cap: u64 },
}

/// Coarse grouping used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    ResourceCap,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ElementCapExceeded { .. }
            | Error::TupleCapExceeded { .. }
            | Error::ModulusCapExceeded { .. } => ErrorKind::ResourceCap,
            _ => ErrorKind::Input,
        }
    }
}
