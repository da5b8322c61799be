use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// [`Error::is_usage`] splits the variants into malformed input (the caller
/// typed something unparsable or asked for too much work) and domain errors
/// (well-formed input that violates an operation's precondition).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("letters must be positive integers, found 0")]
    ZeroLetter,

    #[error("{0} is not a permutation of [n]")]
    NotPermutation(String),

    #[error("the empty word cannot be embedded")]
    EmptyPattern,

    #[error("distances need two distinct letters, got {0} twice")]
    SameLetter(u32),

    #[error("letter {letter} is out of range 1..={max}")]
    LetterOutOfRange { letter: u32, max: u32 },

    #[error("invalid embedding set: {0}")]
    InvalidEmbeddingSet(String),

    #[error("embedding set must start at position 1, starts at {0}")]
    NotAnchored(usize),

    #[error("consecutive gap {gap} is outside 1..={max}: copies of the pattern would not overlap")]
    OverlapViolation { gap: usize, max: usize },

    #[error("no extended minimal cluster of length {length}: at least {required} is needed")]
    ClusterTooShort { length: usize, required: usize },

    #[error("embedding position {position} does not fit in words of length {length}")]
    PositionOutOfRange { position: usize, length: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("partial word has no blank")]
    NoBlank,

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("{what} = {value} exceeds the guard {limit}; pass --force to override")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by malformed invocations rather than by the
    /// mathematics of the request.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownFormat(_) | Error::GuardExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
