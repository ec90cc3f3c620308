use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the two branches are equal")]
    EqualBranches,
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("entry {entry} is not legal at index {index} of {kind}")]
    EntryOutOfRange {
        kind: String,
        index: usize,
        entry: u32,
    },
    #[error("invalid arity {0}")]
    BadArity(usize),
    #[error("element set is not an anti-clique")]
    NotAntiClique,
    #[error("members are not pairwise adjacent")]
    NotAClique,
    #[error("condition is empty")]
    EmptyCondition,
    #[error("no class member fits below depth {depth}")]
    DepthTooSmall { depth: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("instance of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
}

impl Error {
    pub(crate) fn kind_mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::KindMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
