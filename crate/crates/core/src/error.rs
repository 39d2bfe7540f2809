use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Inconclusive classifier verdicts are not errors; see
/// [`crate::analysis::Classification`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop query: orientation of ({0}, {0}) is undefined")]
    LoopQuery(usize),

    #[error("malformed injection: f({first}) = f({second}) = {value}")]
    NotInjective {
        first: usize,
        second: usize,
        value: String,
    },

    #[error("graph has a directed cycle: {0:?}")]
    Cyclic(Vec<usize>),

    #[error("closure from vertex {vertex} did not close within {budget} expansions")]
    BudgetExhausted { vertex: usize, budget: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} has {degree} {side}-neighbours; a {side}-degree of 0 is required")]
    NotExtremal {
        vertex: usize,
        side: &'static str,
        degree: usize,
    },

    #[error("pool of {have} vertices is too small; {need} = 2^(t-1) are required for a transitive set of size {target}")]
    PoolTooSmall {
        have: usize,
        need: usize,
        target: usize,
    },

    #[error("chunk of {size} vertices exceeds the cap of {cap}")]
    ChunkTooLarge { size: usize, cap: usize },

    #[error("pinned vertex {pinned} conflicts with edge ({from}, {to})")]
    PinConflict {
        pinned: usize,
        from: usize,
        to: usize,
    },

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("n must be at least 2 (got {0})")]
    TooFewVertices(usize),

    #[error("decomposition was built for n = {built}, queried with n = {queried}")]
    MismatchedDecomposition { built: usize, queried: usize },

    #[error("invalid block scheme: {0}")]
    InvalidScheme(String),

    #[error("empty pattern space")]
    EmptyPatternSpace,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-parseable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::LoopQuery(_) => "loop-query",
            Error::NotInjective { .. } => "not-injective",
            Error::Cyclic(_) => "cyclic",
            Error::BudgetExhausted { .. } => "budget-exhausted",
            Error::InvalidGraph(_) => "invalid-graph",
            Error::NotExtremal { .. } => "not-extremal",
            Error::PoolTooSmall { .. } => "pool-too-small",
            Error::ChunkTooLarge { .. } => "chunk-too-large",
            Error::PinConflict { .. } => "pin-conflict",
            Error::NotBijective(_) => "not-bijective",
            Error::Oracle(_) => "oracle",
            Error::Consistency(_) => "consistency",
            Error::TooFewVertices(_) => "too-few-vertices",
            Error::MismatchedDecomposition { .. } => "mismatched-decomposition",
            Error::InvalidScheme(_) => "invalid-scheme",
            Error::EmptyPatternSpace => "empty-pattern-space",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
