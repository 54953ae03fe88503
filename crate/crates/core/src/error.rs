use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph not connected")]
    NotConnected,
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("source already burned or duplicated: vertex {vertex} at round {round}")]
    AlreadyBurned { vertex: usize, round: usize },
    #[error("schedule must contain at least one source")]
    EmptySchedule,
    #[error("budgets must be positive")]
    NonPositiveBudget,
    #[error("distinct budgets required")]
    BudgetsNotDistinct,
    #[error("budget set must not be empty")]
    EmptyBudgets,
    #[error("budget count {budgets} does not match center count {centers}")]
    BudgetCenterMismatch { budgets: usize, centers: usize },
    #[error("not a canonical burning cover")]
    NotCanonicalCover,
    #[error("cover does not reach every vertex")]
    CoverIncomplete,
    #[error("tree order {order} exceeds budget threshold {threshold}")]
    OverThreshold { order: usize, threshold: usize },
    #[error("instance too large for exact solve: order {order} exceeds cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("p too small for connectivity at this n (gave up after {0} attempts)")]
    ConnectivityRetries(usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
