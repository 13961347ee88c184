use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("{what} is {size}, above the configured cap of {cap}")]
    ResourceCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("group order {p} is even; the invariance theorems need odd order (use the even-order override to compute anyway)")]
    EvenOrder { p: usize },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("the action does not commute with the differential in {count} grading(s)")]
    Equivariance { count: usize },

    #[error("subspace error: {0}")]
    Subspace(String),

    #[error("diagram is not consistently oriented: {0}")]
    Unoriented(String),

    #[error("diagram carries no puncture-ray data")]
    MissingRayData,

    #[error("move shape mismatch: {0}")]
    MoveShape(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("differential term leaves its grading: {0}")]
    Grading(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
