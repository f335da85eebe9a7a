use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("relation `{0} {1}` is not a composable path")]
    NonComposable(String, String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("ideal is not admissible: oriented cycle without relations through {0}")]
    NotAdmissible(String),
    #[error("GF({0}) is not a supported prime field")]
    Field(u32),
    #[error("algebra is not gentle: {0}")]
    NotGentle(String),
    #[error("not a string: {0}")]
    NotAString(String),
    #[error("band detected: algebra has infinitely many strings")]
    BandDetected,
    #[error("string enumeration truncated at length {0}")]
    Truncated(usize),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid dissection: {0}")]
    Dissection(String),
    #[error("surface is not a disk")]
    NotADisk,
    #[error("arc endpoints must differ")]
    EqualEndpoints,
    #[error("unknown marked point {0}")]
    UnknownMarkedPoint(usize),
    #[error("arc is not minimal")]
    NotMinimal,
    #[error("arcs do not share the marked point {0}")]
    NoSharedEndpoint(usize),
    #[error("window {given} too small, need at least {required}")]
    WindowTooSmall { given: i32, required: i32 },
    #[error("rotation collapses the arc")]
    Collapse,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
