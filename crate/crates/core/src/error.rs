use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A node id outside `[0, n)`.
    NodeOutOfRange {
        node: usize,
        n: usize,
    },
    SelfLoop(usize),
    /// Operation needs the other instance flavor.
    FlavorMismatch,
    InvalidInstance(String),
    InvalidConfig(String),
    /// A weight assignment reaching distance 1 does not exist.
    Infeasible(String),
    /// Simplex pivot or constraint-generation cap hit.
    SolverStall(String),
    /// Instance too large for an exact oracle.
    BudgetExceeded {
        limit: usize,
        found: usize,
    },
    MissingWeights,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NodeOutOfRange { node, n } => {
                write!(f, "node {node} out of range for graph with {n} nodes")
            }
            Error::SelfLoop(v) => write!(f, "self-loop at node {v}"),
            Error::FlavorMismatch => write!(f, "cut or instance flavor mismatch"),
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::SolverStall(msg) => write!(f, "solver stalled: {msg}"),
            Error::BudgetExceeded { limit, found } => {
                write!(f, "oracle budget exceeded: {found} > {limit}")
            }
            Error::MissingWeights => write!(f, "instance carries no fractional weights"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
