use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix entry ({row}, {col}) is negative or not finite")]
    NegativeEntry { row: usize, col: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has {got} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("node {node} is out of range 1..={d}")]
    NodeOutOfRange { node: usize, d: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has a directed cycle: {}", fmt_cycle(.0))]
    Cycle(Vec<usize>),
    #[error("edge weight c_{from},{to} = {value} must be positive")]
    NonPositiveEdgeWeight { from: usize, to: usize, value: String },
    #[error("noise weight c_{node},{node} = {value} must be positive")]
    NonPositiveNoiseWeight { node: usize, value: String },
    #[error("weight given for {from} -> {to}, which is not an edge of the DAG")]
    WeightOnNonEdge { from: usize, to: usize },
    #[error("missing weight for edge {from} -> {to}")]
    MissingEdgeWeight { from: usize, to: usize },
    #[error("expected {expected} noise weights, got {got}")]
    NoiseCount { expected: usize, got: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("path enumeration exceeded the cap of {0} paths")]
    PathCapExceeded(usize),
    #[error("node {j} is not an ancestor of node {i}")]
    NotAncestor { j: usize, i: usize },
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("DAG is not admissible for B: {0}")]
    NotAdmissible(String),
    #[error("sign pattern of B differs from the reachability matrix of the DAG at ({j}, {i})")]
    ReachabilityMismatch { j: usize, i: usize },
    #[error("diagonal entry b_{0},{0} must be positive")]
    ZeroDiagonal(usize),
    #[error("matrix is not an ML coefficient matrix: {}", .0.join(", "))]
    InvalidCoefficientMatrix(Vec<String>),
    #[error("B does not match the model: {0}")]
    InconsistentModel(String),
    #[error("no observation for node {0}")]
    MissingObservation(usize),
    #[error("observation for node {0} is negative or not finite")]
    NegativeObservation(usize),
    #[error("invalid noise specification: {0}")]
    InvalidNoiseSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn fmt_cycle(nodes: &[usize]) -> String {
    nodes
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}
