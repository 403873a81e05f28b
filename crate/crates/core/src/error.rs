use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge}: endpoint {vertex} out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge}: self-loop on vertex {vertex} (an oriented incidence column would be all zero)")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("hyperedge {0} is empty")]
    EmptyHyperedge(usize),
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
    #[error("column {column} out of range for {cols} columns")]
    ColumnOutOfRange { column: usize, cols: usize },
    #[error("orientation is undefined for a binary (hypergraph) incidence matrix")]
    NotOriented,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("lambda must lie in [0, 1], got {0}")]
    InvalidLambda(f64),
    #[error("tau must be positive, got {0}")]
    InvalidTau(f64),
    #[error("truncation rank must be at least 1")]
    ZeroTruncation,
    #[error("matrix-level regularization requested with mode {0:?}")]
    WrongMode(crate::spectral::RegularizationMode),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CentralityError {
    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("score vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("negative raw centrality {value} at index {index}")]
    NegativeCentrality { index: usize, value: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("decomposition has rank {rank}, a connected graph on {n} vertices needs rank {}", n.saturating_sub(1))]
    RankDeficient { rank: usize, n: usize },
    #[error("vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("correlation needs at least two samples")]
    TooFewSamples,
    #[error("correlation is undefined for a constant vector")]
    ConstantVector,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("generator needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("cannot re-run an experiment on a custom graph")]
    NotRerunnable,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Write(#[from] std::io::Error),
}
