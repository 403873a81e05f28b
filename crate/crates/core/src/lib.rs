//! Spectral centralities from the singular value decomposition of incidence
//! matrices: vertex and edge centralities (diagonals of the Hodge Laplacian
//! pseudoinverses), orientation-aware hub/authority scores and hypergraph
//! centralities, together with independent brute-force oracles (effective
//! resistance, current-flow closeness, betweenness) used to verify them.

pub mod centrality;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod incidence;
pub mod io;
pub mod oracles;
pub mod spectral;

pub use centrality::{analyze, AnalysisConfig, Aggregation, CentralityReport};
pub use error::{CentralityError, ExperimentError, GraphError, IoError, OracleError, SpectralError};
pub use graph::{Components, DirectedGraph, Hypergraph};
pub use incidence::{build_hypergraph_incidence, build_incidence, IncidenceKind, IncidenceMatrix};
pub use spectral::{
    compact_svd, pseudoinverse_diagonal, truncated_svd, RegularizationConfig, RegularizationMode,
    Side, SpectralDecomposition,
};
