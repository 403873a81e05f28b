//! Graph generators and the two reproducible experiments: SVD-vs-current-flow
//! equivalence on undirected graphs, and role recovery on the planted
//! hub/authority grid.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{analyze, argmax, rank_descending, AnalysisConfig};
use crate::error::ExperimentError;
use crate::graph::DirectedGraph;
use crate::oracles::{betweenness, coefficient_of_variation, current_flow_closeness, pearson, BetweennessTarget};
use crate::spectral::RegularizationConfig;

pub const GRID_SIDE: usize = 4;
/// Planted broadcaster at grid coordinate (2, 2).
pub const GRID_HUB: usize = 2 * GRID_SIDE + 2;
/// Planted receiver at grid coordinate (2, 3).
pub const GRID_AUTHORITY: usize = 2 * GRID_SIDE + 3;

/// Zachary's karate club, 0-based, 78 undirected edges (lower index first).
const KARATE_EDGES: [(usize, usize); 78] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11),
    (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2), (1, 3), (1, 7), (1, 13),
    (1, 17), (1, 19), (1, 21), (1, 30), (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27),
    (2, 28), (2, 32), (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
    (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33), (15, 32), (15, 33),
    (18, 32), (18, 33), (19, 33), (20, 32), (20, 33), (22, 32), (22, 33), (23, 25), (23, 27), (23, 29),
    (23, 32), (23, 33), (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33), (28, 31),
    (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32), (31, 33), (32, 33),
];

/// Where an experiment's graph came from; enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum GraphSource {
    Path { n: usize },
    Cycle { n: usize },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    Karate,
    GridMotif,
    Custom { description: String },
}

impl GraphSource {
    pub fn build(&self) -> Result<DirectedGraph, ExperimentError> {
        match self {
            GraphSource::Path { n } => generate_path(*n),
            GraphSource::Cycle { n } => generate_cycle(*n),
            GraphSource::ErdosRenyi { n, p, seed } => generate_er(*n, *p, *seed),
            GraphSource::Karate => Ok(load_karate()),
            GraphSource::GridMotif => Ok(generate_grid_motif()),
            GraphSource::Custom { .. } => Err(ExperimentError::NotRerunnable),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub source: GraphSource,
    pub regularization: RegularizationConfig,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    pub metrics: BTreeMap<String, f64>,
    /// Human-readable companions to numeric metrics (e.g. grid coordinates).
    pub annotations: BTreeMap<String, String>,
    pub params: ExperimentParams,
    /// Per-element columns, all of equal length within a table.
    pub tables: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
}

impl ExperimentResult {
    /// Runs the same experiment again from the recorded parameters.
    pub fn rerun(&self) -> Result<ExperimentResult, ExperimentError> {
        match self.name.as_str() {
            "grid" => run_grid_experiment_with(
                self.params.alpha.unwrap_or(0.0),
                &self.params.regularization,
            ),
            _ => run_equivalence(
                &self.params.source.build()?,
                self.params.source.clone(),
                &self.params.regularization,
            ),
        }
    }
}

pub fn generate_path(n: usize) -> Result<DirectedGraph, ExperimentError> {
    if n < 1 {
        return Err(ExperimentError::TooFewVertices { min: 1, got: n });
    }
    Ok(DirectedGraph::new(n, (1..n).map(|i| (i - 1, i)).collect())?)
}

pub fn generate_cycle(n: usize) -> Result<DirectedGraph, ExperimentError> {
    if n < 3 {
        return Err(ExperimentError::TooFewVertices { min: 3, got: n });
    }
    Ok(DirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())?)
}

/// Undirected `G(n, p)`: one coin per pair `i < j` in lexicographic order,
/// drawn from ChaCha8 seeded with `seed`; kept edges point low → high.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<DirectedGraph, ExperimentError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ExperimentError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(DirectedGraph::new(n, edges)?)
}

/// Connected graph: uniform random recursive tree plus `extra` random
/// non-loop edges (parallel edges possible), random orientations.
pub fn generate_random_connected(n: usize, extra: usize, seed: u64) -> Result<DirectedGraph, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::TooFewVertices { min: 2, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push(if rng.random::<bool>() { (u, v) } else { (v, u) });
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        edges.push((a, b));
    }
    Ok(DirectedGraph::new(n, edges)?)
}

/// The 34-vertex karate club graph; labels are the original 1-based member ids.
pub fn load_karate() -> DirectedGraph {
    DirectedGraph::new(34, KARATE_EDGES.to_vec())
        .and_then(|g| g.with_labels((1..=34).map(|i| i.to_string()).collect()))
        .expect("static karate edge list is valid")
}

/// 4×4 directed grid with a planted hub and authority.
///
/// Vertex `(r, c)` is index `4r + c`. Lattice edges point right and down. The
/// hub (2,2) then gets an edge to every other vertex and the authority (2,3)
/// an edge from every other vertex, skipping arcs that already exist.
pub fn generate_grid_motif() -> DirectedGraph {
    let s = GRID_SIDE;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut add = |t: usize, h: usize, edges: &mut Vec<(usize, usize)>| {
        if seen.insert((t, h)) {
            edges.push((t, h));
        }
    };
    for r in 0..s {
        for c in 0..s {
            let i = s * r + c;
            if c + 1 < s {
                add(i, i + 1, &mut edges);
            }
            if r + 1 < s {
                add(i, i + s, &mut edges);
            }
        }
    }
    for v in (0..s * s).filter(|&v| v != GRID_HUB) {
        add(GRID_HUB, v, &mut edges);
    }
    for v in (0..s * s).filter(|&v| v != GRID_AUTHORITY) {
        add(v, GRID_AUTHORITY, &mut edges);
    }
    let labels = (0..s * s).map(grid_label).collect();
    DirectedGraph::new(s * s, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("grid motif is valid")
}

pub fn grid_label(index: usize) -> String {
    format!("({},{})", index / GRID_SIDE, index % GRID_SIDE)
}

/// Correlates normalized SVD vertex scores with current-flow closeness.
///
/// A vertex-transitive input makes both vectors constant; the correlation is
/// then undefined and reported as an error.
pub fn run_equivalence(
    g: &DirectedGraph,
    source: GraphSource,
    cfg: &RegularizationConfig,
) -> Result<ExperimentResult, ExperimentError> {
    let cfc = current_flow_closeness(g)?;
    let analysis = AnalysisConfig {
        regularization: *cfg,
        alpha: None,
        ..AnalysisConfig::default()
    };
    let report = analyze(g, &analysis)?;
    let rho = pearson(&report.s_v, &cfc)?;

    let mut metrics = BTreeMap::new();
    metrics.insert("pearson_rho".to_string(), rho);
    metrics.insert("n".to_string(), g.vertex_count() as f64);
    metrics.insert("m".to_string(), g.edge_count() as f64);

    let mut table = BTreeMap::new();
    table.insert("c_v".to_string(), report.c_v);
    table.insert("s_v".to_string(), report.s_v);
    table.insert("current_flow_closeness".to_string(), cfc);
    let mut tables = BTreeMap::new();
    tables.insert("vertices".to_string(), table);

    Ok(ExperimentResult {
        name: "equivalence".to_string(),
        metrics,
        annotations: BTreeMap::new(),
        params: ExperimentParams {
            source,
            regularization: *cfg,
            alpha: None,
        },
        tables,
    })
}

pub fn run_grid_experiment(alpha: f64) -> Result<ExperimentResult, ExperimentError> {
    run_grid_experiment_with(alpha, &RegularizationConfig::default())
}

pub fn run_grid_experiment_with(
    alpha: f64,
    cfg: &RegularizationConfig,
) -> Result<ExperimentResult, ExperimentError> {
    let g = generate_grid_motif();
    let report = analyze(
        &g,
        &AnalysisConfig {
            regularization: *cfg,
            alpha: Some(alpha),
            ..AnalysisConfig::default()
        },
    )?;
    let hub = report.s_hub.clone().unwrap_or_default();
    let auth = report.s_auth.clone().unwrap_or_default();
    let node_bc = betweenness(&g, BetweennessTarget::Node, true);
    let edge_bc = betweenness(&g, BetweennessTarget::Edge, true);

    let hub_argmax = argmax(&hub).unwrap_or(0);
    let auth_argmax = argmax(&auth).unwrap_or(0);
    let sv_argmax = argmax(&report.s_v).unwrap_or(0);
    let top_edge = rank_descending(&report.s_e).first().copied().unwrap_or(0);
    let (tail, head) = g.edges()[top_edge];

    let mut metrics = BTreeMap::new();
    metrics.insert("hub_argmax".to_string(), hub_argmax as f64);
    metrics.insert("auth_argmax".to_string(), auth_argmax as f64);
    metrics.insert("s_v_argmax".to_string(), sv_argmax as f64);
    metrics.insert("s_e_argmax".to_string(), top_edge as f64);
    metrics.insert("hub_cv".to_string(), coefficient_of_variation(&hub));
    metrics.insert("auth_cv".to_string(), coefficient_of_variation(&auth));
    let nonzero: Vec<f64> = node_bc.values.iter().copied().filter(|&x| x > 0.0).collect();
    metrics.insert("node_betweenness_cv".to_string(), coefficient_of_variation(&nonzero));
    metrics.insert("node_betweenness_cv_all".to_string(), coefficient_of_variation(&node_bc.values));
    metrics.insert("edge_betweenness_cv".to_string(), coefficient_of_variation(&edge_bc.values));

    let mut annotations = BTreeMap::new();
    annotations.insert("hub_argmax".to_string(), grid_label(hub_argmax));
    annotations.insert("auth_argmax".to_string(), grid_label(auth_argmax));
    annotations.insert("s_v_argmax".to_string(), grid_label(sv_argmax));
    annotations.insert(
        "s_e_argmax".to_string(),
        format!("{}->{}", grid_label(tail), grid_label(head)),
    );
    annotations.insert("betweenness_normalization".to_string(), node_bc.normalization.clone());

    let mut vertices = BTreeMap::new();
    vertices.insert("c_v".to_string(), report.c_v.clone());
    vertices.insert("s_v".to_string(), report.s_v.clone());
    vertices.insert("s_hub".to_string(), hub);
    vertices.insert("s_auth".to_string(), auth);
    vertices.insert("node_betweenness".to_string(), node_bc.values);
    let mut edges = BTreeMap::new();
    edges.insert("c_e".to_string(), report.c_e.clone());
    edges.insert("s_e".to_string(), report.s_e.clone());
    edges.insert("edge_betweenness".to_string(), edge_bc.values);
    let mut tables = BTreeMap::new();
    tables.insert("vertices".to_string(), vertices);
    tables.insert("edges".to_string(), edges);

    Ok(ExperimentResult {
        name: "grid".to_string(),
        metrics,
        annotations,
        params: ExperimentParams {
            source: GraphSource::GridMotif,
            regularization: *cfg,
            alpha: Some(alpha),
        },
        tables,
    })
}
