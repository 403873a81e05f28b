//! Vertex/edge SVD centralities, normalized scores, hub/authority aggregation
//! and the hypergraph variant.
//!
//! Raw centralities are resistance-like (smaller = more central). Normalized
//! scores invert them into `(0, 1]` with the most central element at 1.

use serde::{Deserialize, Serialize};

use crate::error::{CentralityError, SpectralError};
use crate::graph::{DirectedGraph, Hypergraph};
use crate::incidence::{build_hypergraph_incidence, build_incidence};
use crate::spectral::{
    decompose, pseudoinverse_diagonal, RegularizationConfig, Side, SpectralDecomposition,
};

/// Values closer than this are treated as ties when ranking.
pub const TIE_TOLERANCE: f64 = 1e-10;

pub const DEFAULT_ALPHA: f64 = 0.5;

/// Which vectors feed the hub/authority aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Normalized scores `s_v`, `s_e`.
    #[default]
    Normalized,
    /// Raw centralities `c_v`, `c_e`.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub regularization: RegularizationConfig,
    /// Hub/authority blend; `None` skips hub/authority scores.
    pub alpha: Option<f64>,
    pub truncation: Option<usize>,
    pub aggregation: Aggregation,
    pub rank_tol: Option<f64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            regularization: RegularizationConfig::default(),
            alpha: Some(DEFAULT_ALPHA),
            truncation: None,
            aggregation: Aggregation::Normalized,
            rank_tol: None,
        }
    }
}

/// The elements indexed by the edge-side vectors of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeSet {
    Oriented { edges: Vec<(usize, usize)> },
    Hyper { hyperedges: Vec<Vec<usize>> },
}

impl EdgeSet {
    pub fn len(&self) -> usize {
        match self {
            EdgeSet::Oriented { edges } => edges.len(),
            EdgeSet::Hyper { hyperedges } => hyperedges.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub regularization: RegularizationConfig,
    pub alpha: Option<f64>,
    pub truncation: Option<usize>,
    pub aggregation: Aggregation,
    pub rank_tol: Option<f64>,
    pub numerical_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub vertex_labels: Vec<String>,
    pub edges: EdgeSet,
    pub c_v: Vec<f64>,
    pub c_e: Vec<f64>,
    pub s_v: Vec<f64>,
    pub s_e: Vec<f64>,
    pub s_hub: Option<Vec<f64>>,
    pub s_auth: Option<Vec<f64>>,
    pub params: ReportParams,
}

/// `C_v(i) = Σₖ u²ₖᵢ / wₖ`; equals `[L0⁺]ᵢᵢ` when unregularized.
pub fn vertex_centrality(d: &SpectralDecomposition, cfg: &RegularizationConfig) -> Vec<f64> {
    if d.is_empty() {
        return Vec::new();
    }
    pseudoinverse_diagonal(d, Side::Vertex, cfg)
}

/// `C_e(e) = Σₖ v²ₖₑ / wₖ`; equals `[L1⁺]ₑₑ` when unregularized.
pub fn edge_centrality(d: &SpectralDecomposition, cfg: &RegularizationConfig) -> Vec<f64> {
    if d.is_empty() {
        return Vec::new();
    }
    pseudoinverse_diagonal(d, Side::Edge, cfg)
}

/// `S(i) = (1/(c(i)+τ)) / maxₗ 1/(c(ℓ)+τ)`.
pub fn normalize_scores(c: &[f64], tau: f64) -> Result<Vec<f64>, CentralityError> {
    if !(tau > 0.0) {
        return Err(SpectralError::InvalidTau(tau).into());
    }
    if let Some((index, &value)) = c.iter().enumerate().find(|(_, &x)| !(x >= 0.0)) {
        return Err(CentralityError::NegativeCentrality { index, value });
    }
    let inv: Vec<f64> = c.iter().map(|&x| 1.0 / (x + tau)).collect();
    let max = inv.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(inv.into_iter().map(|x| x / max).collect())
}

/// Hub and authority scores:
/// `hub = α·s_v + (1−α)·I_out·s_e`, `auth = α·s_v + (1−α)·I_in·s_e`, each then
/// divided by its maximum.
pub fn hub_authority(
    g: &DirectedGraph,
    s_v: &[f64],
    s_e: &[f64],
    alpha: f64,
) -> Result<(Vec<f64>, Vec<f64>), CentralityError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CentralityError::InvalidAlpha(alpha));
    }
    let n = g.vertex_count();
    if s_v.len() != n {
        return Err(CentralityError::LengthMismatch {
            expected: n,
            got: s_v.len(),
        });
    }
    if s_e.len() != g.edge_count() {
        return Err(CentralityError::LengthMismatch {
            expected: g.edge_count(),
            got: s_e.len(),
        });
    }
    let mut out_sum = vec![0.0; n];
    let mut in_sum = vec![0.0; n];
    for (&(tail, head), &s) in g.edges().iter().zip(s_e) {
        out_sum[tail] += s;
        in_sum[head] += s;
    }
    let blend = |agg: Vec<f64>| -> Vec<f64> {
        let mixed: Vec<f64> = s_v
            .iter()
            .zip(agg)
            .map(|(&v, a)| alpha * v + (1.0 - alpha) * a)
            .collect();
        max_normalize(mixed)
    };
    Ok((blend(out_sum), blend(in_sum)))
}

fn max_normalize(x: Vec<f64>) -> Vec<f64> {
    let max = x.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        x.into_iter().map(|v| v / max).collect()
    } else {
        x
    }
}

/// Full pipeline on a directed graph: incidence → SVD (with regularization and
/// optional truncation) → `C_v`, `C_e` → `S_v`, `S_e` → hub/authority.
pub fn analyze(g: &DirectedGraph, cfg: &AnalysisConfig) -> Result<CentralityReport, CentralityError> {
    let b = build_incidence(g).expect("DirectedGraph enforces incidence invariants");
    let d = decompose(&b, &cfg.regularization, cfg.truncation, cfg.rank_tol)?;
    let reg = &cfg.regularization;
    let n = g.vertex_count();
    let m = g.edge_count();

    // No edges: every vertex lies in ker(Bᵀ) and gets zero.
    let (c_v, c_e) = if d.is_empty() {
        (vec![0.0; n], vec![0.0; m])
    } else {
        (vertex_centrality(&d, reg), edge_centrality(&d, reg))
    };
    let s_v = normalize_scores(&c_v, reg.tau)?;
    let s_e = normalize_scores(&c_e, reg.tau)?;

    let (s_hub, s_auth) = match cfg.alpha {
        Some(alpha) if (0.0..=1.0).contains(&alpha) => {
            let (hub, auth) = match cfg.aggregation {
                Aggregation::Normalized => hub_authority(g, &s_v, &s_e, alpha)?,
                Aggregation::Raw => hub_authority(g, &c_v, &c_e, alpha)?,
            };
            (Some(hub), Some(auth))
        }
        Some(alpha) => return Err(CentralityError::InvalidAlpha(alpha)),
        None => (None, None),
    };

    Ok(CentralityReport {
        vertex_labels: (0..n).map(|i| g.label(i)).collect(),
        edges: EdgeSet::Oriented {
            edges: g.edges().to_vec(),
        },
        c_v,
        c_e,
        s_v,
        s_e,
        s_hub,
        s_auth,
        params: ReportParams {
            regularization: *reg,
            alpha: cfg.alpha,
            truncation: cfg.truncation,
            aggregation: cfg.aggregation,
            rank_tol: cfg.rank_tol,
            numerical_rank: d.numerical_rank(),
        },
    })
}

/// Vertex and hyperedge centralities from the binary incidence matrix. Hub and
/// authority scores are undefined without orientation and left out.
pub fn hypergraph_centralities(
    h: &Hypergraph,
    cfg: &RegularizationConfig,
) -> Result<CentralityReport, CentralityError> {
    hypergraph_centralities_with(h, cfg, None, None)
}

pub fn hypergraph_centralities_with(
    h: &Hypergraph,
    cfg: &RegularizationConfig,
    truncation: Option<usize>,
    rank_tol: Option<f64>,
) -> Result<CentralityReport, CentralityError> {
    let b = build_hypergraph_incidence(h).expect("Hypergraph enforces non-empty hyperedges");
    let d = decompose(&b, cfg, truncation, rank_tol)?;
    let (c_v, c_e) = if d.is_empty() {
        (vec![0.0; h.vertex_count()], vec![0.0; h.hyperedge_count()])
    } else {
        (vertex_centrality(&d, cfg), edge_centrality(&d, cfg))
    };
    Ok(CentralityReport {
        vertex_labels: (0..h.vertex_count()).map(|i| h.label(i)).collect(),
        edges: EdgeSet::Hyper {
            hyperedges: h.hyperedges().to_vec(),
        },
        s_v: normalize_scores(&c_v, cfg.tau)?,
        s_e: normalize_scores(&c_e, cfg.tau)?,
        c_v,
        c_e,
        s_hub: None,
        s_auth: None,
        params: ReportParams {
            regularization: *cfg,
            alpha: None,
            truncation,
            aggregation: Aggregation::Normalized,
            rank_tol,
            numerical_rank: d.numerical_rank(),
        },
    })
}

/// Indices ordered by ascending value; values within [`TIE_TOLERANCE`] of each
/// other keep ascending index order.
pub fn rank_ascending(values: &[f64]) -> Vec<usize> {
    rank_by(values, false)
}

/// Indices ordered by descending value, same tie rule as [`rank_ascending`].
pub fn rank_descending(values: &[f64]) -> Vec<usize> {
    rank_by(values, true)
}

fn rank_by(values: &[f64], descending: bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| {
        let (a, b) = (values[i], values[j]);
        if (a - b).abs() <= TIE_TOLERANCE {
            i.cmp(&j)
        } else if descending {
            b.total_cmp(&a)
        } else {
            a.total_cmp(&b)
        }
    });
    idx
}

/// Index of the largest value; ties at [`TIE_TOLERANCE`] go to the lowest index.
pub fn argmax(values: &[f64]) -> Option<usize> {
    rank_descending(values).first().copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::compact_svd;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, edges.to_vec()).unwrap()
    }

    fn none() -> RegularizationConfig {
        RegularizationConfig::unregularized()
    }

    fn raw_report(g: &DirectedGraph) -> CentralityReport {
        let cfg = AnalysisConfig {
            regularization: none(),
            ..AnalysisConfig::default()
        };
        analyze(g, &cfg).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Diagonal of the Moore–Penrose pseudoinverse via `(A + J/n)⁻¹ − J/n`
    /// for a connected Laplacian `A` (`J` = all-ones).
    fn connected_laplacian_pinv_diag(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
        let mut a = nalgebra::DMatrix::<f64>::from_element(n, n, 1.0 / n as f64);
        for &(t, h) in edges {
            a[(t, t)] += 1.0;
            a[(h, h)] += 1.0;
            a[(t, h)] -= 1.0;
            a[(h, t)] -= 1.0;
        }
        let inv = a.try_inverse().unwrap();
        (0..n).map(|i| inv[(i, i)] - 1.0 / n as f64).collect()
    }

    #[test]
    fn p2_vertex_and_edge() {
        let r = raw_report(&graph(2, &[(0, 1)]));
        assert!(close(&r.c_v, &[0.25, 0.25], 1e-15));
        assert!(close(&r.c_e, &[0.5], 1e-15));
        assert_eq!(r.s_v, vec![1.0, 1.0]);
    }

    #[test]
    fn star_center_is_most_central() {
        let edges = [(0, 1), (0, 2), (0, 3)];
        let r = raw_report(&graph(4, &edges));
        let oracle = connected_laplacian_pinv_diag(4, &edges);
        assert!(close(&r.c_v, &oracle, 1e-12));
        // L⁺ of the star: center 3/16, leaves 11/16.
        assert!((r.c_v[0] - 3.0 / 16.0).abs() < 1e-12);
        assert!((r.c_v[1] - 11.0 / 16.0).abs() < 1e-12);
        assert!(r.c_v[1..].iter().all(|&leaf| r.c_v[0] < leaf));
    }

    #[test]
    fn cycle_and_path_symmetry() {
        let c4 = raw_report(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        assert!(c4.c_v.iter().all(|&x| (x - c4.c_v[0]).abs() < 1e-10));
        assert!(c4.c_e.iter().all(|&x| (x - c4.c_e[0]).abs() < 1e-10));
        let p3 = raw_report(&graph(3, &[(0, 1), (1, 2)]));
        assert!((p3.c_e[0] - p3.c_e[1]).abs() < 1e-10);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_scores(&[0.25, 0.25], 1e-8).unwrap(), vec![1.0, 1.0]);
        let s = normalize_scores(&[1.0, 3.0], 1e-300).unwrap();
        assert!(close(&s, &[1.0, 1.0 / 3.0], 1e-15));
        assert!(normalize_scores(&[], 1e-8).unwrap().is_empty());
        assert!(matches!(
            normalize_scores(&[1.0, -0.5], 1e-8),
            Err(CentralityError::NegativeCentrality { index: 1, .. })
        ));
        assert!(normalize_scores(&[1.0], 0.0).is_err());
    }

    #[test]
    fn hub_authority_endpoints() {
        let g = graph(2, &[(0, 1)]);
        let (hub, auth) = hub_authority(&g, &[1.0, 1.0], &[1.0], 0.0).unwrap();
        assert_eq!(hub, vec![1.0, 0.0]);
        assert_eq!(auth, vec![0.0, 1.0]);

        let g = graph(3, &[(0, 1), (1, 2)]);
        let s_v = [0.5, 1.0, 0.5];
        let (hub, auth) = hub_authority(&g, &s_v, &[1.0, 0.7], 1.0).unwrap();
        assert_eq!(hub, vec![0.5, 1.0, 0.5]);
        assert_eq!(hub, auth);

        assert_eq!(
            hub_authority(&g, &s_v, &[1.0, 0.7], 1.5),
            Err(CentralityError::InvalidAlpha(1.5))
        );
        assert!(matches!(
            hub_authority(&g, &s_v, &[1.0], 0.5),
            Err(CentralityError::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn raw_aggregation_flag() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let cfg = AnalysisConfig {
            aggregation: Aggregation::Raw,
            alpha: Some(0.0),
            ..AnalysisConfig::default()
        };
        let r = analyze(&g, &cfg).unwrap();
        let (hub, _) = hub_authority(&g, &r.c_v, &r.c_e, 0.0).unwrap();
        assert_eq!(r.s_hub.unwrap(), hub);
    }

    #[test]
    fn alpha_none_skips_hub_authority() {
        let cfg = AnalysisConfig {
            alpha: None,
            ..AnalysisConfig::default()
        };
        let r = analyze(&graph(2, &[(0, 1)]), &cfg).unwrap();
        assert!(r.s_hub.is_none() && r.s_auth.is_none());
    }

    #[test]
    fn empty_graph_report() {
        let r = analyze(&graph(3, &[]), &AnalysisConfig::default()).unwrap();
        assert_eq!(r.c_v, vec![0.0; 3]);
        assert_eq!(r.s_v, vec![1.0; 3]);
        assert!(r.c_e.is_empty() && r.s_e.is_empty());
        assert_eq!(r.s_hub.as_ref().unwrap().len(), 3);
        let none = analyze(&graph(0, &[]), &AnalysisConfig::default()).unwrap();
        assert!(none.c_v.is_empty() && none.s_hub.unwrap().is_empty());
    }

    #[test]
    fn orientation_flip_changes_only_hub_authority() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (3, 1)]);
        let flipped_edges: Vec<_> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(j, &(t, h))| if j % 2 == 0 { (h, t) } else { (t, h) })
            .collect();
        let f = DirectedGraph::new(5, flipped_edges).unwrap();
        let cfg = AnalysisConfig {
            alpha: Some(0.0),
            ..AnalysisConfig::default()
        };
        let (a, b) = (analyze(&g, &cfg).unwrap(), analyze(&f, &cfg).unwrap());
        assert!(close(&a.c_v, &b.c_v, 1e-10));
        assert!(close(&a.c_e, &b.c_e, 1e-10));
        assert!(close(&a.s_v, &b.s_v, 1e-10));
        assert!(close(&a.s_e, &b.s_e, 1e-10));
        assert!(!close(a.s_hub.as_ref().unwrap(), b.s_hub.as_ref().unwrap(), 1e-6));
        assert!(!close(a.s_auth.as_ref().unwrap(), b.s_auth.as_ref().unwrap(), 1e-6));
    }

    #[test]
    fn automorphism_equivariance() {
        // Rotating C5 by one vertex maps the graph onto itself.
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).chain([(0, 2)]).collect();
        let g = graph(5, &edges);
        let perm = |v: usize| (v + 1) % 5;
        let relabeled: Vec<_> = edges.iter().map(|&(t, h)| (perm(t), perm(h))).collect();
        let r = raw_report(&g);
        let q = raw_report(&graph(5, &relabeled));
        for v in 0..5 {
            assert!((r.c_v[v] - q.c_v[perm(v)]).abs() < 1e-12);
        }
        for e in 0..edges.len() {
            assert!((r.c_e[e] - q.c_e[e]).abs() < 1e-12);
        }
    }

    #[test]
    fn hypergraph_examples() {
        let none = none();
        let single = hypergraph_centralities(&Hypergraph::new(2, vec![vec![0, 1]]).unwrap(), &none)
            .unwrap();
        assert!((single.c_v[0] - single.c_v[1]).abs() < 1e-15);
        assert!(single.s_hub.is_none());

        // B = [[1,1],[1,0],[0,1]], BBᵀ = [[2,1,1],[1,1,0],[1,0,1]] with
        // pseudoinverse diagonal [2/9, 5/9, 5/9] (rank 2; null vector (1,−1,−1)).
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
        let r = hypergraph_centralities(&h, &none).unwrap();
        assert!(close(&r.c_v, &[2.0 / 9.0, 5.0 / 9.0, 5.0 / 9.0], 1e-12));
        // BᵀB = [[2,1],[1,2]], inverse diagonal 2/3.
        assert!(close(&r.c_e, &[2.0 / 3.0, 2.0 / 3.0], 1e-12));

        let dup = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1], vec![1, 2]]).unwrap();
        let r = hypergraph_centralities(&dup, &none).unwrap();
        assert!((r.c_e[0] - r.c_e[1]).abs() < 1e-10);

        let empty = Hypergraph::new(0, vec![]).unwrap();
        let r = hypergraph_centralities(&empty, &none).unwrap();
        assert!(r.c_v.is_empty() && r.c_e.is_empty());
    }

    #[test]
    fn ranking_ties_follow_index() {
        assert_eq!(rank_ascending(&[0.3, 0.1, 0.1 + 1e-12, 0.2]), vec![1, 2, 3, 0]);
        assert_eq!(rank_descending(&[0.3, 0.1, 0.3, 0.2]), vec![0, 2, 3, 1]);
        assert_eq!(argmax(&[1.0, 1.0]), Some(0));
        assert_eq!(argmax(&[]), None);
    }

    #[test]
    fn vertex_diagonal_matches_decomposition() {
        let b = build_incidence(&graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap();
        let d = compact_svd(&b, None).unwrap();
        let oracle = connected_laplacian_pinv_diag(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(close(&vertex_centrality(&d, &none()), &oracle, 1e-12));
    }

    proptest! {
        #[test]
        fn normalization_is_monotone(c in proptest::collection::vec(0.0f64..100.0, 1..20)) {
            let s = normalize_scores(&c, 1e-8).unwrap();
            prop_assert!(s.iter().all(|&x| x > 0.0 && x <= 1.0));
            prop_assert!(s.contains(&1.0));
            for i in 0..c.len() {
                for j in 0..c.len() {
                    if c[i] < c[j] {
                        prop_assert!(s[i] >= s[j]);
                    }
                }
            }
        }
    }
}
