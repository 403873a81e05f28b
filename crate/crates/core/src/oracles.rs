//! Brute-force reference implementations used to check the spectral path.
//!
//! Everything resistance-based here goes through a dense symmetric
//! eigendecomposition of the combinatorial Laplacian built straight from the
//! edge list; none of it touches the incidence SVD.

use std::collections::{HashMap, VecDeque};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::graph::DirectedGraph;
use crate::incidence::IncidenceMatrix;
use crate::spectral::{pseudoinverse_diagonal, RegularizationConfig, Side, SpectralDecomposition};

/// Above this projection defect `e_i − e_j` is taken to leave `Im(B)`, i.e.
/// `i` and `j` lie in different components.
const DISCONNECTED_DEFECT: f64 = 1e-8;

/// Combinatorial Laplacian `D − A` of the underlying undirected multigraph
/// (equal to `BBᵀ`).
pub fn laplacian(g: &DirectedGraph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for &(t, h) in g.edges() {
        l[(t, t)] += 1.0;
        l[(h, h)] += 1.0;
        l[(t, h)] -= 1.0;
        l[(h, t)] -= 1.0;
    }
    l
}

/// Moore–Penrose pseudoinverse of a symmetric positive semidefinite matrix
/// from its eigendecomposition; eigenvalues `≤ ε·λ_max·n` are treated as zero.
pub fn symmetric_pseudoinverse(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let eig = SymmetricEigen::new(a.clone());
    let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let cutoff = f64::EPSILON * lmax * n as f64;
    let mut pinv = DMatrix::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > cutoff {
            let q = eig.eigenvectors.column(k);
            pinv += (q * q.transpose()) / lambda;
        }
    }
    pinv
}

pub fn laplacian_pseudoinverse(g: &DirectedGraph) -> DMatrix<f64> {
    symmetric_pseudoinverse(&laplacian(g))
}

/// All-pairs effective resistance; pairs in different components are `∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    values: DMatrix<f64>,
}

impl ResistanceMatrix {
    /// `R_ij = L⁺_ii + L⁺_jj − 2 L⁺_ij` from the dense Laplacian pseudoinverse.
    pub fn from_graph(g: &DirectedGraph) -> Self {
        let n = g.vertex_count();
        let pinv = laplacian_pseudoinverse(g);
        let comps = g.connected_components();
        let values = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else if comps.component_of(i) != comps.component_of(j) {
                f64::INFINITY
            } else {
                (pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]).max(0.0)
            }
        });
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.values.row(i).sum()).collect()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.values
    }
}

/// `R_ij = Σₖ (u_ki − u_kj)² / σ_k²` from an unregularized decomposition of an
/// oriented incidence matrix. Returns `∞` when `i` and `j` are disconnected.
pub fn effective_resistance(
    d: &SpectralDecomposition,
    i: usize,
    j: usize,
) -> Result<f64, OracleError> {
    let n = d.rows();
    for vertex in [i, j] {
        if vertex >= n {
            return Err(OracleError::VertexOutOfRange { vertex, n });
        }
    }
    if i == j {
        return Ok(0.0);
    }
    let u = d.u();
    let mut resistance = 0.0;
    let mut captured = 0.0;
    for (k, &s) in d.sigma().iter().enumerate() {
        let w = u[(i, k)] - u[(j, k)];
        captured += w * w;
        resistance += w * w / (s * s);
    }
    // ‖e_i − e_j‖² = 2; anything not captured by span(U) lies in ker(Bᵀ).
    if 2.0 - captured > DISCONNECTED_DEFECT {
        return Ok(f64::INFINITY);
    }
    Ok(resistance)
}

/// Residuals of `Σ_j R_ij = n·C_v(i) + tr(L0⁺)` with both sides taken from the
/// decomposition. Requires a connected graph (rank `n − 1`).
pub fn check_resistance_sum_identity(d: &SpectralDecomposition) -> Result<Vec<f64>, OracleError> {
    let n = d.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if d.numerical_rank() + 1 != n || d.truncated_to().is_some_and(|k| k + 1 != n) {
        return Err(OracleError::RankDeficient {
            rank: d.len(),
            n,
        });
    }
    let cfg = RegularizationConfig::unregularized();
    let c_v = pseudoinverse_diagonal(d, Side::Vertex, &cfg);
    let trace = d.pseudoinverse_trace(&cfg);
    let mut sums = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            sums[i] += effective_resistance(d, i, j)?;
        }
    }
    Ok(resistance_sum_residuals(&sums, &c_v, trace))
}

/// `|Σ_j R_ij − (n·C_v(i) + trace)|` for externally supplied row sums.
pub fn resistance_sum_residuals(row_sums: &[f64], c_v: &[f64], trace: f64) -> Vec<f64> {
    let n = row_sums.len() as f64;
    row_sums
        .iter()
        .zip(c_v)
        .map(|(&sum, &c)| (sum - (n * c + trace)).abs())
        .collect()
}

/// Current-flow closeness `(n − 1) / Σ_{j≠i} R_ij` on the underlying
/// undirected graph, from the dense pseudoinverse.
pub fn current_flow_closeness(g: &DirectedGraph) -> Result<Vec<f64>, OracleError> {
    let comps = g.connected_components();
    if comps.count() > 1 {
        return Err(OracleError::Disconnected {
            components: comps.count(),
        });
    }
    let n = g.vertex_count();
    if n < 2 {
        return Ok(vec![0.0; n]);
    }
    let r = ResistanceMatrix::from_graph(g);
    Ok(r.row_sums()
        .into_iter()
        .map(|s| (n - 1) as f64 / s)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BetweennessTarget {
    Node,
    Edge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Betweenness {
    pub values: Vec<f64>,
    pub target: BetweennessTarget,
    pub respect_direction: bool,
    /// Human-readable statement of the normalization applied.
    pub normalization: String,
}

/// Shortest-path betweenness by Brandes accumulation over every source.
///
/// Parallel arcs are collapsed for path counting. Edge values are computed per
/// arc (per unordered pair when undirected) and split evenly between parallel
/// copies. Sums run over ordered (source, target) pairs in both cases; nodes
/// are scaled by `1/((n−1)(n−2))`, edges by `1/(n(n−1))`.
pub fn betweenness(g: &DirectedGraph, target: BetweennessTarget, respect_direction: bool) -> Betweenness {
    let n = g.vertex_count();
    let key = |t: usize, h: usize| {
        if respect_direction {
            (t, h)
        } else {
            (t.min(h), t.max(h))
        }
    };

    let mut adj = vec![Vec::new(); n];
    for &(t, h) in g.edges() {
        adj[t].push(h);
        if !respect_direction {
            adj[h].push(t);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut node = vec![0.0; n];
    let mut arc: HashMap<(usize, usize), f64> = HashMap::new();
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];

    for s in 0..n {
        stack.clear();
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                delta[v] += c;
                *arc.entry(key(v, w)).or_insert(0.0) += c;
            }
            if w != s {
                node[w] += delta[w];
            }
        }
    }

    let nf = n as f64;
    match target {
        BetweennessTarget::Node => {
            let scale = if n > 2 { 1.0 / ((nf - 1.0) * (nf - 2.0)) } else { 1.0 };
            Betweenness {
                values: node.into_iter().map(|x| x * scale).collect(),
                target,
                respect_direction,
                normalization: "sum over ordered pairs (s,t), scaled by 1/((n-1)(n-2))".into(),
            }
        }
        BetweennessTarget::Edge => {
            let scale = if n > 1 { 1.0 / (nf * (nf - 1.0)) } else { 1.0 };
            let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
            for &(t, h) in g.edges() {
                *multiplicity.entry(key(t, h)).or_insert(0) += 1;
            }
            let values = g
                .edges()
                .iter()
                .map(|&(t, h)| {
                    let k = key(t, h);
                    arc.get(&k).copied().unwrap_or(0.0) * scale / multiplicity[&k] as f64
                })
                .collect();
            Betweenness {
                values,
                target,
                respect_direction,
                normalization:
                    "sum over ordered pairs (s,t), scaled by 1/(n(n-1)), split across parallel copies"
                        .into(),
            }
        }
    }
}

/// Sample Pearson correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, OracleError> {
    if x.len() != y.len() {
        return Err(OracleError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(OracleError::TooFewSamples);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    // Constant up to rounding noise.
    let noise = |ss: f64, m: f64| ss <= (1e-12 * m.abs().max(1e-300)).powi(2) * n;
    if noise(sxx, mx) || noise(syy, my) {
        return Err(OracleError::ConstantVector);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Coefficient of variation (population standard deviation over mean).
pub fn coefficient_of_variation(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() / mean
}

/// `|‖Bᵀu_k‖² − σ_k²‖u_k‖²|` for each retained mode.
pub fn rayleigh_energy_residuals(b: &IncidenceMatrix, d: &SpectralDecomposition) -> Vec<f64> {
    d.sigma()
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let u: DVector<f64> = d.u().column(k).into_owned();
            (b.tr_mul_vec(&u).norm_squared() - s * s * u.norm_squared()).abs()
        })
        .collect()
}

/// Largest `|⟨u_k, z⟩|` over `U`'s columns and an orthonormal basis `z` of
/// `ker(Bᵀ)` (the harmonic vertex space), computed from `BBᵀ` independently.
pub fn hodge_orthogonality_residual(b: &IncidenceMatrix, d: &SpectralDecomposition) -> f64 {
    let dense = b.to_dense();
    let l0 = &dense * dense.transpose();
    let n = l0.nrows();
    if n == 0 {
        return 0.0;
    }
    let eig = SymmetricEigen::new(l0);
    let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let cutoff = 1e-9 * lmax.max(1.0);
    let mut worst: f64 = 0.0;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= cutoff {
            let z = eig.eigenvectors.column(k);
            for c in 0..d.len() {
                worst = worst.max(d.u().column(c).dot(&z).abs());
            }
        }
    }
    worst
}
