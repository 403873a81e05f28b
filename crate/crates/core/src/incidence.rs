//! Incidence matrices for oriented graphs (±1 columns) and hypergraphs (0/1 columns).

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{DirectedGraph, Hypergraph};

/// Matrices with more stored nonzeros than this are kept column-sparse.
pub const DEFAULT_DENSE_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IncidenceKind {
    /// Column `j` holds −1 at the tail and +1 at the head of edge `j`.
    Oriented,
    /// Column `h` holds 1 for every member of hyperedge `h`.
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(DMatrix<f64>),
    /// Per-column `(row, value)` lists, rows ascending.
    Sparse(Vec<Vec<(usize, f64)>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    kind: IncidenceKind,
    column_map: Vec<usize>,
    storage: Storage,
}

impl IncidenceMatrix {
    fn from_columns(
        rows: usize,
        kind: IncidenceKind,
        columns: Vec<Vec<(usize, f64)>>,
        dense_threshold: usize,
    ) -> Self {
        let cols = columns.len();
        let nnz: usize = columns.iter().map(Vec::len).sum();
        let storage = if nnz <= dense_threshold {
            let mut dense = DMatrix::zeros(rows, cols);
            for (j, col) in columns.iter().enumerate() {
                for &(i, v) in col {
                    dense[(i, j)] = v;
                }
            }
            Storage::Dense(dense)
        } else {
            Storage::Sparse(columns)
        };
        Self {
            rows,
            cols,
            kind,
            column_map: (0..cols).collect(),
            storage,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> IncidenceKind {
        self.kind
    }

    /// Column index → edge (or hyperedge) id.
    pub fn column_map(&self) -> &[usize] {
        &self.column_map
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense(d) => d[(i, j)],
            Storage::Sparse(cols) => cols[j]
                .iter()
                .find(|&&(r, _)| r == i)
                .map_or(0.0, |&(_, v)| v),
        }
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column_entries(&self, j: usize) -> Vec<(usize, f64)> {
        match &self.storage {
            Storage::Dense(d) => d
                .column(j)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(|(i, &v)| (i, v))
                .collect(),
            Storage::Sparse(cols) => cols[j].clone(),
        }
    }

    pub fn nonzeros(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|&&v| v != 0.0).count(),
            Storage::Sparse(cols) => cols.iter().map(Vec::len).sum(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.storage {
            Storage::Dense(d) => d.clone(),
            Storage::Sparse(cols) => {
                let mut dense = DMatrix::zeros(self.rows, self.cols);
                for (j, col) in cols.iter().enumerate() {
                    for &(i, v) in col {
                        dense[(i, j)] = v;
                    }
                }
                dense
            }
        }
    }

    /// `B x`
    pub fn mul_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        match &self.storage {
            Storage::Dense(d) => d * x,
            Storage::Sparse(cols) => {
                let mut y = DVector::zeros(self.rows);
                for (j, col) in cols.iter().enumerate() {
                    for &(i, v) in col {
                        y[i] += v * x[j];
                    }
                }
                y
            }
        }
    }

    /// `Bᵀ y`
    pub fn tr_mul_vec(&self, y: &DVector<f64>) -> DVector<f64> {
        match &self.storage {
            Storage::Dense(d) => d.tr_mul(y),
            Storage::Sparse(cols) => DVector::from_iterator(
                self.cols,
                cols.iter().map(|col| col.iter().map(|&(i, v)| v * y[i]).sum()),
            ),
        }
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| self.column_entries(j).iter().map(|&(_, v)| v).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        match &self.storage {
            Storage::Dense(d) => d.norm(),
            Storage::Sparse(cols) => cols
                .iter()
                .flatten()
                .map(|&(_, v)| v * v)
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Multiplies the selected columns by −1, i.e. `B·D` with `D = diag(±1)`.
    pub fn flip_orientations(&self, subset: &BTreeSet<usize>) -> Result<Self, GraphError> {
        if self.kind != IncidenceKind::Oriented {
            return Err(GraphError::NotOriented);
        }
        if let Some(&column) = subset.iter().find(|&&j| j >= self.cols) {
            return Err(GraphError::ColumnOutOfRange {
                column,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        match &mut out.storage {
            Storage::Dense(d) => {
                for &j in subset {
                    d.column_mut(j).neg_mut();
                }
            }
            Storage::Sparse(cols) => {
                for &j in subset {
                    for entry in &mut cols[j] {
                        entry.1 = -entry.1;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Oriented incidence matrix of `g`: −1 at the tail, +1 at the head.
pub fn build_incidence(g: &DirectedGraph) -> Result<IncidenceMatrix, GraphError> {
    build_incidence_with_threshold(g, DEFAULT_DENSE_THRESHOLD)
}

pub fn build_incidence_with_threshold(
    g: &DirectedGraph,
    dense_threshold: usize,
) -> Result<IncidenceMatrix, GraphError> {
    let n = g.vertex_count();
    let mut columns = Vec::with_capacity(g.edge_count());
    for (j, &(tail, head)) in g.edges().iter().enumerate() {
        // DirectedGraph already validates these; re-checked because the
        // ±1 column invariant depends on them.
        if tail == head {
            return Err(GraphError::SelfLoop { edge: j, vertex: tail });
        }
        if tail >= n || head >= n {
            return Err(GraphError::VertexOutOfRange {
                edge: j,
                vertex: tail.max(head),
                n,
            });
        }
        let mut col = vec![(tail, -1.0), (head, 1.0)];
        col.sort_unstable_by_key(|&(i, _)| i);
        columns.push(col);
    }
    Ok(IncidenceMatrix::from_columns(
        n,
        IncidenceKind::Oriented,
        columns,
        dense_threshold,
    ))
}

/// Binary node–hyperedge incidence matrix of `h`.
pub fn build_hypergraph_incidence(h: &Hypergraph) -> Result<IncidenceMatrix, GraphError> {
    build_hypergraph_incidence_with_threshold(h, DEFAULT_DENSE_THRESHOLD)
}

pub fn build_hypergraph_incidence_with_threshold(
    h: &Hypergraph,
    dense_threshold: usize,
) -> Result<IncidenceMatrix, GraphError> {
    let n = h.vertex_count();
    let mut columns = Vec::with_capacity(h.hyperedge_count());
    for (e, members) in h.hyperedges().iter().enumerate() {
        if members.is_empty() {
            return Err(GraphError::EmptyHyperedge(e));
        }
        let mut col: Vec<(usize, f64)> = members.iter().map(|&v| (v, 1.0)).collect();
        col.sort_unstable_by_key(|&(i, _)| i);
        col.dedup_by_key(|&mut (i, _)| i);
        columns.push(col);
    }
    Ok(IncidenceMatrix::from_columns(
        n,
        IncidenceKind::Binary,
        columns,
        dense_threshold,
    ))
}
