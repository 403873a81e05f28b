//! Directed graphs and hypergraphs, plus the topological counts
//! (weak components, cycle rank) that the incidence spectrum must reproduce.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// A directed multigraph without self-loops.
///
/// Edge order is significant: edge `j` becomes column `j` of the incidence
/// matrix. Parallel and antiparallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl DirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (j, &(tail, head)) in edges.iter().enumerate() {
            for vertex in [tail, head] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { edge: j, vertex, n });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop { edge: j, vertex: tail });
            }
        }
        Ok(Self {
            n,
            edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of vertex `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(t, _)| t == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, h)| h == v).count()
    }

    /// Undirected neighbour lists (parallel edges collapsed, sorted).
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(t, h) in &self.edges {
            adj[t].push(h);
            adj[h].push(t);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Weakly connected components.
    pub fn connected_components(&self) -> Components {
        let mut uf = UnionFind::new(self.n);
        for &(t, h) in &self.edges {
            uf.union(t, h);
        }
        Components::from_union_find(&mut uf)
    }

    /// First Betti number `m - n + c`.
    pub fn cycle_rank(&self) -> usize {
        let c = self.connected_components().count();
        self.edges.len() + c - self.n
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().count() == 1
    }
}

/// Vertex partition into components. Component ids are assigned in order of
/// each component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    membership: Vec<usize>,
    count: usize,
}

impl Components {
    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut membership = vec![0; n];
        let mut count = 0;
        for v in 0..n {
            let root = uf.find(v);
            if id_of_root[root] == usize::MAX {
                id_of_root[root] = count;
                count += 1;
            }
            membership[v] = id_of_root[root];
        }
        Self { membership, count }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.count];
        for (v, &c) in self.membership.iter().enumerate() {
            groups[c].push(v);
        }
        groups
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Hypergraph over `n` vertices. Hyperedges are non-empty vertex sets; order is
/// significant and duplicates are kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Hypergraph {
    /// Members are sorted and de-duplicated within each hyperedge.
    pub fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut cleaned = Vec::with_capacity(hyperedges.len());
        for (h, mut members) in hyperedges.into_iter().enumerate() {
            if members.is_empty() {
                return Err(GraphError::EmptyHyperedge(h));
            }
            if let Some(&vertex) = members.iter().find(|&&v| v >= n) {
                return Err(GraphError::VertexOutOfRange { edge: h, vertex, n });
            }
            members.sort_unstable();
            members.dedup();
            cleaned.push(members);
        }
        Ok(Self {
            n,
            hyperedges: cleaned,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }
}
