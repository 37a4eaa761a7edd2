//! Dense simple graphs and exact strongly-regular verification.
//!
//! Adjacency is a row-major bit matrix, so common-neighbour counts are a
//! word-wise AND followed by a popcount.

mod analysis;
mod io;
mod verify;

pub use analysis::{
    admissible_claw_shapes, claw_count_formula, NeighborhoodComponent, NeighborhoodComponents,
    CLAW_DEGREE,
};
pub use verify::{verify_srg, Violation, VerifyReport};

use std::collections::VecDeque;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    BadVertexCount(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph has {graph} vertices but parameters expect {params}")]
    DimensionMismatch { graph: usize, params: usize },
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("edge ({0}, {1}) lies in {2} triangles, expected exactly one")]
    NotLambdaOne(usize, usize, usize),
    #[error("component counts must cover {expected} vertices, got {got}")]
    BadComponentCounts { expected: u64, got: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    fn blank(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::BadVertexCount(n));
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::blank(n)
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. Pairs may be given in either orientation.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::blank(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (i, j) = (a.min(b), a.max(b));
            if g.has_edge(i, j) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
            g.link(i, j);
        }
        Ok(g)
    }

    /// Builds a graph by evaluating `adjacent(i, j)` once for every `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self, GraphError> {
        let mut g = Self::blank(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.link(i, j);
                }
            }
        }
        Ok(g)
    }

    fn link(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            out.extend(self.neighbors(i).filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    pub(crate) fn common_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|N(u) ∩ N(v)|` for distinct `u`, `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::OutOfRange(u, v, self.n));
        }
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.common_count(u, v))
    }

    /// Edge iff non-edge in `self`.
    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.has_edge(i, j)).expect("same vertex count")
    }

    /// Graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::DimensionMismatch {
                graph: self.n,
                params: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(GraphError::OutOfRange(p, p, self.n));
            }
            seen[p] = true;
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        Graph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == self.n
    }

    /// True when every adjacent pair shares `lambda` neighbours and every
    /// non-adjacent pair shares `mu`. Degrees are not inspected.
    pub fn satisfies_lambda_mu(&self, lambda: usize, mu: usize) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                let want = if self.has_edge(i, j) { lambda } else { mu };
                self.common_count(i, j) == want
            })
        })
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d)
    }
}
