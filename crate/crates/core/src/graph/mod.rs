//! Finite multigraphs, their Ihara zeta functions and non-backtracking cycle counts.

mod cycles;
mod poly;
mod zeta;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cycles::{
    brute_force_n, cycle_counts, pgt_ratio, pgt_rows, trace_powers, CycleCountTable, PgtRow,
};
pub use poly::IntPolynomial;
pub use zeta::{
    determinant, hashimoto, zeta_inverse_bass, zeta_inverse_hashimoto, HashimotoMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} uses vertex {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("vertex {vertex} has degree {degree} < 2")]
    LowDegree { vertex: usize, degree: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("m_max must be at least 1")]
    ZeroLength,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    NotConnected,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

#[derive(Debug, Clone, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Undirected multigraph on vertices `0..n`; parallel edges allowed, loops rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        MultiGraph::new(raw.n, raw.edges)
    }
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: i, vertex: u });
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
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

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Adjacency matrix counting parallel edges.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            a[v][u] += 1;
        }
        a
    }

    /// Every vertex has degree at least 2; names the first offender otherwise.
    pub fn check_md2(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        match self.degrees().iter().enumerate().find(|(_, &d)| d < 2) {
            Some((vertex, &degree)) => Err(GraphError::LowDegree { vertex, degree }),
            None => Ok(()),
        }
    }

    /// `Some(q)` if the graph is `(q+1)`-regular with `q >= 1`.
    pub fn regular_q(&self) -> Option<u64> {
        let deg = self.degrees();
        let d0 = *deg.first()?;
        (d0 >= 2 && deg.iter().all(|&d| d == d0)).then(|| d0 as u64 - 1)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_q().is_some()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Two-colouring by breadth-first search, one component at a time.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.neighbours();
        let mut colour = vec![None::<bool>; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].expect("queued vertices are coloured");
                for &y in &adj[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    pub fn cycle(n: usize) -> Self {
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        MultiGraph::new(n, edges).expect("valid by construction")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        MultiGraph::new(10, edges).expect("valid by construction")
    }

    /// The `d`-dimensional cube graph `Q_d`.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let edges = (0..n)
            .flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))))
            .filter(|(x, y)| x < y)
            .collect();
        MultiGraph::new(n, edges).expect("valid by construction")
    }
}

/// The `2m` directed edges: edge `i = (u, v)` yields `2i: u -> v` and `2i+1: v -> u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedEdgeSet {
    tails: Vec<usize>,
    heads: Vec<usize>,
}

impl OrientedEdgeSet {
    pub fn new(g: &MultiGraph) -> Self {
        let mut tails = Vec::with_capacity(2 * g.edge_count());
        let mut heads = Vec::with_capacity(2 * g.edge_count());
        for &(u, v) in g.edges() {
            tails.extend([u, v]);
            heads.extend([v, u]);
        }
        OrientedEdgeSet { tails, heads }
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    /// The reversal of `e`.
    pub fn bar(&self, e: usize) -> usize {
        e ^ 1
    }

    /// Directed edges leaving each vertex.
    pub fn out_edges(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for e in 0..self.len() {
            out[self.tails[e]].push(e);
        }
        out
    }
}
