//! Directed weighted graphs and their undirected skeletons.
//!
//! Edges are kept sorted by `(src, dst)` so that every downstream iteration
//! order is a pure function of the input.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A weighted directed edge `src -> dst`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(src: usize, dst: usize, weight: f64) -> Self {
        Self { src, dst, weight }
    }
}

/// Construction flags for [`DirectedWeightedGraph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphOptions {
    /// Accept `i -> i` edges. They are kept for Markov modelling and dropped
    /// from every simplicial construction.
    pub allow_self_loops: bool,
}

/// Vertex set `0..num_vertices` with weighted directed edges (adjacency `A`).
///
/// Zero-weight edges are dropped on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedWeightedGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl DirectedWeightedGraph {
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Self::with_options(num_vertices, edges, GraphOptions::default())
    }

    pub fn with_options(
        num_vertices: usize,
        edges: impl IntoIterator<Item = Edge>,
        options: GraphOptions,
    ) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut kept = Vec::new();
        for e in edges {
            for v in [e.src, e.dst] {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices,
                    });
                }
            }
            if !e.weight.is_finite() || e.weight < 0.0 {
                return Err(Error::InvalidWeight {
                    src: e.src,
                    dst: e.dst,
                    weight: e.weight,
                });
            }
            if e.src == e.dst && !options.allow_self_loops {
                return Err(Error::SelfLoop(e.src));
            }
            kept.push(e);
        }
        kept.sort_by_key(|a| (a.src, a.dst));
        if let Some(w) = kept.windows(2).find(|w| (w[0].src, w[0].dst) == (w[1].src, w[1].dst)) {
            return Err(Error::DuplicateEdge(w[0].src, w[0].dst));
        }
        kept.retain(|e| e.weight != 0.0);
        Ok(Self {
            num_vertices,
            edges: kept,
        })
    }

    /// Unweighted graph from `(src, dst)` pairs, every weight 1.
    pub fn from_pairs(num_vertices: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(num_vertices, pairs.into_iter().map(|(s, d)| Edge::new(s, d, 1.0)))
    }

    /// Both directions of every undirected pair, weight 1 (or the given weight).
    pub fn undirected(num_vertices: usize, pairs: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, j, w) in pairs {
            edges.push(Edge::new(i, j, w));
            edges.push(Edge::new(j, i, w));
        }
        Self::new(num_vertices, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Edges sorted by `(src, dst)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, src: usize, dst: usize) -> f64 {
        self.edges
            .binary_search_by(|e| (e.src, e.dst).cmp(&(src, dst)))
            .map(|k| self.edges[k].weight)
            .unwrap_or(0.0)
    }

    /// Out-neighbours of `v` with weights, in increasing `dst` order.
    pub fn out_edges(&self, v: usize) -> &[Edge] {
        let lo = self.edges.partition_point(|e| e.src < v);
        let hi = self.edges.partition_point(|e| e.src <= v);
        &self.edges[lo..hi]
    }
}

/// Canonical set of unordered pairs `{i, j}`, stored as `(i, j)` with `i < j`
/// and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedEdgeSet {
    edges: Vec<(usize, usize)>,
}

impl UndirectedEdgeSet {
    /// Canonicalizes arbitrary pairs; self-pairs and repeats are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Largest vertex id plus one (0 for an empty set).
    pub fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|&(_, j)| j + 1).max().unwrap_or(0)
    }

    /// Sorted neighbour lists over `num_vertices` vertices.
    pub fn neighbors(&self, num_vertices: usize) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); num_vertices];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Bidirectional unit-weight digraph with the same skeleton.
    pub fn symmetrize(&self, num_vertices: usize) -> Result<DirectedWeightedGraph> {
        DirectedWeightedGraph::undirected(num_vertices, self.edges.iter().map(|&(i, j)| (i, j, 1.0)))
    }
}

/// Forget direction and weight: `{i, j}` is present iff `A_ij != 0` or `A_ji != 0`.
/// Self-loops are dropped.
pub fn undirected_skeleton(g: &DirectedWeightedGraph) -> UndirectedEdgeSet {
    UndirectedEdgeSet::from_pairs(g.edges().iter().map(|e| (e.src, e.dst)))
}

/// Weighted out-degrees `D_ii = sum_j A_ij`.
pub fn weighted_out_degrees(g: &DirectedWeightedGraph) -> Vec<f64> {
    let mut d = vec![0.0; g.num_vertices()];
    for e in g.edges() {
        d[e.src] += e.weight;
    }
    d
}
