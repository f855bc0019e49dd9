//! Small graphs with known topology, built as a symmetric base plus
//! directed circulations so that every imbalance is exactly the
//! circulation placed on it.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{DirectedWeightedGraph, Edge, UndirectedEdgeSet};

/// Graph with weight `w` both ways on each `symmetric` pair plus `c` along
/// each directed cycle of `circulations`. Its random walk has stationary
/// flows equal to these weights up to normalization.
pub fn circulation_graph(
    num_vertices: usize,
    symmetric: &[(usize, usize, f64)],
    circulations: &[(&[usize], f64)],
) -> Result<DirectedWeightedGraph> {
    let mut w: Vec<((usize, usize), f64)> = Vec::new();
    let mut add = |i: usize, j: usize, x: f64| match w.iter_mut().find(|e| e.0 == (i, j)) {
        Some(e) => e.1 += x,
        None => w.push(((i, j), x)),
    };
    for &(i, j, x) in symmetric {
        add(i, j, x);
        add(j, i, x);
    }
    for &(cycle, c) in circulations {
        for k in 0..cycle.len() {
            add(cycle[k], cycle[(k + 1) % cycle.len()], c);
        }
    }
    DirectedWeightedGraph::new(num_vertices, w.into_iter().map(|((i, j), x)| Edge::new(i, j, x)))
}

/// Seven vertices, ten edges, two triangles and two independent holes.
pub fn two_hole_edges() -> UndirectedEdgeSet {
    UndirectedEdgeSet::from_pairs([
        (0, 1),
        (0, 2),
        (1, 2),
        (2, 3),
        (2, 4),
        (3, 4),
        (4, 5),
        (5, 6),
        (0, 6),
        (1, 5),
    ])
}

/// Edge values on a graph whose first hole opens at 3, second at 2, and
/// the first closes at 1 when the diagonal `0-2` brings in two triangles.
pub fn staged_holes() -> Vec<((usize, usize), f64)> {
    alloc::vec![
        ((0, 1), 5.0),
        ((1, 2), 4.5),
        ((2, 3), 4.0),
        ((0, 3), 3.0),
        ((3, 4), 4.8),
        ((4, 5), 4.6),
        ((5, 6), 4.2),
        ((3, 6), 2.0),
        ((0, 2), 1.0),
    ]
}

/// Four convection loops joined by balanced bridges: two squares (`0..4`,
/// `4..8`), a triangle `8, 9, 10`, and a square `11, 12, 13, 14` with a
/// detour `12 -> 15 -> 13` that forms a second loop homologous to the first.
pub fn convection_loops() -> DirectedWeightedGraph {
    circulation_graph(
        16,
        &[(3, 4, 0.5), (7, 8, 0.5), (10, 11, 0.5)],
        &[
            (&[0, 1, 2, 3], 1.0),
            (&[4, 5, 6, 7], 0.8),
            (&[8, 9, 10], 0.6),
            (&[11, 12, 13, 14], 0.5),
            (&[11, 12, 15, 13, 14], 0.3),
        ],
    )
    .expect("valid fixture")
}

/// A strong loop that is filled before a weak loop opens: square `0..4`
/// with diagonal `0-2` carried by the detour `2 -> 8 -> 0`, and a weak
/// square `4..8`.
pub fn early_death() -> DirectedWeightedGraph {
    circulation_graph(
        9,
        &[(3, 4, 0.05)],
        &[(&[0, 1, 2, 3], 1.0), (&[0, 2, 8], 0.5), (&[4, 5, 6, 7], 0.1)],
    )
    .expect("valid fixture")
}

/// Two loops on separated scales. The strong square `0..4` is spanned by a
/// weak diagonal; the weak square `4..8` by a strong one.
pub fn two_scales() -> DirectedWeightedGraph {
    circulation_graph(
        10,
        &[(3, 4, 0.5)],
        &[
            (&[0, 1, 2, 3], 1.0),
            (&[0, 2, 9], 2e-3),
            (&[4, 5, 6, 7], 1e-3),
            (&[4, 6, 8], 1.0),
        ],
    )
    .expect("valid fixture")
}

/// Three loops of decreasing strength; under PageRank teleportation the
/// weakest (`8..12`, next to the heavy pair `8-12`) is filled before it
/// opens once `alpha` drops below about 0.71. Intended lifespan threshold:
/// [`BIFURCATION_MIN_LIFESPAN`].
pub fn bifurcation() -> DirectedWeightedGraph {
    let mut sym = alloc::vec![(3, 4, 0.5), (7, 8, 0.5), (8, 12, 5.0), (9, 12, 0.2)];
    for ring in [[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]] {
        for k in 0..4 {
            sym.push((ring[k], ring[(k + 1) % 4], 0.2));
        }
    }
    circulation_graph(
        13,
        &sym,
        &[(&[0, 1, 2, 3], 1.0), (&[4, 5, 6, 7], 0.7), (&[8, 9, 10, 11], 0.3)],
    )
    .expect("valid fixture")
}

pub const BIFURCATION_MIN_LIFESPAN: f64 = 2e-3;

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n)
            .map(|k| {
                if k + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Directed version of [`two_hole_edges`]: one-way loops `0 -> 1 -> 5 -> 6`
/// and `1 -> 2 -> 4 -> 5`, the remaining pairs both ways.
pub fn two_hole_digraph() -> DirectedWeightedGraph {
    DirectedWeightedGraph::new(
        7,
        [
            Edge::new(0, 1, 2.0),
            Edge::new(0, 2, 1.0),
            Edge::new(1, 2, 1.0),
            Edge::new(1, 5, 1.0),
            Edge::new(2, 0, 1.0),
            Edge::new(2, 3, 1.0),
            Edge::new(2, 4, 2.0),
            Edge::new(3, 2, 1.0),
            Edge::new(3, 4, 1.0),
            Edge::new(4, 3, 1.0),
            Edge::new(4, 5, 1.0),
            Edge::new(5, 1, 0.5),
            Edge::new(5, 6, 1.0),
            Edge::new(6, 0, 1.0),
        ],
    )
    .expect("valid fixture")
}
