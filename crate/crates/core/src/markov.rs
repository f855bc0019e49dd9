//! Discrete-time Markov chains: transition matrices, stationary
//! distributions, stationary flows and flow imbalances, PageRank
//! teleportation and uniformization of rate matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{weighted_out_degrees, DirectedWeightedGraph};

/// Row-sum tolerance for stochastic matrices.
pub const STOCHASTIC_TOL: f64 = 1e-12;
/// Default 1-norm residual tolerance for the power iteration.
pub const DEFAULT_TOLERANCE: f64 = 1e-13;
/// Default iteration cap for the power iteration.
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

/// Row-stochastic matrix stored as a sparse part plus a constant added to
/// every entry: `P_ij = rows[i][j] + teleport`.
///
/// The constant term carries PageRank teleportation as a rank-one update so
/// that the sparse pattern of the underlying walk is preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    num_states: usize,
    rows: Vec<Vec<(usize, f64)>>,
    teleport: f64,
}

impl TransitionMatrix {
    /// Validates a sparse row-stochastic matrix. Entries within a row are
    /// sorted by column; zeros are dropped.
    pub fn from_rows(num_states: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        Self::from_parts(num_states, rows, 0.0)
    }

    fn from_parts(num_states: usize, mut rows: Vec<Vec<(usize, f64)>>, teleport: f64) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::EmptyGraph);
        }
        if rows.len() != num_states {
            return Err(Error::InvalidParameter("row count differs from state count"));
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.retain(|&(_, p)| p != 0.0);
            row.sort_by_key(|&(j, _)| j);
            let mut sum = teleport * num_states as f64;
            for (k, &(j, p)) in row.iter().enumerate() {
                if j >= num_states {
                    return Err(Error::VertexOutOfRange {
                        vertex: j,
                        num_vertices: num_states,
                    });
                }
                if k > 0 && row[k - 1].0 == j {
                    return Err(Error::DuplicateEdge(i, j));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter("transition probability outside [0, 1]"));
                }
                sum += p;
            }
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                if row.is_empty() && teleport == 0.0 {
                    return Err(Error::DanglingVertex(i));
                }
                return Err(Error::InvalidParameter("row does not sum to one"));
            }
        }
        Ok(Self {
            num_states,
            rows,
            teleport,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Sparse part of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    /// Constant added to every entry (zero without teleportation).
    pub fn teleport(&self) -> f64 {
        self.teleport
    }

    /// Sparse part of `P_ij` only.
    pub fn sparse_entry(&self, i: usize, j: usize) -> f64 {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| row[k].1)
            .unwrap_or(0.0)
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.sparse_entry(i, j) + self.teleport
    }

    /// `x^T P` for a single step.
    pub fn left_multiply(&self, x: &[f64]) -> Vec<f64> {
        let mass: f64 = x.iter().sum();
        let mut y = vec![self.teleport * mass; self.num_states];
        for (i, row) in self.rows.iter().enumerate() {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for &(j, p) in row {
                y[j] += xi * p;
            }
        }
        y
    }

    /// Dense copy, row-major. Intended for small chains and test oracles.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.num_states)
            .map(|i| (0..self.num_states).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// `P = D^{-1} A`. Fails on any vertex with zero out-degree.
pub fn build_transition(g: &DirectedWeightedGraph) -> Result<TransitionMatrix> {
    let degrees = weighted_out_degrees(g);
    if let Some(i) = degrees.iter().position(|&d| d == 0.0) {
        return Err(Error::DanglingVertex(i));
    }
    let rows = (0..g.num_vertices())
        .map(|i| g.out_edges(i).iter().map(|e| (e.dst, e.weight / degrees[i])).collect())
        .collect();
    TransitionMatrix::from_rows(g.num_vertices(), rows)
}

/// `x^T P^steps`.
pub fn evolve(x: &[f64], p: &TransitionMatrix, steps: usize) -> Vec<f64> {
    let mut cur = x.to_vec();
    for _ in 0..steps {
        cur = p.left_multiply(&cur);
    }
    cur
}

/// Result of the power iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    pub pi: Vec<f64>,
    /// `||pi^T P - pi^T||_1` for the returned `pi`.
    pub residual: f64,
    pub iterations: usize,
}

/// Power iteration from the uniform vector until the 1-norm residual drops
/// to `tol`. Periodic or reducible chains typically end in
/// [`Error::NotConverged`].
pub fn stationary_distribution(p: &TransitionMatrix, tol: f64, max_iters: usize) -> Result<StationaryDistribution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    let n = p.num_states();
    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for iterations in 0..=max_iters {
        let mut y = p.left_multiply(&x);
        residual = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        if residual <= tol {
            return Ok(StationaryDistribution {
                pi: x,
                residual,
                iterations,
            });
        }
        let s: f64 = y.iter().sum();
        for v in &mut y {
            *v /= s;
        }
        x = y;
    }
    Err(Error::NotConverged {
        residual,
        iterations: max_iters,
    })
}

/// Stationary flows `F_ij = pi_i P_ij`, stored sparsely and sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    num_states: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl FlowField {
    /// Builds a flow field from arbitrary entries; zeros are dropped and
    /// repeated pairs are summed.
    pub fn from_entries(num_states: usize, entries: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut list: Vec<(usize, usize, f64)> = Vec::new();
        for (i, j, f) in entries {
            if i >= num_states || j >= num_states {
                return Err(Error::VertexOutOfRange {
                    vertex: i.max(j),
                    num_vertices: num_states,
                });
            }
            if !f.is_finite() || f < 0.0 {
                return Err(Error::InvalidWeight {
                    src: i,
                    dst: j,
                    weight: f,
                });
            }
            list.push((i, j, f));
        }
        list.sort_by_key(|a| (a.0, a.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(list.len());
        for (i, j, f) in list {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (i, j) => last.2 += f,
                _ => merged.push((i, j, f)),
            }
        }
        merged.retain(|e| e.2 != 0.0);
        Ok(Self {
            num_states,
            entries: merged,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.num_states];
        for &(i, _, f) in &self.entries {
            s[i] += f;
        }
        s
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.num_states];
        for &(_, j, f) in &self.entries {
            s[j] += f;
        }
        s
    }
}

/// `F_ij = pi_i P_ij`, teleportation transitions included.
pub fn stationary_flows(pi: &[f64], p: &TransitionMatrix) -> FlowField {
    let n = p.num_states();
    let mut entries = Vec::new();
    for i in 0..n {
        if p.teleport() == 0.0 {
            entries.extend(p.row(i).iter().map(|&(j, pij)| (i, j, pi[i] * pij)));
        } else {
            entries.extend((0..n).map(|j| (i, j, pi[i] * p.entry(i, j))));
        }
    }
    entries.retain(|e| e.2 != 0.0);
    FlowField { num_states: n, entries }
}

/// `F_ij = pi_i P_ij` over the sparse part only, i.e. without the flows
/// carried by teleportation. Used for plots.
pub fn stationary_flows_without_teleport(pi: &[f64], p: &TransitionMatrix) -> FlowField {
    let n = p.num_states();
    let mut entries = Vec::new();
    for i in 0..n {
        entries.extend(p.row(i).iter().map(|&(j, pij)| (i, j, pi[i] * pij)));
    }
    entries.retain(|e| e.2 != 0.0);
    FlowField { num_states: n, entries }
}

/// Antisymmetric imbalances `Delta_ij = F_ij - F_ji`.
///
/// One value is stored per unordered pair `(i, j)`, `i < j`, and the other
/// orientation is its exact negation.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceField {
    num_states: usize,
    deltas: Vec<(usize, usize, f64)>,
}

impl ImbalanceField {
    /// From explicit `Delta_ij` values; pairs are canonicalized to `i < j`.
    pub fn from_pairs(num_states: usize, pairs: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut deltas: Vec<(usize, usize, f64)> = Vec::new();
        for (i, j, d) in pairs {
            if i >= num_states || j >= num_states {
                return Err(Error::VertexOutOfRange {
                    vertex: i.max(j),
                    num_vertices: num_states,
                });
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if !d.is_finite() {
                return Err(Error::InvalidWeight {
                    src: i,
                    dst: j,
                    weight: d,
                });
            }
            deltas.push(if i < j { (i, j, d) } else { (j, i, -d) });
        }
        deltas.sort_by_key(|a| (a.0, a.1));
        if let Some(w) = deltas.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { num_states, deltas })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// `(i, j, Delta_ij)` with `i < j`, including balanced pairs.
    pub fn pairs(&self) -> &[(usize, usize, f64)] {
        &self.deltas
    }

    /// `Delta_ij` for any ordered pair (zero when no flow in either direction).
    pub fn delta(&self, i: usize, j: usize) -> f64 {
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        self.deltas
            .binary_search_by(|e| (e.0, e.1).cmp(&(a, b)))
            .map(|k| sign * self.deltas[k].2)
            .unwrap_or(0.0)
    }

    /// Filtration function `f({i, j}) = |Delta_ij|` over pairs with nonzero imbalance.
    pub fn filtration_values(&self) -> Vec<((usize, usize), f64)> {
        self.deltas
            .iter()
            .filter(|e| e.2 != 0.0)
            .map(|&(i, j, d)| ((i, j), d.abs()))
            .collect()
    }

    /// Pairs that carry flow but no imbalance.
    pub fn balanced_pairs(&self) -> Vec<(usize, usize)> {
        self.deltas
            .iter()
            .filter(|e| e.2 == 0.0)
            .map(|&(i, j, _)| (i, j))
            .collect()
    }

    /// `sum_j Delta_ij` per vertex.
    pub fn divergence(&self) -> Vec<f64> {
        let mut div = vec![0.0; self.num_states];
        for &(i, j, d) in &self.deltas {
            div[i] += d;
            div[j] -= d;
        }
        div
    }

    pub fn max_abs(&self) -> f64 {
        self.deltas.iter().fold(0.0, |m, e| m.max(e.2.abs()))
    }
}

/// One subtraction per unordered pair; self-flows are ignored.
pub fn flow_imbalance(f: &FlowField) -> ImbalanceField {
    let mut pairs: Vec<(usize, usize)> = f
        .entries()
        .iter()
        .filter(|e| e.0 != e.1)
        .map(|&(i, j, _)| if i < j { (i, j) } else { (j, i) })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let deltas = pairs
        .into_iter()
        .map(|(i, j)| (i, j, f.get(i, j) - f.get(j, i)))
        .collect();
    ImbalanceField {
        num_states: f.num_states(),
        deltas,
    }
}

/// `P(alpha) = alpha P + (1 - alpha) N^{-1} 1 1^T`. At `alpha = 1` the input
/// is returned unchanged.
pub fn pagerank_matrix(p: &TransitionMatrix, alpha: f64) -> Result<TransitionMatrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
    }
    if alpha == 1.0 {
        return Ok(p.clone());
    }
    let n = p.num_states();
    let rows = p
        .rows
        .iter()
        .map(|row| row.iter().map(|&(j, v)| (j, alpha * v)).collect())
        .collect();
    let teleport = alpha * p.teleport() + (1.0 - alpha) / n as f64;
    TransitionMatrix::from_parts(n, rows, teleport)
}

/// PageRank chain straight from a graph. With `dangling_patch`, vertices
/// without out-edges get a uniform row before teleportation is mixed in.
pub fn pagerank_from_graph(g: &DirectedWeightedGraph, alpha: f64, dangling_patch: bool) -> Result<TransitionMatrix> {
    let degrees = weighted_out_degrees(g);
    let n = g.num_vertices();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    for i in 0..n {
        if degrees[i] == 0.0 {
            if !dangling_patch {
                return Err(Error::DanglingVertex(i));
            }
            rows.push((0..n).map(|j| (j, 1.0 / n as f64)).collect());
        } else {
            rows.push(g.out_edges(i).iter().map(|e| (e.dst, e.weight / degrees[i])).collect());
        }
    }
    let base = TransitionMatrix::from_rows(n, rows)?;
    pagerank_matrix(&base, alpha)
}

/// Continuous-time generator given by its off-diagonal rates; the diagonal
/// is implied as minus the row's exit rate.
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix {
    num_states: usize,
    rates: Vec<(usize, usize, f64)>,
}

impl RateMatrix {
    pub fn new(num_states: usize, rates: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for (i, j, q) in rates {
            if i >= num_states || j >= num_states {
                return Err(Error::VertexOutOfRange {
                    vertex: i.max(j),
                    num_vertices: num_states,
                });
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if !q.is_finite() || q < 0.0 {
                return Err(Error::InvalidWeight {
                    src: i,
                    dst: j,
                    weight: q,
                });
            }
            list.push((i, j, q));
        }
        list.sort_by_key(|a| (a.0, a.1));
        if let Some(w) = list.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        list.retain(|e| e.2 != 0.0);
        Ok(Self {
            num_states,
            rates: list,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Off-diagonal rates sorted by `(i, j)`.
    pub fn rates(&self) -> &[(usize, usize, f64)] {
        &self.rates
    }

    pub fn exit_rates(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.num_states];
        for &(i, _, q) in &self.rates {
            out[i] += q;
        }
        out
    }

    /// `Q_ij` including the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return -self.rates.iter().filter(|e| e.0 == i).map(|e| e.2).sum::<f64>();
        }
        self.rates
            .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
            .map(|k| self.rates[k].2)
            .unwrap_or(0.0)
    }

    pub fn max_exit_rate(&self) -> f64 {
        self.exit_rates().into_iter().fold(0.0, f64::max)
    }
}

/// Default uniformization constant: 1% above the largest exit rate.
pub fn default_rate_scale(q: &RateMatrix) -> f64 {
    1.01 * q.max_exit_rate()
}

/// `P = I + Q / Lambda`. Shares its stationary distribution with `Q`.
pub fn ctmc_uniformize(q: &RateMatrix, rate_scale: Option<f64>) -> Result<TransitionMatrix> {
    let max_exit = q.max_exit_rate();
    if max_exit == 0.0 {
        return Err(Error::ZeroRates);
    }
    let scale = match rate_scale {
        Some(s) if !(s.is_finite() && s >= max_exit) => return Err(Error::RateScaleTooSmall { scale: s, max_exit }),
        Some(s) => s,
        None => default_rate_scale(q),
    };
    let exits = q.exit_rates();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); q.num_states()];
    for &(i, j, r) in q.rates() {
        rows[i].push((j, r / scale));
    }
    for (i, row) in rows.iter_mut().enumerate() {
        let stay = 1.0 - exits[i] / scale;
        if stay > 0.0 {
            row.push((i, stay));
        }
    }
    TransitionMatrix::from_rows(q.num_states(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn cycle3() -> TransitionMatrix {
        build_transition(&DirectedWeightedGraph::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()).unwrap()
    }

    #[test]
    fn row_normalization() {
        let g = DirectedWeightedGraph::new(
            3,
            [
                Edge::new(0, 1, 3.0),
                Edge::new(0, 2, 1.0),
                Edge::new(1, 0, 1.0),
                Edge::new(2, 0, 1.0),
            ],
        )
        .unwrap();
        let p = build_transition(&g).unwrap();
        assert_eq!(p.entry(0, 1), 0.75);
        assert_eq!(p.entry(0, 2), 0.25);
        let tri = DirectedWeightedGraph::undirected(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let p = build_transition(&tri).unwrap();
        assert_eq!(p.entry(1, 0), 0.5);
        assert_eq!(p.entry(1, 2), 0.5);
    }

    #[test]
    fn dangling_is_an_error() {
        let g = DirectedWeightedGraph::from_pairs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(build_transition(&g), Err(Error::DanglingVertex(2)));
        assert_eq!(pagerank_from_graph(&g, 0.85, false), Err(Error::DanglingVertex(2)));
        let p = pagerank_from_graph(&g, 0.85, true).unwrap();
        let row: f64 = (0..3).map(|j| p.entry(2, j)).sum();
        assert!((row - 1.0).abs() < 1e-15);
        assert!((p.entry(2, 0) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn evolve_identity_and_rotation() {
        let p = cycle3();
        let x = [0.2, 0.3, 0.5];
        assert_eq!(evolve(&x, &p, 0), x.to_vec());
        assert_eq!(evolve(&[1.0, 0.0, 0.0], &p, 3), vec![1.0, 0.0, 0.0]);
        assert_eq!(evolve(&[1.0, 0.0, 0.0], &p, 1), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn stationary_is_fixed_point() {
        let p = cycle3();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 100).unwrap();
        assert_eq!(evolve(&st.pi, &p, 1), st.pi);
    }

    #[test]
    fn two_cycle_converges_from_uniform() {
        let p = build_transition(&DirectedWeightedGraph::from_pairs(2, [(0, 1), (1, 0)]).unwrap()).unwrap();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 10).unwrap();
        assert_eq!(st.pi, vec![0.5, 0.5]);
    }

    #[test]
    fn periodic_unbalanced_start_does_not_converge() {
        // bipartite path 0-1-2: uniform start has a component on the -1 eigenvector
        let g = DirectedWeightedGraph::undirected(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let p = build_transition(&g).unwrap();
        assert!(matches!(
            stationary_distribution(&p, DEFAULT_TOLERANCE, 1000),
            Err(Error::NotConverged { iterations: 1000, .. })
        ));
    }

    #[test]
    fn cycle_flows_and_imbalance() {
        let p = cycle3();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 10).unwrap();
        let f = stationary_flows(&st.pi, &p);
        assert_eq!(f.entries().len(), 3);
        for &(_, _, v) in f.entries() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        let d = flow_imbalance(&f);
        assert!((d.delta(0, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((d.delta(2, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.delta(0, 2), -d.delta(2, 0));
        assert_eq!(d.filtration_values().len(), 3);
    }

    #[test]
    fn undirected_imbalance_vanishes() {
        let g = DirectedWeightedGraph::undirected(4, [(0, 1, 2.0), (1, 2, 1.0), (0, 2, 3.0), (2, 3, 1.0)]).unwrap();
        let p = build_transition(&g).unwrap();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 100_000).unwrap();
        let f = stationary_flows(&st.pi, &p);
        let d = flow_imbalance(&f);
        assert!(d.max_abs() <= 1e-12);
    }

    #[test]
    fn pagerank_alpha_one_is_identity() {
        let p = cycle3();
        assert_eq!(pagerank_matrix(&p, 1.0).unwrap(), p);
        assert!(pagerank_matrix(&p, 0.0).is_err());
        assert!(pagerank_matrix(&p, 1.5).is_err());
    }

    #[test]
    fn pagerank_entry_floor() {
        let g = DirectedWeightedGraph::from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let p = pagerank_matrix(&build_transition(&g).unwrap(), 0.85).unwrap();
        for i in 0..5 {
            let s: f64 = (0..5).map(|j| p.entry(i, j)).sum();
            assert!((s - 1.0).abs() < 1e-12);
            for j in 0..5 {
                assert!(p.entry(i, j) >= 0.15 / 5.0 - 1e-17);
            }
        }
    }

    #[test]
    fn uniformize_two_state() {
        let q = RateMatrix::new(2, [(0, 1, 2.0), (1, 0, 2.0)]).unwrap();
        let p = ctmc_uniformize(&q, None).unwrap();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 1000).unwrap();
        assert!((st.pi[0] - 0.5).abs() < 1e-15);
        assert_eq!(
            ctmc_uniformize(&RateMatrix::new(2, []).unwrap(), None),
            Err(Error::ZeroRates)
        );
        assert!(matches!(
            ctmc_uniformize(&q, Some(1.0)),
            Err(Error::RateScaleTooSmall { .. })
        ));
        assert_eq!(q.entry(0, 0), -2.0);
    }

    #[test]
    fn detailed_balance_rates_have_no_imbalance() {
        // birth-death chain is reversible
        let q = RateMatrix::new(3, [(0, 1, 1.0), (1, 0, 2.0), (1, 2, 0.5), (2, 1, 3.0)]).unwrap();
        let p = ctmc_uniformize(&q, None).unwrap();
        let st = stationary_distribution(&p, DEFAULT_TOLERANCE, 100_000).unwrap();
        let d = flow_imbalance(&stationary_flows(&st.pi, &p));
        assert!(d.max_abs() <= 1e-13);
    }

    #[test]
    fn from_rows_validation() {
        assert!(TransitionMatrix::from_rows(2, vec![vec![(1, 1.0)], vec![(0, 0.5)]]).is_err());
        assert_eq!(
            TransitionMatrix::from_rows(2, vec![vec![(1, 1.0)], vec![]]),
            Err(Error::DanglingVertex(1))
        );
    }
}
