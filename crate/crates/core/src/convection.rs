//! Convection cycles: simple directed cycles of the positive-imbalance
//! digraph, and their relation to homological 1-cycles.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{BoundarySpace, Chain, Simplex};
use crate::error::{Error, Result};
use crate::filtration::FilteredCliqueComplex;
use crate::markov::ImbalanceField;
use crate::persistence::PersistenceBarcode;

/// Bars shorter than this fraction of their birth value are treated as
/// ties when matching cycles.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Default bound on cycle length during enumeration.
pub const DEFAULT_MAX_CYCLE_LENGTH: usize = 20;
/// Default bound on the number of enumerated cycles.
pub const DEFAULT_MAX_CYCLE_COUNT: usize = 1_000_000;

/// Directed edges `(i, j, Delta_ij)` for every `Delta_ij > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceDigraph {
    num_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl ImbalanceDigraph {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Sorted by `(src, dst)`.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
            .ok()
            .map(|k| self.edges[k].2)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
        }
        adj
    }
}

/// Positive-imbalance digraph. Imbalances with `|Delta| <= balance_tol`
/// are treated as balanced.
pub fn imbalance_digraph(delta: &ImbalanceField, balance_tol: f64) -> ImbalanceDigraph {
    let mut edges: Vec<(usize, usize, f64)> = delta
        .pairs()
        .iter()
        .filter(|e| e.2.abs() > balance_tol)
        .map(|&(i, j, d)| if d > 0.0 { (i, j, d) } else { (j, i, -d) })
        .collect();
    edges.sort_by_key(|a| (a.0, a.1));
    ImbalanceDigraph {
        num_vertices: delta.num_states(),
        edges,
    }
}

/// A simple directed cycle, rotated to start at its smallest vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvectionCycle {
    pub vertices: Vec<usize>,
    /// Smallest imbalance along the cycle.
    pub min_flow: f64,
}

impl ConvectionCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive pairs, closing back to the start.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    pub fn chain(&self) -> Chain {
        Chain::from_edges(self.directed_edges())
    }
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    start: usize,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    max_length: usize,
    max_count: usize,
    found: Vec<Vec<usize>>,
    truncated: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                pending.append(&mut self.blocked_by[u]);
            }
        }
    }

    // Returns true when a cycle through `v` may exist; depth cut-offs
    // count as "may exist" so that `v` is never blocked on partial evidence.
    fn circuit(&mut self, v: usize) -> bool {
        let mut closes = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let adj = self.adj;
        for &w in &adj[v] {
            if self.truncated {
                break;
            }
            if w < self.start {
                continue;
            }
            if w == self.start {
                if self.found.len() == self.max_count {
                    self.truncated = true;
                    break;
                }
                self.found.push(self.stack.clone());
                closes = true;
            } else if !self.blocked[w] {
                if self.stack.len() < self.max_length {
                    if self.circuit(w) {
                        closes = true;
                    }
                } else {
                    closes = true;
                }
            }
        }
        if closes {
            self.unblock(v);
        } else {
            for &w in &adj[v] {
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        closes
    }
}

/// All simple directed cycles of length at most `max_length`, ordered by
/// length then vertex sequence.
///
/// When more than `max_count` cycles exist the result is
/// [`Error::Truncated`] carrying the cycles found so far.
pub fn enumerate_convection_cycles(
    g: &ImbalanceDigraph,
    max_length: usize,
    max_count: usize,
) -> Result<Vec<ConvectionCycle>> {
    if max_length < 3 {
        return Err(Error::InvalidParameter("max_length must be at least 3"));
    }
    let adj = g.adjacency();
    let n = g.num_vertices();
    let mut search = Johnson {
        adj: &adj,
        start: 0,
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        stack: Vec::new(),
        max_length,
        max_count,
        found: Vec::new(),
        truncated: false,
    };
    for s in 0..n {
        search.start = s;
        for v in s..n {
            search.blocked[v] = false;
            search.blocked_by[v].clear();
        }
        search.circuit(s);
        if search.truncated {
            break;
        }
    }
    let mut cycles: Vec<ConvectionCycle> = search
        .found
        .into_iter()
        .map(|vertices| {
            let k = vertices.len();
            let min_flow = (0..k)
                .map(|i| g.weight(vertices[i], vertices[(i + 1) % k]).unwrap())
                .fold(f64::INFINITY, f64::min);
            ConvectionCycle { vertices, min_flow }
        })
        .collect();
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    if search.truncated {
        return Err(Error::Truncated {
            found: cycles.len(),
            partial: cycles,
        });
    }
    Ok(cycles)
}

/// How a bar's representative looks as an edge set.
#[derive(Debug, Clone, PartialEq)]
pub enum RepresentativeShape {
    /// A single closed loop, walked from its smallest vertex toward the
    /// smaller neighbour. `consistent` holds when every imbalance points
    /// the same way around the loop.
    Loop { vertices: Vec<usize>, consistent: bool },
    /// A GF(2) sum of several loops (or vertices of degree above two).
    Composite,
}

/// Classification of one dimension-1 bar.
#[derive(Debug, Clone, PartialEq)]
pub struct BarClassification {
    /// Index into `PersistenceBarcode::bars`.
    pub bar: usize,
    pub representative: Chain,
    pub shape: RepresentativeShape,
    /// Indices of convection cycles homologous to this bar's class.
    pub matched_cycles: Vec<usize>,
    /// Matched to exactly one cycle that matches no other bar.
    pub one_to_one: bool,
}

impl BarClassification {
    pub fn convection_consistent(&self) -> bool {
        matches!(self.shape, RepresentativeShape::Loop { consistent: true, .. })
    }
}

/// Status of one convection cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleStatus {
    pub cycle: ConvectionCycle,
    /// Whether the cycle bounds triangles of the final complex; `None` when
    /// some of its edges are outside the complex.
    pub is_boundary: Option<bool>,
    /// Bars whose class the cycle represents when it closes.
    pub matched_bars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleClassification {
    pub bars: Vec<BarClassification>,
    pub cycles: Vec<CycleStatus>,
}

/// Walks an edge set as a single loop; `None` unless every vertex has
/// degree two and the edges form one connected loop.
pub fn single_loop(chain: &Chain) -> Option<Vec<usize>> {
    let edges = chain.edges();
    if edges.len() < 3 {
        return None;
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
    verts.sort_unstable();
    verts.dedup();
    let pos = |v: usize| verts.binary_search(&v).unwrap();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for &(i, j) in &edges {
        nbrs[pos(i)].push(j);
        nbrs[pos(j)].push(i);
    }
    if nbrs.iter().any(|n| n.len() != 2) {
        return None;
    }
    let start = verts[0];
    let first = nbrs[0].iter().copied().min().unwrap();
    let mut walk = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        walk.push(cur);
        let n = &nbrs[pos(cur)];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (walk.len() == verts.len()).then_some(walk)
}

/// Whether all imbalances along the closed walk share one orientation.
pub fn orientation_consistent(walk: &[usize], delta: &ImbalanceField) -> bool {
    let k = walk.len();
    let signs: Vec<f64> = (0..k).map(|i| delta.delta(walk[i], walk[(i + 1) % k])).collect();
    signs.iter().all(|&d| d > 0.0) || signs.iter().all(|&d| d < 0.0)
}

/// Cross-classifies dimension-1 bars and convection cycles.
///
/// A cycle is matched to a bar when the bar is alive in the complex just
/// after the cycle's last edge enters, and the cycle is homologous there to
/// the bar's representative. Bars split from ties by rounding (see
/// [`TIE_TOLERANCE`]) are never matched. Bars need representatives.
pub fn classify_representatives(
    barcode: &PersistenceBarcode,
    delta: &ImbalanceField,
    filtered: &FilteredCliqueComplex,
    cycles: &[ConvectionCycle],
) -> Result<CycleClassification> {
    let dir = filtered.direction();
    let full = BoundarySpace::new(filtered.complex());

    let mut bars: Vec<BarClassification> = Vec::new();
    for (index, bar) in barcode.bars.iter().enumerate() {
        if bar.dimension != 1 {
            continue;
        }
        let rep = bar
            .representative
            .clone()
            .ok_or(Error::InvalidParameter("barcode was computed without representatives"))?;
        let shape = match single_loop(&rep) {
            Some(walk) => {
                let consistent = orientation_consistent(&walk, delta);
                RepresentativeShape::Loop {
                    vertices: walk,
                    consistent,
                }
            }
            None => RepresentativeShape::Composite,
        };
        bars.push(BarClassification {
            bar: index,
            representative: rep,
            shape,
            matched_cycles: Vec::new(),
            one_to_one: false,
        });
    }

    let mut statuses = Vec::with_capacity(cycles.len());
    for (ci, cycle) in cycles.iter().enumerate() {
        let chain = cycle.chain();
        let closes_at = cycle
            .directed_edges()
            .map(|(i, j)| filtered.appearance(&Simplex::edge(i, j)))
            .try_fold(None::<f64>, |acc, v| {
                v.map(|v| Some(acc.map_or(v, |a: f64| dir.later(a, v))))
            })
            .flatten();
        let Some(closes_at) = closes_at else {
            statuses.push(CycleStatus {
                cycle: cycle.clone(),
                is_boundary: None,
                matched_bars: Vec::new(),
            });
            continue;
        };
        let is_boundary = full.is_boundary(&chain)?;
        let snapshot = filtered.complex_through(closes_at);
        let space = BoundarySpace::new(&snapshot);
        let mut matched = Vec::new();
        for (bi, bc) in bars.iter().enumerate() {
            let bar = &barcode.bars[bc.bar];
            let alive = !bar.is_near_tie(TIE_TOLERANCE) && bar.alive_through(dir, closes_at);
            if alive && space.is_boundary(&chain.add(&bc.representative))? {
                matched.push(bi);
            }
        }
        for &bi in &matched {
            bars[bi].matched_cycles.push(ci);
        }
        statuses.push(CycleStatus {
            cycle: cycle.clone(),
            is_boundary: Some(is_boundary),
            matched_bars: matched.iter().map(|&bi| bars[bi].bar).collect(),
        });
    }
    for bc in &mut bars {
        bc.one_to_one = bc.matched_cycles.len() == 1 && statuses[bc.matched_cycles[0]].matched_bars.len() == 1;
    }
    Ok(CycleClassification { bars, cycles: statuses })
}
