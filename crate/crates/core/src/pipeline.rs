//! End-to-end analysis: chain -> stationary flows -> imbalance ->
//! filtration -> barcode, plus parameter sweeps.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::filtration::{evc_filtration, Direction, FilteredCliqueComplex, FiltrationSpec};
use crate::graph::{undirected_skeleton, DirectedWeightedGraph, UndirectedEdgeSet};
use crate::markov::{
    build_transition, flow_imbalance, pagerank_from_graph, stationary_distribution, stationary_flows, FlowField,
    ImbalanceField, StationaryDistribution, TransitionMatrix, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE,
};
use crate::persistence::{compute_persistence, PersistenceBar, PersistenceBarcode};

/// Imbalances at or below this magnitude are treated as balanced.
pub const DEFAULT_BALANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub direction: Direction,
    pub eps_a: Option<f64>,
    pub eps_b: Option<f64>,
    /// Put balanced pairs into the complex at `eps_b` instead of leaving
    /// them out.
    pub include_balanced_at_floor: bool,
    pub balance_tolerance: f64,
    /// Drop pairs outside the base graph whose imbalance is below this.
    pub drop_teleport_below: Option<f64>,
    pub tolerance: f64,
    pub max_iters: usize,
    pub with_representatives: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            direction: Direction::Descending,
            eps_a: None,
            eps_b: None,
            include_balanced_at_floor: false,
            balance_tolerance: DEFAULT_BALANCE_TOLERANCE,
            drop_teleport_below: None,
            tolerance: DEFAULT_TOLERANCE,
            max_iters: DEFAULT_MAX_ITERS,
            with_representatives: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainAnalysis {
    pub stationary: StationaryDistribution,
    pub flows: FlowField,
    pub imbalance: ImbalanceField,
    pub filtered: FilteredCliqueComplex,
    pub barcode: PersistenceBarcode,
}

/// Filtration spec for an imbalance field under `opts`. `base` lists the
/// pairs of the underlying graph, used by `drop_teleport_below`.
pub fn imbalance_spec(
    delta: &ImbalanceField,
    base: Option<&UndirectedEdgeSet>,
    opts: &AnalysisOptions,
) -> (UndirectedEdgeSet, FiltrationSpec) {
    let mut values = Vec::new();
    let mut floor = Vec::new();
    for &(i, j, d) in delta.pairs() {
        let a = d.abs();
        if let (Some(t), Some(base)) = (opts.drop_teleport_below, base) {
            if a < t && !base.contains(i, j) {
                continue;
            }
        }
        if a > opts.balance_tolerance {
            values.push(((i, j), a));
        } else if opts.include_balanced_at_floor {
            floor.push((i, j));
        }
    }
    let domain = UndirectedEdgeSet::from_pairs(values.iter().map(|v| v.0).chain(floor.iter().copied()));
    let mut spec = FiltrationSpec::new(values, opts.direction).with_floor_edges(floor);
    if opts.eps_a.is_some() || opts.eps_b.is_some() {
        let a = opts.eps_a.unwrap_or(spec.bounds.eps_a);
        let b = opts.eps_b.unwrap_or(spec.bounds.eps_b);
        spec = spec.with_bounds(a, b);
    }
    (domain, spec)
}

/// Filtration and barcode of an imbalance field.
pub fn analyze_imbalance(
    delta: &ImbalanceField,
    base: Option<&UndirectedEdgeSet>,
    opts: &AnalysisOptions,
) -> Result<(FilteredCliqueComplex, PersistenceBarcode)> {
    let (domain, spec) = imbalance_spec(delta, base, opts);
    let filtered = evc_filtration(&domain, delta.num_states(), &spec)?;
    let barcode = compute_persistence(&filtered, opts.with_representatives);
    Ok((filtered, barcode))
}

/// Full pipeline on a transition matrix.
pub fn analyze_transition(
    p: &TransitionMatrix,
    base: Option<&UndirectedEdgeSet>,
    opts: &AnalysisOptions,
) -> Result<ChainAnalysis> {
    let stationary = stationary_distribution(p, opts.tolerance, opts.max_iters)?;
    let flows = stationary_flows(&stationary.pi, p);
    let imbalance = flow_imbalance(&flows);
    let (filtered, barcode) = analyze_imbalance(&imbalance, base, opts)?;
    Ok(ChainAnalysis {
        stationary,
        flows,
        imbalance,
        filtered,
        barcode,
    })
}

/// Full pipeline on the random walk of a graph, optionally with PageRank
/// teleportation `alpha`.
pub fn analyze_chain(
    g: &DirectedWeightedGraph,
    alpha: Option<f64>,
    dangling_patch: bool,
    opts: &AnalysisOptions,
) -> Result<ChainAnalysis> {
    let p = match alpha {
        Some(a) => pagerank_from_graph(g, a, dangling_patch)?,
        None if dangling_patch => pagerank_from_graph(g, 1.0, true)?,
        None => build_transition(g)?,
    };
    let base = undirected_skeleton(g);
    analyze_transition(&p, Some(&base), opts)
}

/// One bar of one sample in a bifurcation trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TracePoint {
    pub sample: usize,
    pub parameter: f64,
    /// Index into the sample barcode's bars.
    pub bar: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
}

/// A dimension-1 bar followed across consecutive samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BarTrace {
    pub id: usize,
    pub points: Vec<TracePoint>,
}

impl BarTrace {
    pub fn first_parameter(&self) -> f64 {
        self.points[0].parameter
    }

    pub fn last_parameter(&self) -> f64 {
        self.points[self.points.len() - 1].parameter
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationSample {
    pub parameter: f64,
    pub barcode: PersistenceBarcode,
}

/// Barcodes over an increasing parameter with matched dimension-1 bars.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationDiagram {
    pub parameter_name: String,
    pub samples: Vec<BifurcationSample>,
    pub traces: Vec<BarTrace>,
    pub min_lifespan: f64,
}

impl BifurcationDiagram {
    /// Dimension-1 bars above the lifespan threshold at each sample.
    pub fn cycle_counts(&self) -> Vec<usize> {
        self.samples
            .iter()
            .map(|s| s.barcode.cycles(self.min_lifespan).count())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub analysis: AnalysisOptions,
    pub dangling_patch: bool,
    /// Dimension-1 bars at or below this lifespan are not traced.
    pub min_lifespan: f64,
    /// Minimum Jaccard overlap of representative edge sets for two bars in
    /// adjacent samples to be the same trace.
    pub match_threshold: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            analysis: AnalysisOptions::default(),
            dangling_patch: false,
            min_lifespan: 0.0,
            match_threshold: 0.5,
        }
    }
}

fn rep_edges(bar: &PersistenceBar) -> Vec<(usize, usize)> {
    bar.representative.as_ref().map(|c| c.edges()).unwrap_or_default()
}

fn jaccard(a: &[(usize, usize)], b: &[(usize, usize)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common as f64 / (a.len() + b.len() - common) as f64
}

type OpenTrace = (usize, Vec<(usize, usize)>, f64);

/// Links dimension-1 bars of consecutive samples into traces.
///
/// Bars of the newer sample are taken longest first; each claims the open
/// trace with the highest representative overlap at or above `threshold`
/// (ties to the longer previous bar, then the lower trace id).
pub fn assemble_bifurcation(
    parameter_name: &str,
    samples: Vec<BifurcationSample>,
    min_lifespan: f64,
    threshold: f64,
) -> Result<BifurcationDiagram> {
    if samples.windows(2).any(|w| !(w[0].parameter < w[1].parameter)) {
        return Err(Error::InvalidParameter("sweep parameters must be strictly increasing"));
    }
    let mut traces: Vec<BarTrace> = Vec::new();
    // (trace index, edge set, lifespan) for traces extended at the previous sample
    let mut open: Vec<OpenTrace> = Vec::new();
    for (k, sample) in samples.iter().enumerate() {
        let mut bars: Vec<(usize, &PersistenceBar)> = sample
            .barcode
            .bars
            .iter()
            .enumerate()
            .filter(|(_, b)| b.dimension == 1 && b.lifespan() > min_lifespan)
            .collect();
        bars.sort_by(|a, b| b.1.lifespan().total_cmp(&a.1.lifespan()).then(a.0.cmp(&b.0)));
        let mut claimed = alloc::vec![false; open.len()];
        let mut next_open = Vec::new();
        for (index, bar) in bars {
            let edges = rep_edges(bar);
            let mut best: Option<(usize, f64)> = None;
            for (o, (t, prev, life)) in open.iter().enumerate() {
                if claimed[o] {
                    continue;
                }
                let score = jaccard(&edges, prev);
                if score < threshold {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((b, s)) => {
                        score > s || score == s && (*life > open[b].2 || *life == open[b].2 && *t < open[b].0)
                    }
                };
                if better {
                    best = Some((o, score));
                }
            }
            let point = TracePoint {
                sample: k,
                parameter: sample.parameter,
                bar: index,
                birth: bar.birth,
                death: bar.death,
                essential: bar.essential,
            };
            let t = match best {
                Some((o, _)) => {
                    claimed[o] = true;
                    let t = open[o].0;
                    traces[t].points.push(point);
                    t
                }
                None => {
                    traces.push(BarTrace {
                        id: traces.len(),
                        points: alloc::vec![point],
                    });
                    traces.len() - 1
                }
            };
            next_open.push((t, edges, bar.lifespan()));
        }
        open = next_open;
    }
    Ok(BifurcationDiagram {
        parameter_name: String::from(parameter_name),
        samples,
        traces,
        min_lifespan,
    })
}

/// Grid must be non-empty, strictly increasing and inside `(0, 1]`.
pub fn check_alphas(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("alpha grid is empty"));
    }
    if alphas.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
    }
    if alphas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("alpha grid must be strictly increasing"));
    }
    Ok(())
}

/// Barcode of the PageRank chain at one `alpha`.
pub fn pagerank_barcode(g: &DirectedWeightedGraph, alpha: f64, opts: &SweepOptions) -> Result<PersistenceBarcode> {
    Ok(analyze_chain(g, Some(alpha), opts.dangling_patch, &opts.analysis)?.barcode)
}

/// Sequential PageRank sweep over a strictly increasing grid in `(0, 1]`.
pub fn pagerank_sweep(g: &DirectedWeightedGraph, alphas: &[f64], opts: &SweepOptions) -> Result<BifurcationDiagram> {
    check_alphas(alphas)?;
    let samples = alphas
        .iter()
        .map(|&a| {
            Ok(BifurcationSample {
                parameter: a,
                barcode: pagerank_barcode(g, a, opts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble_bifurcation("alpha", samples, opts.min_lifespan, opts.match_threshold)
}

/// Bisects `[lo, hi]` for the `alpha` at which the number of traced
/// dimension-1 bars changes, assuming it changes once. Returns the
/// bracketing pair after shrinking it below `tol`.
pub fn bisect_cycle_count(
    g: &DirectedWeightedGraph,
    lo: f64,
    hi: f64,
    tol: f64,
    opts: &SweepOptions,
) -> Result<(f64, f64)> {
    check_alphas(&[lo, hi])?;
    let count = |a: f64| -> Result<usize> { Ok(pagerank_barcode(g, a, opts)?.cycles(opts.min_lifespan).count()) };
    let c_lo = count(lo)?;
    if count(hi)? == c_lo {
        return Err(Error::InvalidParameter("cycle count is equal at both ends"));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if count(m)? == c_lo {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((a, b))
}
