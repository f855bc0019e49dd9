//! Topological analysis of non-equilibrium Markov chains.
//!
//! The stationary flows of a chain give an antisymmetric imbalance
//! `Delta_ij = pi_i P_ij - pi_j P_ji` on pairs of states. Its magnitude
//! filters a clique complex, and the persistent homology of that filtration
//! picks out circulating flows.
#![no_std]
// negated comparisons reject NaN on purpose; index loops mirror the math
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
pub mod convection;
pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod markov;
pub mod monomer;
pub mod persistence;
pub mod pipeline;

pub use complex::{betti_numbers, boundary_matrix, clique_complex, is_boundary, Chain, CliqueComplex, Field, Simplex};
pub use convection::{
    classify_representatives, enumerate_convection_cycles, imbalance_digraph, ConvectionCycle, CycleClassification,
    ImbalanceDigraph,
};
pub use error::{Error, Result};
pub use filtration::{complex_at, evc_filtration, Direction, FilteredCliqueComplex, FiltrationBounds, FiltrationSpec};
pub use graph::{DirectedWeightedGraph, Edge, UndirectedEdgeSet};
pub use markov::{
    build_transition, ctmc_uniformize, flow_imbalance, pagerank_matrix, stationary_distribution, stationary_flows,
    FlowField, ImbalanceField, RateMatrix, TransitionMatrix,
};
pub use monomer::{aggregate_external_flows, monomer_rate_matrix, MonomerModel};
pub use persistence::{betti_curve, compute_persistence, PersistenceBar, PersistenceBarcode};
pub use pipeline::{analyze_chain, pagerank_sweep, AnalysisOptions, BifurcationDiagram};
