use alloc::vec::Vec;

use crate::convection::ConvectionCycle;

/// Errors raised by the core pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("self-loop on vertex {0} (self-loops are disabled)")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({src}, {dst}) has invalid weight {weight}")]
    InvalidWeight { src: usize, dst: usize, weight: f64 },
    #[error("vertex {0} has zero out-degree")]
    DanglingVertex(usize),
    #[error("power iteration did not converge: residual {residual:e} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },
    #[error("rate matrix has no positive rates")]
    ZeroRates,
    #[error("rate scale {scale} is below the largest exit rate {max_exit}")]
    RateScaleTooSmall { scale: f64, max_exit: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("filtration bounds out of range: {0}")]
    SpecRange(&'static str),
    #[error("chain is not a cycle (its boundary is nonzero)")]
    NotACycle,
    #[error("chain uses a simplex that is not in the complex")]
    NotInComplex,
    #[error("cycle enumeration stopped after {found} cycles")]
    Truncated {
        found: usize,
        partial: Vec<ConvectionCycle>,
    },
    #[error("integer overflow during exact rank computation")]
    RankOverflow,
}

pub type Result<T> = core::result::Result<T, Error>;
