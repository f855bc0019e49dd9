//! Molecular-motor monomer on an `L1 x L2` lattice with internal states
//! `a, b, c, d`.
//!
//! Internal moves `a -> b -> c -> d -> a` happen at `gamma_in` (plus the
//! reverse direction at `gamma_in_reverse`). In each internal state the
//! monomer may step once on the lattice at `gamma_ex`: `a` raises `s1`, `b`
//! raises `s2`, `c` lowers `s1`, `d` lowers `s2`. Steps off the lattice are
//! suppressed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::markov::{ctmc_uniformize, FlowField, RateMatrix};

pub const INTERNAL_STATES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomerModel {
    pub l1: usize,
    pub l2: usize,
    pub gamma_in: f64,
    pub gamma_ex: f64,
    pub gamma_in_reverse: f64,
}

impl MonomerModel {
    pub fn new(l1: usize, l2: usize, gamma_in: f64, gamma_ex: f64) -> Self {
        Self {
            l1,
            l2,
            gamma_in,
            gamma_ex,
            gamma_in_reverse: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l1 < 2 || self.l2 < 2 {
            return Err(Error::InvalidParameter("lattice sides must be at least 2"));
        }
        let rates = [self.gamma_in, self.gamma_ex, self.gamma_in_reverse];
        if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::InvalidParameter("rates must be finite and non-negative"));
        }
        if rates.iter().all(|&r| r == 0.0) {
            return Err(Error::ZeroRates);
        }
        Ok(())
    }

    pub fn num_sites(&self) -> usize {
        self.l1 * self.l2
    }

    pub fn num_states(&self) -> usize {
        self.num_sites() * INTERNAL_STATES
    }

    pub fn site_index(&self, s1: usize, s2: usize) -> usize {
        s1 * self.l2 + s2
    }

    pub fn site_of(&self, site: usize) -> (usize, usize) {
        (site / self.l2, site % self.l2)
    }

    /// Composite state index of `(s1, s2, sigma)`.
    pub fn state_index(&self, s1: usize, s2: usize, sigma: usize) -> usize {
        self.site_index(s1, s2) * INTERNAL_STATES + sigma
    }

    /// Lattice site reached by the external move of internal state `sigma`.
    pub fn external_target(&self, s1: usize, s2: usize, sigma: usize) -> Option<(usize, usize)> {
        match sigma {
            0 if s1 + 1 < self.l1 => Some((s1 + 1, s2)),
            1 if s2 + 1 < self.l2 => Some((s1, s2 + 1)),
            2 if s1 > 0 => Some((s1 - 1, s2)),
            3 if s2 > 0 => Some((s1, s2 - 1)),
            _ => None,
        }
    }

    /// Lattice edges on the outer boundary of the grid, as canonical site pairs.
    pub fn outer_ring(&self) -> Vec<(usize, usize)> {
        let mut ring = Vec::new();
        for s1 in 0..self.l1 {
            for s2 in 0..self.l2 {
                let here = self.site_index(s1, s2);
                let on_edge1 = s1 == 0 || s1 + 1 == self.l1;
                let on_edge2 = s2 == 0 || s2 + 1 == self.l2;
                if s2 + 1 < self.l2 && on_edge1 {
                    ring.push((here, self.site_index(s1, s2 + 1)));
                }
                if s1 + 1 < self.l1 && on_edge2 {
                    ring.push((here, self.site_index(s1 + 1, s2)));
                }
            }
        }
        ring.sort_unstable();
        ring
    }
}

/// Rate matrix of the composite chain.
pub fn monomer_rate_matrix(m: &MonomerModel) -> Result<RateMatrix> {
    m.validate()?;
    let mut rates = Vec::new();
    for s1 in 0..m.l1 {
        for s2 in 0..m.l2 {
            for sigma in 0..INTERNAL_STATES {
                let here = m.state_index(s1, s2, sigma);
                let fwd = (sigma + 1) % INTERNAL_STATES;
                let back = (sigma + INTERNAL_STATES - 1) % INTERNAL_STATES;
                if m.gamma_in > 0.0 {
                    rates.push((here, m.state_index(s1, s2, fwd), m.gamma_in));
                }
                if m.gamma_in_reverse > 0.0 {
                    rates.push((here, m.state_index(s1, s2, back), m.gamma_in_reverse));
                }
                if m.gamma_ex > 0.0 {
                    if let Some((t1, t2)) = m.external_target(s1, s2, sigma) {
                        rates.push((here, m.state_index(t1, t2, sigma), m.gamma_ex));
                    }
                }
            }
        }
    }
    RateMatrix::new(m.num_states(), rates)
}

/// Sums composite flows onto lattice sites: `F_ext(u, v)` adds every
/// `F((u, sigma), (v, tau))`. Internal moves land on the diagonal.
pub fn aggregate_external_flows(flows: &FlowField, m: &MonomerModel) -> Result<FlowField> {
    if flows.num_states() != m.num_states() {
        return Err(Error::InvalidParameter(
            "flow field does not match the monomer state space",
        ));
    }
    FlowField::from_entries(
        m.num_sites(),
        flows
            .entries()
            .iter()
            .map(|&(i, j, f)| (i / INTERNAL_STATES, j / INTERNAL_STATES, f)),
    )
}

/// Transition matrix of the uniformized monomer chain.
pub fn monomer_transition(m: &MonomerModel, rate_scale: Option<f64>) -> Result<crate::markov::TransitionMatrix> {
    ctmc_uniformize(&monomer_rate_matrix(m)?, rate_scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing() {
        let m = MonomerModel::new(3, 2, 1.0, 1.0);
        assert_eq!(m.num_states(), 24);
        assert_eq!(m.state_index(2, 1, 3), 23);
        assert_eq!(m.site_of(5), (2, 1));
        assert_eq!(m.external_target(2, 0, 0), None);
        assert_eq!(m.external_target(0, 0, 0), Some((1, 0)));
        assert_eq!(m.external_target(0, 1, 3), Some((0, 0)));
    }

    #[test]
    fn ring_of_square_lattice() {
        let m = MonomerModel::new(3, 3, 1.0, 1.0);
        // perimeter of a 3x3 grid has 8 unit edges; the centre site is off it
        let ring = m.outer_ring();
        assert_eq!(ring.len(), 8);
        assert!(ring.iter().all(|&(u, v)| u != 4 && v != 4));
    }

    #[test]
    fn rates_and_validation() {
        let m = MonomerModel::new(2, 2, 2.0, 0.5);
        let q = monomer_rate_matrix(&m).unwrap();
        // each state has one internal move plus an external one in half the cases
        let exits = q.exit_rates();
        assert_eq!(exits.iter().filter(|&&e| e == 2.5).count(), 8);
        assert_eq!(exits.iter().filter(|&&e| e == 2.0).count(), 8);
        assert!(MonomerModel::new(1, 2, 1.0, 1.0).validate().is_err());
        assert!(matches!(
            MonomerModel::new(2, 2, 0.0, 0.0).validate(),
            Err(Error::ZeroRates)
        ));
    }
}
