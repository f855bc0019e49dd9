//! Persistent homology in dimensions 0 and 1 by standard column reduction
//! over GF(2).
//!
//! Reduction runs on filtration indices; births and deaths are translated
//! to `eps` only when bars are emitted.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::complex::{betti_numbers, Chain, Field, Simplex};
use crate::filtration::{complex_at, Direction, FilteredCliqueComplex, FiltrationBounds};

/// One interval of a barcode.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceBar {
    pub dimension: usize,
    pub birth: f64,
    /// Equal to `eps_b` for essential bars.
    pub death: f64,
    pub essential: bool,
    pub birth_simplex: Simplex,
    pub death_simplex: Option<Simplex>,
    /// For dimension 1: the boundary that kills the class (finite bars) or
    /// the cycle created at birth (essential bars).
    pub representative: Option<Chain>,
}

impl PersistenceBar {
    pub fn lifespan(&self) -> f64 {
        (self.death - self.birth).abs()
    }

    /// Born and killed at the same `eps` (possible under ties).
    pub fn is_zero_lifespan(&self) -> bool {
        !self.essential && self.birth == self.death
    }

    /// Whether the class exists in `K_eps`.
    pub fn alive_at(&self, bounds: &FiltrationBounds, eps: f64) -> bool {
        bounds.present(self.birth, eps) && (self.essential || !bounds.present(self.death, eps))
    }

    /// Finite bar whose lifespan is within `rel_tol` of its magnitude, as
    /// produced by ties that rounding has split.
    pub fn is_near_tie(&self, rel_tol: f64) -> bool {
        !self.essential && self.lifespan() <= rel_tol * self.birth.abs().max(self.death.abs())
    }

    /// Whether the class exists once every simplex with appearance value not
    /// later than `value` has entered.
    pub fn alive_through(&self, direction: Direction, value: f64) -> bool {
        direction.cmp_values(self.birth, value) != Ordering::Greater
            && (self.essential || direction.cmp_values(self.death, value) == Ordering::Greater)
    }
}

/// Bars sorted by dimension, then birth and death in filtration order.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceBarcode {
    pub bars: Vec<PersistenceBar>,
    pub bounds: FiltrationBounds,
}

impl PersistenceBarcode {
    pub fn dimension(&self, dim: usize) -> impl Iterator<Item = &PersistenceBar> {
        self.bars.iter().filter(move |b| b.dimension == dim)
    }

    /// Dimension-1 bars with lifespan strictly above `min_lifespan`.
    pub fn cycles(&self, min_lifespan: f64) -> impl Iterator<Item = &PersistenceBar> {
        self.dimension(1).filter(move |b| b.lifespan() > min_lifespan)
    }

    pub fn max_lifespan(&self, dim: usize) -> Option<f64> {
        self.dimension(dim).map(PersistenceBar::lifespan).reduce(f64::max)
    }

    /// Bars alive at `eps` as `(beta_0, beta_1)`.
    pub fn alive_counts(&self, eps: f64) -> (usize, usize) {
        let mut out = (0, 0);
        for b in &self.bars {
            if b.alive_at(&self.bounds, eps) {
                match b.dimension {
                    0 => out.0 += 1,
                    _ => out.1 += 1,
                }
            }
        }
        out
    }
}

/// Betti numbers read off a barcode at one `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BettiSample {
    pub eps: f64,
    pub beta0: usize,
    pub beta1: usize,
}

type Column = Vec<usize>;

fn add_columns(target: &mut Column, source: &Column) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() && b < source.len() {
        match target[a].cmp(&source[b]) {
            Ordering::Less => {
                out.push(target[a]);
                a += 1;
            }
            Ordering::Greater => {
                out.push(source[b]);
                b += 1;
            }
            Ordering::Equal => {
                a += 1;
                b += 1;
            }
        }
    }
    out.extend_from_slice(&target[a..]);
    out.extend_from_slice(&source[b..]);
    *target = out;
}

/// Reduces the filtered boundary matrix and emits bars in dimensions 0 and 1.
pub fn compute_persistence(filtered: &FilteredCliqueComplex, with_representatives: bool) -> PersistenceBarcode {
    let order = filtered.order();
    let bounds = filtered.bounds();
    let index: BTreeMap<Simplex, usize> = order.iter().enumerate().map(|(k, s)| (s.simplex, k)).collect();

    let mut r: Vec<Column> = order
        .iter()
        .map(|s| {
            let mut col: Column = s.simplex.faces().iter().map(|f| index[f]).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let track = |k: usize| with_representatives && order[k].simplex.dimension() == 1;
    let mut v: Vec<Column> = (0..order.len())
        .map(|k| if track(k) { vec![k] } else { Vec::new() })
        .collect();

    let mut pivot_owner: Vec<Option<usize>> = vec![None; order.len()];
    for j in 0..order.len() {
        while let Some(&low) = r[j].last() {
            let Some(k) = pivot_owner[low] else { break };
            let (head, tail) = r.split_at_mut(j);
            add_columns(&mut tail[0], &head[k]);
            if track(j) {
                let (vh, vt) = v.split_at_mut(j);
                add_columns(&mut vt[0], &vh[k]);
            }
        }
        if let Some(&low) = r[j].last() {
            pivot_owner[low] = Some(j);
        }
    }

    let to_chain = |col: &Column| Chain::new(col.iter().map(|&k| order[k].simplex));
    let mut bars = Vec::new();
    for (birth, owner) in pivot_owner.iter().enumerate() {
        let dim = order[birth].simplex.dimension();
        if dim > 1 {
            continue;
        }
        match owner {
            Some(death) => bars.push(PersistenceBar {
                dimension: dim,
                birth: order[birth].value,
                death: order[*death].value,
                essential: false,
                birth_simplex: order[birth].simplex,
                death_simplex: Some(order[*death].simplex),
                representative: (with_representatives && dim == 1).then(|| to_chain(&r[*death])),
            }),
            None if r[birth].is_empty() => bars.push(PersistenceBar {
                dimension: dim,
                birth: order[birth].value,
                death: bounds.eps_b,
                essential: true,
                birth_simplex: order[birth].simplex,
                death_simplex: None,
                representative: (with_representatives && dim == 1).then(|| to_chain(&v[birth])),
            }),
            None => {}
        }
    }
    let dir = bounds.direction;
    bars.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then_with(|| dir.cmp_values(a.birth, b.birth))
            .then_with(|| dir.cmp_values(a.death, b.death))
            .then_with(|| index[&a.birth_simplex].cmp(&index[&b.birth_simplex]))
    });
    PersistenceBarcode { bars, bounds }
}

/// `(eps, beta_0, beta_1)` at each sample.
pub fn betti_curve(barcode: &PersistenceBarcode, eps_samples: &[f64]) -> Vec<BettiSample> {
    eps_samples
        .iter()
        .map(|&eps| {
            let (beta0, beta1) = barcode.alive_counts(eps);
            BettiSample { eps, beta0, beta1 }
        })
        .collect()
}

/// Independent check: rebuild `K_eps` and take boundary ranks over GF(2).
pub fn oracle_betti_at(filtered: &FilteredCliqueComplex, eps: f64) -> (usize, usize) {
    betti_numbers(&complex_at(filtered, eps), Field::Gf2).expect("GF(2) ranks cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{evc_filtration, Direction, FiltrationSpec};
    use crate::graph::UndirectedEdgeSet;

    fn filtered(n: usize, vals: &[((usize, usize), f64)], dir: Direction) -> FilteredCliqueComplex {
        let edges = UndirectedEdgeSet::from_pairs(vals.iter().map(|v| v.0));
        evc_filtration(&edges, n, &FiltrationSpec::new(vals.iter().copied(), dir)).unwrap()
    }

    #[test]
    fn vertices_only() {
        let f = filtered(4, &[], Direction::Descending);
        let bc = compute_persistence(&f, true);
        assert_eq!(bc.bars.len(), 4);
        assert!(bc.bars.iter().all(|b| b.dimension == 0 && b.essential));
    }

    #[test]
    fn hollow_square() {
        let f = filtered(
            4,
            &[((0, 1), 4.0), ((1, 2), 3.0), ((2, 3), 2.0), ((0, 3), 1.0)],
            Direction::Descending,
        );
        let bc = compute_persistence(&f, true);
        let h1: Vec<_> = bc.dimension(1).collect();
        assert_eq!(h1.len(), 1);
        assert_eq!(h1[0].birth, 1.0);
        assert!(h1[0].essential);
        assert_eq!(h1[0].death, 0.0);
        assert_eq!(
            h1[0].representative.as_ref().unwrap(),
            &Chain::from_edges([(0, 1), (1, 2), (2, 3), (0, 3)])
        );
        let h0: Vec<_> = bc.dimension(0).collect();
        assert_eq!(h0.len(), 4);
        assert_eq!(h0.iter().filter(|b| b.essential).count(), 1);
        let deaths: Vec<f64> = h0.iter().filter(|b| !b.essential).map(|b| b.death).collect();
        assert_eq!(deaths, vec![4.0, 3.0, 2.0]);
    }

    #[test]
    fn filled_cycle_dies() {
        // 4-cycle born at 2, chord (0,2) at 1 fills it with two triangles
        let f = filtered(
            4,
            &[
                ((0, 1), 5.0),
                ((1, 2), 4.0),
                ((2, 3), 3.0),
                ((0, 3), 2.0),
                ((0, 2), 1.0),
            ],
            Direction::Descending,
        );
        let bc = compute_persistence(&f, true);
        let h1: Vec<_> = bc.dimension(1).collect();
        assert_eq!(h1.len(), 2);
        let real: Vec<_> = h1.iter().filter(|b| !b.is_zero_lifespan()).collect();
        assert_eq!(real.len(), 1);
        assert_eq!((real[0].birth, real[0].death), (2.0, 1.0));
        assert_eq!(h1.iter().filter(|b| b.is_zero_lifespan()).count(), 1);
        assert_eq!(bc.alive_counts(1.5), (1, 1));
        assert_eq!(bc.alive_counts(0.5), (1, 0));
        for eps in [5.5, 4.5, 3.5, 2.5, 1.5, 1.0, 0.5, 0.0] {
            assert_eq!(bc.alive_counts(eps), oracle_betti_at(&f, eps), "eps = {eps}");
        }
    }

    #[test]
    fn betti_curve_extremes() {
        let f = filtered(3, &[((0, 1), 2.0), ((1, 2), 1.0)], Direction::Ascending);
        let bc = compute_persistence(&f, false);
        let curve = betti_curve(&bc, &[f.bounds().eps_a, f.bounds().eps_b]);
        assert_eq!((curve[0].beta0, curve[0].beta1), (3, 0));
        assert_eq!((curve[1].beta0, curve[1].beta1), (1, 0));
    }

    #[test]
    fn add_columns_is_symmetric_difference() {
        let mut a = vec![1, 3, 5];
        add_columns(&mut a, &vec![2, 3, 6]);
        assert_eq!(a, vec![1, 2, 5, 6]);
    }
}
