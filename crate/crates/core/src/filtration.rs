//! Edge-value clique (EVC) filtrations.
//!
//! A scalar `f` on edges defines nested edge sets `E_eps`: in the
//! descending direction `E_eps = {e : f(e) > eps}` as `eps` decreases from
//! `eps_a` to `eps_b`; in the ascending direction `E_eps = {e : f(e) < eps}`
//! as `eps` increases. `K_eps` is the clique complex of `E_eps`.
//!
//! Each simplex carries the value of `eps` at which it enters. Vertices
//! enter at `eps_a`, edges at `f`, triangles at the min (descending) or max
//! (ascending) of their edges. Optional floor edges enter at `eps_b`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::complex::{clique_complex, CliqueComplex, Simplex};
use crate::error::{Error, Result};
use crate::graph::UndirectedEdgeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Keep `f > eps`, `eps` decreasing.
    #[default]
    Descending,
    /// Keep `f < eps`, `eps` increasing.
    Ascending,
}

impl Direction {
    /// Orders appearance values so that earlier entries come first.
    pub fn cmp_values(self, a: f64, b: f64) -> Ordering {
        match self {
            Direction::Descending => b.total_cmp(&a),
            Direction::Ascending => a.total_cmp(&b),
        }
    }

    /// Strict inclusion rule for an ordinary simplex.
    pub fn admits(self, value: f64, eps: f64) -> bool {
        match self {
            Direction::Descending => value > eps,
            Direction::Ascending => value < eps,
        }
    }

    /// Later of two appearance values in filtration order.
    pub fn later(self, a: f64, b: f64) -> f64 {
        match self {
            Direction::Descending => a.min(b),
            Direction::Ascending => a.max(b),
        }
    }
}

/// Direction plus the range `eps_a` (start, vertices only) to `eps_b` (end,
/// full complex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltrationBounds {
    pub direction: Direction,
    pub eps_a: f64,
    pub eps_b: f64,
}

impl FiltrationBounds {
    /// Whether a simplex with appearance value `value` belongs to `K_eps`.
    ///
    /// `eps_a` marks vertices (always present) and `eps_b` marks floor
    /// simplices (present only once `eps` reaches `eps_b`).
    pub fn present(&self, value: f64, eps: f64) -> bool {
        if value == self.eps_a {
            return true;
        }
        if value == self.eps_b {
            return match self.direction {
                Direction::Descending => eps <= self.eps_b,
                Direction::Ascending => eps >= self.eps_b,
            };
        }
        self.direction.admits(value, eps)
    }

    /// Whether `eps` lies in the closed range spanned by the bounds.
    pub fn in_range(&self, eps: f64) -> bool {
        let (lo, hi) = if self.eps_a < self.eps_b {
            (self.eps_a, self.eps_b)
        } else {
            (self.eps_b, self.eps_a)
        };
        (lo..=hi).contains(&eps)
    }
}

/// Filtration function and bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationSpec {
    /// `f` on canonical pairs `(i, j)`, `i < j`.
    pub values: Vec<((usize, usize), f64)>,
    /// Edges without an `f` value that enter at `eps_b`.
    pub floor_edges: Vec<(usize, usize)>,
    pub bounds: FiltrationBounds,
}

impl FiltrationSpec {
    /// Spec with default bounds: descending `eps_a = 1.05 max f`,
    /// `eps_b = 0` for positive `f`; ascending mirrors that.
    pub fn new(values: impl IntoIterator<Item = ((usize, usize), f64)>, direction: Direction) -> Self {
        let mut values: Vec<((usize, usize), f64)> = values
            .into_iter()
            .map(|((i, j), v)| (if i < j { (i, j) } else { (j, i) }, v))
            .collect();
        values.sort_by_key(|a| a.0);
        let (eps_a, eps_b) = default_bounds(&values, direction);
        Self {
            values,
            floor_edges: Vec::new(),
            bounds: FiltrationBounds {
                direction,
                eps_a,
                eps_b,
            },
        }
    }

    pub fn with_bounds(mut self, eps_a: f64, eps_b: f64) -> Self {
        self.bounds.eps_a = eps_a;
        self.bounds.eps_b = eps_b;
        self
    }

    pub fn with_floor_edges(mut self, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        self.floor_edges = UndirectedEdgeSet::from_pairs(edges).edges().to_vec();
        self
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.iter().map(|v| v.1).reduce(f64::max)
    }

    pub fn min_value(&self) -> Option<f64> {
        self.values.iter().map(|v| v.1).reduce(f64::min)
    }

    fn validate(&self) -> Result<()> {
        let FiltrationBounds {
            direction,
            eps_a,
            eps_b,
        } = self.bounds;
        if !eps_a.is_finite() || !eps_b.is_finite() {
            return Err(Error::SpecRange("bounds must be finite"));
        }
        if self.values.iter().any(|v| !v.1.is_finite()) {
            return Err(Error::SpecRange("filtration values must be finite"));
        }
        let (max, min) = match (self.max_value(), self.min_value()) {
            (Some(max), Some(min)) => (max, min),
            _ => (eps_b, eps_b),
        };
        let ok = match direction {
            Direction::Descending => eps_a > max && eps_b < min || self.values.is_empty() && eps_a > eps_b,
            Direction::Ascending => eps_a < min && eps_b > max || self.values.is_empty() && eps_a < eps_b,
        };
        if !ok {
            return Err(Error::SpecRange(match direction {
                Direction::Descending => "descending filtration needs eps_a > max f and eps_b < min f",
                Direction::Ascending => "ascending filtration needs eps_a < min f and eps_b > max f",
            }));
        }
        Ok(())
    }
}

fn default_bounds(values: &[((usize, usize), f64)], direction: Direction) -> (f64, f64) {
    let max = values.iter().map(|v| v.1).reduce(f64::max);
    let min = values.iter().map(|v| v.1).reduce(f64::min);
    let (lo, hi) = match (min, max) {
        (Some(min), Some(max)) => {
            let span = max.abs().max(min.abs());
            let span = if span > 0.0 { span } else { 1.0 };
            let hi = max + 0.05 * span;
            let lo = if min > 0.0 { 0.0 } else { min - 0.05 * span };
            (lo, hi)
        }
        _ => (0.0, 1.0),
    };
    match direction {
        Direction::Descending => (hi, lo),
        Direction::Ascending => (lo, hi),
    }
}

/// A simplex with the value of `eps` at which it enters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub value: f64,
}

/// Final clique complex plus the filtration order of its simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredCliqueComplex {
    complex: CliqueComplex,
    bounds: FiltrationBounds,
    order: Vec<FilteredSimplex>,
}

impl FilteredCliqueComplex {
    pub fn complex(&self) -> &CliqueComplex {
        &self.complex
    }

    pub fn bounds(&self) -> FiltrationBounds {
        self.bounds
    }

    pub fn direction(&self) -> Direction {
        self.bounds.direction
    }

    /// Simplices in filtration order: by appearance value, then dimension,
    /// then vertex tuple.
    pub fn order(&self) -> &[FilteredSimplex] {
        &self.order
    }

    pub fn appearance(&self, s: &Simplex) -> Option<f64> {
        self.order.iter().find(|x| x.simplex == *s).map(|x| x.value)
    }

    /// Distinct appearance values of edges and triangles, in filtration order.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .order
            .iter()
            .filter(|x| x.simplex.dimension() > 0)
            .map(|x| x.value)
            .collect();
        v.dedup();
        v
    }
}

/// Builds the filtration order over the clique complex of the edges that
/// carry a value (or are floor edges).
pub fn evc_filtration(
    edges: &UndirectedEdgeSet,
    num_vertices: usize,
    spec: &FiltrationSpec,
) -> Result<FilteredCliqueComplex> {
    spec.validate()?;
    let bounds = spec.bounds;
    let mut edge_values: Vec<((usize, usize), f64)> = Vec::with_capacity(spec.values.len());
    for &((i, j), v) in &spec.values {
        if !edges.contains(i, j) {
            return Err(Error::InvalidParameter(
                "filtration value on a pair outside the edge set",
            ));
        }
        edge_values.push(((i, j), v));
    }
    for &(i, j) in &spec.floor_edges {
        if !edges.contains(i, j) {
            return Err(Error::InvalidParameter("floor edge outside the edge set"));
        }
        if spec.values.binary_search_by(|v| v.0.cmp(&(i, j))).is_ok() {
            return Err(Error::InvalidParameter("floor edge also carries a filtration value"));
        }
        edge_values.push(((i, j), bounds.eps_b));
    }
    edge_values.sort_by_key(|a| a.0);
    let kept = UndirectedEdgeSet::from_pairs(edge_values.iter().map(|v| v.0));
    let complex = clique_complex(&kept, num_vertices, 2)?;

    let value_of = |i: usize, j: usize| {
        let key = if i < j { (i, j) } else { (j, i) };
        edge_values[edge_values.binary_search_by(|v| v.0.cmp(&key)).unwrap()].1
    };
    let dir = bounds.direction;
    let mut order: Vec<FilteredSimplex> =
        Vec::with_capacity(complex.num_vertices() + complex.edges().len() + complex.triangles().len());
    order.extend((0..num_vertices).map(|v| FilteredSimplex {
        simplex: Simplex::vertex(v),
        value: bounds.eps_a,
    }));
    order.extend(edge_values.iter().map(|&((i, j), v)| FilteredSimplex {
        simplex: Simplex::edge(i, j),
        value: v,
    }));
    order.extend(complex.triangles().iter().map(|&(i, j, k)| FilteredSimplex {
        simplex: Simplex::triangle(i, j, k),
        value: dir.later(dir.later(value_of(i, j), value_of(i, k)), value_of(j, k)),
    }));
    order.sort_by(|a, b| dir.cmp_values(a.value, b.value).then_with(|| a.simplex.cmp(&b.simplex)));
    Ok(FilteredCliqueComplex { complex, bounds, order })
}

impl FilteredCliqueComplex {
    /// Subcomplex of every simplex whose appearance value is not later than
    /// `value`, i.e. the complex just after `value` has been passed.
    pub fn complex_through(&self, value: f64) -> CliqueComplex {
        let dir = self.bounds.direction;
        let edges = self
            .order
            .iter()
            .filter(|x| x.simplex.dimension() == 1 && dir.cmp_values(x.value, value) != Ordering::Greater)
            .map(|x| (x.simplex.vertices()[0], x.simplex.vertices()[1]));
        clique_complex(&UndirectedEdgeSet::from_pairs(edges), self.complex.num_vertices(), 2)
            .expect("edges of a valid filtration")
    }
}

/// Snapshot `K_eps`.
pub fn complex_at(filtered: &FilteredCliqueComplex, eps: f64) -> CliqueComplex {
    let bounds = filtered.bounds;
    let edges = filtered
        .order
        .iter()
        .filter(|x| x.simplex.dimension() == 1 && bounds.present(x.value, eps))
        .map(|x| (x.simplex.vertices()[0], x.simplex.vertices()[1]));
    clique_complex(
        &UndirectedEdgeSet::from_pairs(edges),
        filtered.complex.num_vertices(),
        2,
    )
    .expect("edges of a valid filtration")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (UndirectedEdgeSet, FiltrationSpec) {
        let vals = [((0, 1), 4.0), ((1, 2), 3.0), ((2, 3), 2.0), ((0, 3), 1.0)];
        let edges = UndirectedEdgeSet::from_pairs(vals.iter().map(|v| v.0));
        (edges, FiltrationSpec::new(vals, Direction::Descending))
    }

    #[test]
    fn default_bounds_for_positive_values() {
        let (_, spec) = square();
        assert_eq!(spec.bounds.eps_a, 4.0 * 1.05);
        assert_eq!(spec.bounds.eps_b, 0.0);
        let asc = FiltrationSpec::new(spec.values.clone(), Direction::Ascending);
        assert_eq!(asc.bounds.eps_a, 0.0);
        assert_eq!(asc.bounds.eps_b, 4.0 * 1.05);
    }

    #[test]
    fn bound_violations() {
        let (edges, spec) = square();
        assert!(matches!(
            evc_filtration(&edges, 4, &spec.clone().with_bounds(4.0, 0.0)),
            Err(Error::SpecRange(_))
        ));
        assert!(matches!(
            evc_filtration(&edges, 4, &spec.clone().with_bounds(5.0, 1.0)),
            Err(Error::SpecRange(_))
        ));
        let asc = FiltrationSpec::new(spec.values.clone(), Direction::Ascending).with_bounds(1.0, 5.0);
        assert!(matches!(evc_filtration(&edges, 4, &asc), Err(Error::SpecRange(_))));
    }

    #[test]
    fn constant_values_threshold() {
        let c = 2.0;
        let pairs = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let edges = UndirectedEdgeSet::from_pairs(pairs);
        let spec = FiltrationSpec::new(pairs.iter().map(|&p| (p, c)), Direction::Descending);
        let f = evc_filtration(&edges, 4, &spec).unwrap();
        assert_eq!(complex_at(&f, c + 0.1).counts(), (4, 0, 0));
        assert_eq!(complex_at(&f, c).counts(), (4, 0, 0));
        assert_eq!(complex_at(&f, c - 0.1).counts(), (4, 4, 1));
    }

    #[test]
    fn square_cycle_closes_with_smallest_edge() {
        let (edges, spec) = square();
        let f = evc_filtration(&edges, 4, &spec).unwrap();
        assert_eq!(f.breakpoints(), alloc::vec![4.0, 3.0, 2.0, 1.0]);
        assert_eq!(complex_at(&f, 1.0).edges().len(), 3);
        assert_eq!(complex_at(&f, 0.999).edges().len(), 4);
        assert_eq!(complex_at(&f, spec.bounds.eps_a).edges().len(), 0);
        assert_eq!(complex_at(&f, 0.0), *f.complex());
    }

    #[test]
    fn triangle_enters_with_its_weakest_edge() {
        let vals = [((0, 1), 3.0), ((1, 2), 1.0), ((0, 2), 2.0)];
        let edges = UndirectedEdgeSet::from_pairs(vals.iter().map(|v| v.0));
        let f = evc_filtration(&edges, 3, &FiltrationSpec::new(vals, Direction::Descending)).unwrap();
        assert_eq!(f.appearance(&Simplex::triangle(0, 1, 2)), Some(1.0));
        let last = f.order().last().unwrap();
        assert_eq!(last.simplex, Simplex::triangle(0, 1, 2));
        let asc = evc_filtration(&edges, 3, &FiltrationSpec::new(vals, Direction::Ascending)).unwrap();
        assert_eq!(asc.appearance(&Simplex::triangle(0, 1, 2)), Some(3.0));
        assert_eq!(complex_at(&asc, 2.5).edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn floor_edges_enter_last() {
        let edges = UndirectedEdgeSet::from_pairs([(0, 1), (1, 2), (0, 2)]);
        let spec =
            FiltrationSpec::new([((0, 1), 1.0), ((1, 2), 2.0)], Direction::Descending).with_floor_edges([(2, 0)]);
        let f = evc_filtration(&edges, 3, &spec).unwrap();
        assert_eq!(complex_at(&f, 0.5).edges().len(), 2);
        assert_eq!(complex_at(&f, 0.0).counts(), (3, 3, 1));
        assert_eq!(f.order().last().unwrap().value, 0.0);
    }

    #[test]
    fn absent_edges_never_enter() {
        let edges = UndirectedEdgeSet::from_pairs([(0, 1), (1, 2)]);
        let spec = FiltrationSpec::new([((0, 1), 1.0)], Direction::Descending);
        let f = evc_filtration(&edges, 3, &spec).unwrap();
        assert_eq!(f.complex().edges(), &[(0, 1)]);
        let bad = FiltrationSpec::new([((0, 2), 1.0)], Direction::Descending);
        assert!(evc_filtration(&edges, 3, &bad).is_err());
    }
}
