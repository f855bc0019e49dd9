//! Barcode versus rank-oracle check on seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flowtopo_core::complex::{betti_numbers, Field};
use flowtopo_core::filtration::{complex_at, evc_filtration, Direction, FilteredCliqueComplex, FiltrationSpec};
use flowtopo_core::graph::UndirectedEdgeSet;
use flowtopo_core::persistence::{compute_persistence, oracle_betti_at};

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub seed: u64,
    pub instances: usize,
    pub max_vertices: usize,
    pub thresholds: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: 50,
            max_vertices: 12,
            thresholds: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub instance: usize,
    pub eps: f64,
    pub barcode: (usize, usize),
    pub oracle: (usize, usize),
}

/// Thresholds where GF(2) and rational Betti numbers differ (torsion) or
/// the rational rank could not be computed. Logged, not failures.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDiscrepancy {
    pub instance: usize,
    pub eps: f64,
    pub gf2: (usize, usize),
    pub rational: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleReport {
    pub instances: usize,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
    pub discrepancies: Vec<FieldDiscrepancy>,
}

/// One random filtered clique complex: `n` in `1..=max_vertices`, edge
/// density in `[0.2, 0.9)`, values in `(0, 5)` with about a fifth of them
/// forced onto integers to create ties, random direction.
pub fn random_instance(rng: &mut ChaCha8Rng, max_vertices: usize) -> FilteredCliqueComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let p = rng.gen_range(0.2..0.9);
    let mut values = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                let v = if rng.gen_bool(0.2) {
                    rng.gen_range(1..5) as f64
                } else {
                    rng.gen_range(0.01..5.0)
                };
                values.push(((i, j), v));
            }
        }
    }
    let direction = if rng.gen_bool(0.5) {
        Direction::Descending
    } else {
        Direction::Ascending
    };
    let edges = UndirectedEdgeSet::from_pairs(values.iter().map(|v| v.0));
    evc_filtration(&edges, n, &FiltrationSpec::new(values, direction)).expect("valid random instance")
}

/// Probe points: every breakpoint and the midpoints between neighbours
/// (where ties and strict inequalities bite), padded with a uniform grid
/// over the bounds, then thinned evenly to `count`.
pub fn thresholds(filtered: &FilteredCliqueComplex, count: usize) -> Vec<f64> {
    let b = filtered.bounds();
    let mut pts = filtered.breakpoints();
    pts.push(b.eps_a);
    pts.push(b.eps_b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mids: Vec<f64> = pts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    pts.extend(mids);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.len() > count {
        let m = pts.len();
        return (0..count).map(|k| pts[k * m / count]).collect();
    }
    let need = count - pts.len();
    let fine = 4 * count;
    let grid: Vec<f64> = (0..=fine)
        .map(|k| b.eps_a + (b.eps_b - b.eps_a) * k as f64 / fine as f64)
        .filter(|x| pts.binary_search_by(|p| p.total_cmp(x)).is_err())
        .collect();
    let g = grid.len();
    if need >= g {
        pts.extend(grid);
    } else {
        pts.extend((0..need).map(|k| grid[k * g / need]));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

pub fn run(opts: &OracleOptions) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = OracleReport {
        instances: opts.instances,
        ..Default::default()
    };
    for instance in 0..opts.instances {
        let filtered = random_instance(&mut rng, opts.max_vertices);
        let barcode = compute_persistence(&filtered, false);
        for eps in thresholds(&filtered, opts.thresholds) {
            report.comparisons += 1;
            let got = barcode.alive_counts(eps);
            let want = oracle_betti_at(&filtered, eps);
            if got != want {
                report.mismatches.push(Mismatch {
                    instance,
                    eps,
                    barcode: got,
                    oracle: want,
                });
            }
            let rational = betti_numbers(&complex_at(&filtered, eps), Field::Rational).ok();
            if rational != Some(want) {
                report.discrepancies.push(FieldDiscrepancy {
                    instance,
                    eps,
                    gf2: want,
                    rational,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_is_clean_and_reproducible() {
        let opts = OracleOptions {
            instances: 10,
            ..Default::default()
        };
        let a = run(&opts);
        assert!(a.mismatches.is_empty());
        assert_eq!(a, run(&opts));
        assert_eq!(a.comparisons, 1000);
    }

    #[test]
    fn threshold_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_instance(&mut rng, 12);
            let t = thresholds(&f, 100);
            assert_eq!(t.len(), 100, "{t:?}");
            assert!(t.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
