mod common;

use common::*;
use flowtopo_core::complex::*;
use flowtopo_core::filtration::*;
use flowtopo_core::fixtures::{staged_holes, two_hole_edges};
use flowtopo_core::graph::UndirectedEdgeSet;
use flowtopo_core::persistence::*;
use proptest::prelude::*;
use rand::Rng;

fn filtered_from(n: usize, vals: &[((usize, usize), f64)], dir: Direction) -> FilteredCliqueComplex {
    let edges = UndirectedEdgeSet::from_pairs(vals.iter().map(|v| v.0));
    evc_filtration(&edges, n, &FiltrationSpec::new(vals.to_vec(), dir)).unwrap()
}

/// Threshold values spread over the whole range, including every
/// breakpoint and points just on either side of it.
fn probe_points(f: &FilteredCliqueComplex, rng: &mut rand_chacha::ChaCha8Rng, count: usize) -> Vec<f64> {
    let b = f.bounds();
    let (lo, hi) = if b.eps_a < b.eps_b {
        (b.eps_a, b.eps_b)
    } else {
        (b.eps_b, b.eps_a)
    };
    let mut pts = vec![b.eps_a, b.eps_b];
    for v in f.breakpoints() {
        pts.extend([v, v + 1e-9, v - 1e-9]);
    }
    while pts.len() < count {
        pts.push(rng.gen_range(lo..=hi));
    }
    pts.truncate(count.max(2));
    pts.retain(|&x| b.in_range(x));
    pts
}

#[test]
fn two_hole_fixture() {
    let e = two_hole_edges();
    assert_eq!(e.len(), 10);
    let k = clique_complex(&e, 7, 2).unwrap();
    assert_eq!(k.triangles(), &[(0, 1, 2), (2, 3, 4)]);
    assert_eq!(betti_numbers(&k, Field::Gf2).unwrap(), (1, 2));
    assert_eq!(betti_numbers(&k, Field::Rational).unwrap(), (1, 2));
    assert_eq!(brute_betti(7, e.edges()), (1, 2));
}

#[test]
fn triangle_boundary_signs() {
    let k = clique_complex(&UndirectedEdgeSet::from_pairs([(0, 1), (0, 2), (1, 2)]), 3, 2).unwrap();
    let d2 = boundary_matrix(&k, 2, Field::Rational).unwrap();
    // edges sorted: [01, 02, 12]; d[012] = [12] - [02] + [01]
    assert_eq!(d2.to_dense(), vec![vec![1], vec![-1], vec![1]]);
    let d1 = boundary_matrix(&k, 1, Field::Rational).unwrap();
    assert_eq!(d1.to_dense(), vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
}

#[test]
fn staged_holes_betti_curve() {
    let f = filtered_from(7, &staged_holes(), Direction::Descending);
    let bc = compute_persistence(&f, true);
    let curve = betti_curve(&bc, &[3.5, 2.5, 1.5, 0.5]);
    let b1: Vec<usize> = curve.iter().map(|s| s.beta1).collect();
    assert_eq!(b1, vec![0, 1, 2, 1]);
    let h1: Vec<_> = bc.dimension(1).filter(|b| !b.is_zero_lifespan()).collect();
    assert_eq!(h1.len(), 2);
    assert_eq!((h1[0].birth, h1[0].death, h1[0].essential), (3.0, 1.0, false));
    // the killing simplex is the later of the two triangles on the new diagonal
    assert_eq!(h1[0].death_simplex, Some(Simplex::triangle(0, 2, 3)));
    assert_eq!((h1[1].birth, h1[1].essential), (2.0, true));
    assert_eq!(h1[1].death, 0.0);
}

#[test]
fn hollow_square() {
    let vals = [((0, 1), 4.0), ((1, 2), 3.0), ((2, 3), 2.0), ((0, 3), 1.0)];
    let f = filtered_from(4, &vals, Direction::Descending);
    let bc = compute_persistence(&f, true);
    let h1: Vec<_> = bc.dimension(1).collect();
    assert_eq!(h1.len(), 1);
    assert_eq!((h1[0].birth, h1[0].essential), (1.0, true));
    for b in f.breakpoints() {
        for eps in [b - 1e-9, b + 1e-9] {
            assert_eq!(bc.alive_counts(eps), oracle_betti_at(&f, eps));
        }
    }
    assert_eq!(bc.alive_counts(1.0 + 1e-9).1, 0);
    assert_eq!(bc.alive_counts(1.0 - 1e-9).1, 1);
}

#[test]
fn vertices_only() {
    let f = evc_filtration(
        &UndirectedEdgeSet::default(),
        5,
        &FiltrationSpec::new(vec![], Direction::Descending),
    )
    .unwrap();
    let bc = compute_persistence(&f, true);
    assert_eq!(bc.dimension(0).filter(|b| b.essential).count(), 5);
    assert_eq!(bc.dimension(1).count(), 0);
    assert_eq!(oracle_betti_at(&f, 0.5), (5, 0));
}

#[test]
fn equal_values_switch_at_once() {
    let e = [(0, 1), (1, 2), (0, 2), (2, 3)];
    let vals: Vec<_> = e.iter().map(|&p| (p, 2.0)).collect();
    let f = filtered_from(4, &vals, Direction::Descending);
    assert_eq!(complex_at(&f, 2.0 + 1e-12).counts(), (4, 0, 0));
    assert_eq!(complex_at(&f, 2.0 - 1e-12).counts(), (4, 4, 1));
    let bc = compute_persistence(&f, false);
    // the triangle is filled as it closes
    let h1: Vec<_> = bc.dimension(1).collect();
    assert_eq!(h1.len(), 1);
    assert!(h1[0].is_zero_lifespan());
}

#[test]
fn spec_ranges_are_checked() {
    let vals = vec![((0, 1), 1.0), ((1, 2), 2.0)];
    let e = UndirectedEdgeSet::from_pairs([(0, 1), (1, 2)]);
    let bad = FiltrationSpec::new(vals.clone(), Direction::Descending).with_bounds(1.5, 0.0);
    assert!(matches!(
        evc_filtration(&e, 3, &bad),
        Err(flowtopo_core::Error::SpecRange(_))
    ));
    let bad = FiltrationSpec::new(vals.clone(), Direction::Ascending).with_bounds(0.0, 1.5);
    assert!(matches!(
        evc_filtration(&e, 3, &bad),
        Err(flowtopo_core::Error::SpecRange(_))
    ));
    let outside = FiltrationSpec::new(vec![((0, 2), 1.0)], Direction::Descending);
    assert!(evc_filtration(&e, 3, &outside).is_err());
}

#[test]
fn ascending_mirrors_descending() {
    let mut r = rng(5);
    for _ in 0..20 {
        let vals = random_edge_values(&mut r, 8, 0.5);
        let neg: Vec<_> = vals.iter().map(|&(e, v)| (e, 10.0 - v)).collect();
        let d = compute_persistence(&filtered_from(8, &vals, Direction::Descending), false);
        let a = compute_persistence(&filtered_from(8, &neg, Direction::Ascending), false);
        let dl: Vec<_> = d.dimension(1).map(|b| (b.birth, b.essential)).collect();
        let al: Vec<_> = a.dimension(1).map(|b| (10.0 - b.birth, b.essential)).collect();
        assert_eq!(dl.len(), al.len());
        for (x, y) in dl.iter().zip(&al) {
            assert!((x.0 - y.0).abs() < 1e-12 && x.1 == y.1);
        }
    }
}

fn check_barcode_against_oracles(seed: u64, dir: Direction, samples: usize) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=12);
    let p = r.gen_range(0.2..0.8);
    let vals = random_edge_values(&mut r, n, p);
    let f = filtered_from(n, &vals, dir);
    let bc = compute_persistence(&f, true);
    for eps in probe_points(&f, &mut r, samples) {
        let alive = bc.alive_counts(eps);
        let snapshot = complex_at(&f, eps);
        prop_assert_eq!(alive, oracle_betti_at(&f, eps), "eps {}", eps);
        prop_assert_eq!(alive, brute_betti(n, snapshot.edges()), "eps {}", eps);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bars_alive_equal_betti(seed in any::<u64>(), asc in any::<bool>()) {
        let dir = if asc { Direction::Ascending } else { Direction::Descending };
        check_barcode_against_oracles(seed, dir, 60)?;
    }

    #[test]
    fn snapshots_match_threshold_rebuild(seed in any::<u64>(), asc in any::<bool>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=12);
        let vals = random_edge_values(&mut r, n, 0.5);
        let dir = if asc { Direction::Ascending } else { Direction::Descending };
        let f = filtered_from(n, &vals, dir);
        let mut prev: Option<CliqueComplex> = None;
        let mut pts = probe_points(&f, &mut r, 40);
        pts.sort_by(|a, b| dir.cmp_values(*a, *b));
        for eps in pts {
            let keep: Vec<(usize, usize)> = vals
                .iter()
                .filter(|(_, v)| if asc { *v < eps } else { *v > eps })
                .map(|v| v.0)
                .collect();
            let k = complex_at(&f, eps);
            prop_assert_eq!(k.edges().to_vec(), UndirectedEdgeSet::from_pairs(keep.clone()).edges().to_vec());
            prop_assert_eq!(k.triangles().to_vec(), brute_triangles(n, &keep));
            if let Some(p) = &prev {
                // nested as eps moves forward
                prop_assert!(p.edges().iter().all(|e| k.edges().contains(e)));
                prop_assert!(p.triangles().iter().all(|t| k.triangles().contains(t)));
            }
            prev = Some(k);
        }
    }

    #[test]
    fn faces_enter_no_later(seed in any::<u64>(), asc in any::<bool>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=12);
        let dir = if asc { Direction::Ascending } else { Direction::Descending };
        let f = filtered_from(n, &random_edge_values(&mut r, n, 0.6), dir);
        let pos = |s: &Simplex| f.order().iter().position(|x| x.simplex == *s).unwrap();
        for (k, x) in f.order().iter().enumerate() {
            for face in x.simplex.faces() {
                prop_assert!(pos(&face) < k);
            }
            if x.simplex.dimension() == 2 {
                let v = x.simplex.vertices();
                let worst = [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])]
                    .iter()
                    .map(|&(a, b)| f.appearance(&Simplex::edge(a, b)).unwrap())
                    .fold(x.value, |m, e| dir.later(m, e));
                prop_assert_eq!(worst, x.value);
            }
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=14);
        let e = UndirectedEdgeSet::from_pairs(random_edges(&mut r, n, 0.5));
        let k = clique_complex(&e, n, 2).unwrap();
        prop_assert_eq!(k.triangles().to_vec(), brute_triangles(n, e.edges()));
        let d1 = boundary_matrix(&k, 1, Field::Rational).unwrap();
        let d2 = boundary_matrix(&k, 2, Field::Rational).unwrap();
        prop_assert!(d1.compose(&d2).iter().flatten().all(|&x| x == 0));
        let g1 = boundary_matrix(&k, 1, Field::Gf2).unwrap();
        let g2 = boundary_matrix(&k, 2, Field::Gf2).unwrap();
        prop_assert!(g1.compose(&g2).iter().flatten().all(|&x| x % 2 == 0));
        let gf2 = betti_numbers(&k, Field::Gf2).unwrap();
        prop_assert_eq!(gf2, brute_betti(n, e.edges()));
        prop_assert_eq!(gf2, betti_numbers(&k, Field::Rational).unwrap());
    }

    #[test]
    fn representatives_are_valid(seed in any::<u64>(), asc in any::<bool>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=12);
        let dir = if asc { Direction::Ascending } else { Direction::Descending };
        let f = filtered_from(n, &random_edge_values(&mut r, n, 0.5), dir);
        let bc = compute_persistence(&f, true);
        let components = brute_betti(n, f.complex().edges()).0;
        prop_assert_eq!(bc.dimension(0).filter(|b| b.essential).count(), components);
        for b in bc.bars.iter() {
            match (b.dimension, b.death_simplex) {
                (0, Some(s)) => prop_assert_eq!(s.dimension(), 1),
                (1, Some(s)) => prop_assert_eq!(s.dimension(), 2),
                _ => prop_assert!(b.essential),
            }
            if b.dimension != 1 {
                continue;
            }
            let rep = b.representative.as_ref().unwrap();
            prop_assert!(rep.boundary().is_zero());
            let at_birth = f.complex_through(b.birth);
            let rep_edges = rep.edges();
            if !b.is_zero_lifespan() {
                prop_assert!(!brute_is_boundary(n, at_birth.edges(), &rep_edges));
                prop_assert!(!is_boundary(rep, &at_birth).unwrap());
            }
            if !b.essential {
                let at_death = f.complex_through(b.death);
                prop_assert!(brute_is_boundary(n, at_death.edges(), &rep_edges));
            } else {
                prop_assert!(!is_boundary(rep, f.complex()).unwrap());
            }
        }
    }

    #[test]
    fn barcode_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vals = random_edge_values(&mut r, 10, 0.5);
        let a = compute_persistence(&filtered_from(10, &vals, Direction::Descending), true);
        let mut shuffled = vals.clone();
        shuffled.reverse();
        let b = compute_persistence(&filtered_from(10, &shuffled, Direction::Descending), true);
        prop_assert_eq!(a, b);
    }
}
