#![allow(dead_code, clippy::needless_range_loop)]

use flowtopo_core::graph::{DirectedWeightedGraph, Edge, UndirectedEdgeSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random edge set on `n` vertices with edge probability `p`.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    e
}

/// Random values on a random edge set; values are distinct with
/// probability one, with occasional deliberate ties.
pub fn random_edge_values(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<((usize, usize), f64)> {
    random_edges(rng, n, p)
        .into_iter()
        .map(|e| {
            let v = if rng.gen_bool(0.2) {
                rng.gen_range(1..5) as f64
            } else {
                rng.gen_range(0.01..5.0)
            };
            (e, v)
        })
        .collect()
}

/// Connected, non-bipartite undirected graph: random spanning tree, a
/// triangle on `0, 1, 2`, and extra random edges.
pub fn random_undirected(rng: &mut ChaCha8Rng, n: usize) -> DirectedWeightedGraph {
    assert!(n >= 3);
    let mut pairs: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut order: Vec<usize> = (3..n).collect();
    order.shuffle(rng);
    let mut placed = vec![0, 1, 2];
    for v in order {
        let u = placed[rng.gen_range(0..placed.len())];
        pairs.push((u, v));
        placed.push(v);
    }
    for (i, j) in random_edges(rng, n, 0.2) {
        pairs.push((i, j));
    }
    let set = UndirectedEdgeSet::from_pairs(pairs);
    DirectedWeightedGraph::undirected(n, set.edges().iter().map(|&(i, j)| (i, j, rng.gen_range(0.1..3.0)))).unwrap()
}

/// Strongly connected aperiodic directed graph: a Hamiltonian cycle, a
/// chord giving a cycle of coprime length, and random extra arcs.
pub fn random_directed(rng: &mut ChaCha8Rng, n: usize) -> DirectedWeightedGraph {
    assert!(n >= 3);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|k| (perm[k], perm[(k + 1) % n])).collect();
    // chord perm[n-1] -> perm[1] skips perm[0], giving a cycle of length n - 1
    arcs.push((perm[n - 1], perm[1]));
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(0.15) {
                arcs.push((i, j));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    DirectedWeightedGraph::new(
        n,
        arcs.into_iter().map(|(i, j)| Edge::new(i, j, rng.gen_range(0.1..3.0))),
    )
    .unwrap()
}

/// Dense `pi` with `pi P = pi`, `sum pi = 1`, by Gaussian elimination with
/// partial pivoting on `(P^T - I)` with the last row replaced by ones.
pub fn dense_stationary(p: &[Vec<f64>]) -> Vec<f64> {
    let n = p.len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = p[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[n - 1][j] = 1.0;
    }
    a[n - 1][n] = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// All triangles `i < j < k` by checking every triple.
pub fn brute_triangles(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize, usize)> {
    let has = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut t = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if has(i, j) && has(i, k) && has(j, k) {
                    t.push((i, j, k));
                }
            }
        }
    }
    t
}

fn gf2_rank_u128(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & mask != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// `(beta0, beta1)` of the clique complex of `edges`, from union-find
/// components and a bitmask rank of the triangle boundaries. At most 128
/// edges.
pub fn brute_betti(n: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    assert!(edges.len() <= 128);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(i, j) in &edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    let b0 = (0..n).filter(|&v| find(&mut parent, v) == v).count();
    let idx = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b)).unwrap();
    let rows: Vec<u128> = brute_triangles(n, &edges)
        .into_iter()
        .map(|(i, j, k)| (1u128 << idx(i, j)) | (1u128 << idx(i, k)) | (1u128 << idx(j, k)))
        .collect();
    let cycle_rank = edges.len() + b0 - n;
    (b0, cycle_rank - gf2_rank_u128(rows))
}

/// Whether a set of edges (as a chain) is a sum of triangle boundaries of
/// the clique complex of `edges`.
pub fn brute_is_boundary(n: usize, complex_edges: &[(usize, usize)], chain: &[(usize, usize)]) -> bool {
    let mut edges = complex_edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    let idx = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let tri: Vec<u128> = brute_triangles(n, &edges)
        .into_iter()
        .map(|(i, j, k)| (1u128 << idx(i, j)) | (1u128 << idx(i, k)) | (1u128 << idx(j, k)))
        .collect();
    let target = chain.iter().fold(0u128, |m, &(i, j)| m ^ (1u128 << idx(i, j)));
    let r = gf2_rank_u128(tri.clone());
    let mut with = tri;
    with.push(target);
    gf2_rank_u128(with) == r
}

/// Every simple directed cycle, found by plain backtracking from each
/// start vertex over larger vertices only.
pub fn brute_cycles(n: usize, arcs: &[(usize, usize)], max_len: usize) -> Vec<Vec<usize>> {
    fn go(
        arcs: &[(usize, usize)],
        start: usize,
        path: &mut Vec<usize>,
        on: &mut Vec<bool>,
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &(a, b) in arcs {
            if a != v {
                continue;
            }
            if b == start {
                out.push(path.clone());
            } else if b > start && !on[b] && path.len() < max_len {
                on[b] = true;
                path.push(b);
                go(arcs, start, path, on, max_len, out);
                path.pop();
                on[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        go(arcs, s, &mut vec![s], &mut on, max_len, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
