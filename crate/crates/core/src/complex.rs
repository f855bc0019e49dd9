//! Clique complexes up to dimension 2, chains over GF(2), and boundary
//! matrices over GF(2) or the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::UndirectedEdgeSet;
use crate::linalg::{gf2_rank, rational_rank, BitVector, Gf2Basis};

/// A vertex, edge or triangle with strictly increasing vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    verts: [usize; 3],
    len: u8,
}

impl Simplex {
    pub fn vertex(v: usize) -> Self {
        Self {
            verts: [v, 0, 0],
            len: 1,
        }
    }

    /// Panics if `i == j`.
    pub fn edge(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "degenerate edge");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Self {
            verts: [a, b, 0],
            len: 2,
        }
    }

    /// Panics on repeated vertices.
    pub fn triangle(i: usize, j: usize, k: usize) -> Self {
        let mut v = [i, j, k];
        v.sort_unstable();
        assert!(v[0] < v[1] && v[1] < v[2], "degenerate triangle");
        Self { verts: v, len: 3 }
    }

    pub fn from_vertices(vertices: &[usize]) -> Option<Self> {
        match *vertices {
            [v] => Some(Self::vertex(v)),
            [i, j] if i != j => Some(Self::edge(i, j)),
            [i, j, k] if i != j && j != k && i != k => Some(Self::triangle(i, j, k)),
            _ => None,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts[..self.len as usize]
    }

    pub fn dimension(&self) -> usize {
        self.len as usize - 1
    }

    /// Codimension-one faces, the `j`-th omitting vertex `j`.
    pub fn faces(&self) -> Vec<Simplex> {
        let v = self.vertices();
        (0..v.len())
            .filter(|_| v.len() > 1)
            .map(|skip| {
                let rest: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &x)| x)
                    .collect();
                Simplex::from_vertices(&rest).unwrap()
            })
            .collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Clique complex truncated at dimension 2, each dimension sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComplex {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    triangles: Vec<(usize, usize, usize)>,
}

impl CliqueComplex {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[(usize, usize, usize)] {
        &self.triangles
    }

    /// `(N0, N1, N2)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.num_vertices, self.edges.len(), self.triangles.len())
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).ok()
    }

    pub fn triangle_index(&self, t: (usize, usize, usize)) -> Option<usize> {
        self.triangles.binary_search(&t).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        match *s.vertices() {
            [v] => v < self.num_vertices,
            [i, j] => self.edge_index(i, j).is_some(),
            [i, j, k] => self.triangle_index((i, j, k)).is_some(),
            _ => false,
        }
    }

    /// Every simplex, dimension by dimension.
    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.num_vertices)
            .map(Simplex::vertex)
            .chain(self.edges.iter().map(|&(i, j)| Simplex::edge(i, j)))
            .chain(self.triangles.iter().map(|&(i, j, k)| Simplex::triangle(i, j, k)))
    }

    /// Edge indices of each triangle's faces `[(j,k), (i,k), (i,j)]`.
    pub fn triangle_faces(&self) -> Vec<[usize; 3]> {
        self.triangles
            .iter()
            .map(|&(i, j, k)| {
                [
                    self.edge_index(j, k).unwrap(),
                    self.edge_index(i, k).unwrap(),
                    self.edge_index(i, j).unwrap(),
                ]
            })
            .collect()
    }

    /// Triangle indices containing each edge.
    pub fn edge_cofaces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (t, faces) in self.triangle_faces().into_iter().enumerate() {
            for e in faces {
                out[e].push(t);
            }
        }
        out
    }

    /// The undirected graph this complex was built from.
    pub fn one_skeleton(&self) -> UndirectedEdgeSet {
        UndirectedEdgeSet::from_pairs(self.edges.iter().copied())
    }
}

/// Clique complex of `edges` on `num_vertices` vertices, up to `max_dim` (1 or 2).
///
/// Triangles come from intersecting sorted neighbour lists along each edge.
pub fn clique_complex(edges: &UndirectedEdgeSet, num_vertices: usize, max_dim: usize) -> Result<CliqueComplex> {
    if !(1..=2).contains(&max_dim) {
        return Err(Error::InvalidParameter("max_dim must be 1 or 2"));
    }
    if edges.vertex_bound() > num_vertices {
        return Err(Error::VertexOutOfRange {
            vertex: edges.vertex_bound() - 1,
            num_vertices,
        });
    }
    let mut triangles = Vec::new();
    if max_dim == 2 {
        let adj = edges.neighbors(num_vertices);
        for &(i, j) in edges.edges() {
            let (a, b) = (&adj[i], &adj[j]);
            let (mut p, mut q) = (a.partition_point(|&x| x <= j), b.partition_point(|&x| x <= j));
            while p < a.len() && q < b.len() {
                match a[p].cmp(&b[q]) {
                    Ordering::Less => p += 1,
                    Ordering::Greater => q += 1,
                    Ordering::Equal => {
                        triangles.push((i, j, a[p]));
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
    }
    Ok(CliqueComplex {
        num_vertices,
        edges: edges.edges().to_vec(),
        triangles,
    })
}

/// A chain over GF(2): the set of simplices with coefficient one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    simplices: Vec<Simplex>,
}

impl Chain {
    /// Repeated simplices cancel in pairs. Panics on mixed dimensions.
    pub fn new(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut s: Vec<Simplex> = simplices.into_iter().collect();
        s.sort_unstable();
        let mut out: Vec<Simplex> = Vec::with_capacity(s.len());
        for x in s {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        if let Some(first) = out.first() {
            assert!(
                out.iter().all(|x| x.dimension() == first.dimension()),
                "chain with mixed dimensions"
            );
        }
        Self { simplices: out }
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::new(edges.into_iter().map(|(i, j)| Simplex::edge(i, j)))
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn is_zero(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the zero chain.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.first().map(Simplex::dimension)
    }

    /// Edge endpoints of a 1-chain.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices
            .iter()
            .filter(|s| s.dimension() == 1)
            .map(|s| (s.vertices()[0], s.vertices()[1]))
            .collect()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        Chain::new(self.simplices.iter().chain(&other.simplices).copied())
    }

    pub fn boundary(&self) -> Chain {
        Chain::new(self.simplices.iter().flat_map(|s| s.faces()))
    }
}

/// Coefficient field for boundary matrices and Betti numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Gf2,
    Rational,
}

/// Sparse matrix of `d_k`: columns indexed by k-simplices, rows by
/// (k-1)-simplices, in the complex's lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dimension: usize,
    pub field: Field,
    pub num_rows: usize,
    /// Per column, `(row, coefficient)` sorted by row. Over GF(2) every
    /// coefficient is 1.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col].iter().find(|e| e.0 == row).map(|e| e.1).unwrap_or(0)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.columns.len()]; self.num_rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v;
            }
        }
        m
    }

    /// `self * rhs` in the matrix field, dense, row-major.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.num_columns(), rhs.num_rows, "dimension mismatch");
        let mut out = vec![vec![0i64; rhs.num_columns()]; self.num_rows];
        for (c, col) in rhs.columns.iter().enumerate() {
            for &(mid, b) in col {
                for &(r, a) in &self.columns[mid] {
                    out[r][c] += a * b;
                }
            }
        }
        if self.field == Field::Gf2 {
            for row in &mut out {
                for v in row.iter_mut() {
                    *v = v.rem_euclid(2);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> Result<usize> {
        match self.field {
            Field::Gf2 => Ok(gf2_rank(
                self.num_rows,
                self.columns
                    .iter()
                    .map(|c| BitVector::from_indices(self.num_rows, c.iter().map(|e| e.0))),
            )),
            Field::Rational => rational_rank(&self.to_dense()),
        }
    }
}

/// Matrix of `d_k` for `k` in {1, 2}, with alternating signs over the rationals.
pub fn boundary_matrix(complex: &CliqueComplex, k: usize, field: Field) -> Result<BoundaryMatrix> {
    let sign = |s: i64| if field == Field::Gf2 { 1 } else { s };
    let (num_rows, columns) = match k {
        1 => (
            complex.num_vertices(),
            complex
                .edges()
                .iter()
                .map(|&(i, j)| vec![(i, sign(-1)), (j, 1)])
                .collect(),
        ),
        2 => (
            complex.edges().len(),
            complex
                .triangle_faces()
                .into_iter()
                .map(|[jk, ik, ij]| {
                    let mut col = vec![(jk, 1), (ik, sign(-1)), (ij, 1)];
                    col.sort_unstable();
                    col
                })
                .collect(),
        ),
        _ => return Err(Error::InvalidParameter("boundary dimension must be 1 or 2")),
    };
    Ok(BoundaryMatrix {
        dimension: k,
        field,
        num_rows,
        columns,
    })
}

/// `(beta_0, beta_1)` from boundary ranks.
pub fn betti_numbers(complex: &CliqueComplex, field: Field) -> Result<(usize, usize)> {
    let r1 = boundary_matrix(complex, 1, field)?.rank()?;
    let r2 = boundary_matrix(complex, 2, field)?.rank()?;
    let (n0, n1, _) = complex.counts();
    Ok((n0 - r1, n1 - r1 - r2))
}

/// Span of the triangle boundaries of a complex, for repeated membership queries.
#[derive(Debug, Clone)]
pub struct BoundarySpace<'a> {
    complex: &'a CliqueComplex,
    basis: Gf2Basis,
}

impl<'a> BoundarySpace<'a> {
    pub fn new(complex: &'a CliqueComplex) -> Self {
        let n1 = complex.edges().len();
        let mut basis = Gf2Basis::new(n1);
        for faces in complex.triangle_faces() {
            basis.insert(BitVector::from_indices(n1, faces));
        }
        Self { complex, basis }
    }

    pub fn complex(&self) -> &CliqueComplex {
        self.complex
    }

    /// Validates a 1-chain against the complex and returns it as a bit vector.
    pub fn cycle_vector(&self, chain: &Chain) -> Result<BitVector> {
        if chain.dimension().is_some_and(|d| d != 1) {
            return Err(Error::InvalidParameter("expected a 1-chain"));
        }
        let n1 = self.complex.edges().len();
        let mut v = BitVector::zeros(n1);
        for (i, j) in chain.edges() {
            v.flip(self.complex.edge_index(i, j).ok_or(Error::NotInComplex)?);
        }
        if !chain.boundary().is_zero() {
            return Err(Error::NotACycle);
        }
        Ok(v)
    }

    pub fn is_boundary(&self, cycle: &Chain) -> Result<bool> {
        Ok(self.basis.contains(self.cycle_vector(cycle)?))
    }

    /// Whether `cycle` is homologous to some GF(2) combination of `generators`.
    pub fn in_span_of(&self, cycle: &Chain, generators: &[Chain]) -> Result<bool> {
        let mut basis = self.basis.clone();
        for g in generators {
            basis.insert(self.cycle_vector(g)?);
        }
        Ok(basis.contains(self.cycle_vector(cycle)?))
    }
}

/// Whether a 1-cycle bounds a sum of triangles of `complex`.
pub fn is_boundary(cycle: &Chain, complex: &CliqueComplex) -> Result<bool> {
    BoundarySpace::new(complex).is_boundary(cycle)
}
