//! Dense exact linear algebra used for Betti numbers and boundary tests:
//! GF(2) elimination on bit-packed vectors and fraction-free (Bareiss)
//! elimination over the integers for ranks over the rationals.
//!
//! Nothing here is shared with the persistence reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Bit-packed vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index out of range");
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Incrementally built echelon basis over GF(2), keyed by leading bit.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    len: usize,
    by_leading: Vec<Option<BitVector>>,
    rank: usize,
}

impl Gf2Basis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            by_leading: vec![None; len],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        while let Some(l) = v.leading() {
            match &self.by_leading[l] {
                Some(b) => v.xor_assign(b),
                None => break,
            }
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the current basis.
    pub fn insert(&mut self, v: BitVector) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.leading() {
            Some(l) => {
                self.by_leading[l] = Some(r);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: BitVector) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Rank over GF(2) of the matrix whose columns are `columns`.
pub fn gf2_rank(rows: usize, columns: impl IntoIterator<Item = BitVector>) -> usize {
    let mut basis = Gf2Basis::new(rows);
    for c in columns {
        basis.insert(c);
    }
    basis.rank()
}

/// Exact rank over the rationals of a dense integer matrix (row-major).
pub fn rational_rank(matrix: &[Vec<i64>]) -> Result<usize> {
    let rows = matrix.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c];
        for r in rank + 1..rows {
            let factor = a[r][c];
            for k in c..cols {
                let lhs = a[r][k].checked_mul(pivot).ok_or(Error::RankOverflow)?;
                let rhs = a[rank][k].checked_mul(factor).ok_or(Error::RankOverflow)?;
                a[r][k] = lhs.checked_sub(rhs).ok_or(Error::RankOverflow)? / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}
