//! Integer spans of vectors of the form `e_i` and `e_i - e_j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::intmat::{hermite_rows, in_row_lattice};
use crate::{Error, Result};

/// An element of `{e_i} ∪ {e_i - e_j : i < j}` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VTilde {
    Basis(usize),
    Difference(usize, usize),
}

impl VTilde {
    pub fn to_vector(self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match self {
            VTilde::Basis(i) => v[i] = 1,
            VTilde::Difference(i, j) => {
                v[i] = 1;
                v[j] = -1;
            }
        }
        v
    }

    fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            VTilde::Basis(i) => i < n,
            VTilde::Difference(i, j) => i < j && j < n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{self:?} is not an element of the vector set in rank {n}")))
        }
    }

    /// All `n + n(n-1)/2` elements.
    pub fn all(n: usize) -> Vec<VTilde> {
        let mut out: Vec<VTilde> = (0..n).map(VTilde::Basis).collect();
        for i in 0..n {
            for j in i + 1..n {
                out.push(VTilde::Difference(i, j));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasisProblem {
    pub rank: usize,
    pub generators: Vec<VTilde>,
    pub query: VTilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeStatus {
    /// The query is an integer combination of the generators.
    Member,
    /// Some nonzero multiple of the query is in the span but the query is
    /// not. Never happens for these vector sets.
    MultipleOnly,
    /// No nonzero multiple of the query is in the span.
    NotMember,
}

pub fn lattice_membership(p: &LatticeBasisProblem) -> Result<LatticeStatus> {
    let n = p.rank;
    p.query.check(n)?;
    for g in &p.generators {
        g.check(n)?;
    }
    let to_big = |v: VTilde| -> Vec<BigInt> { v.to_vector(n).into_iter().map(BigInt::from).collect() };
    let gens: Vec<Vec<BigInt>> = p.generators.iter().map(|&g| to_big(g)).collect();
    let h = hermite_rows(gens.clone());
    let q = to_big(p.query);
    if in_row_lattice(&h, &q) {
        return Ok(LatticeStatus::Member);
    }
    let mut with_query = gens;
    with_query.push(q);
    if hermite_rows(with_query).len() == h.len() {
        Ok(LatticeStatus::MultipleOnly)
    } else {
        Ok(LatticeStatus::NotMember)
    }
}
