use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::intmat::{invariant_factors, SparseIntMatrix};
use crate::classify::BettiProfile;
use crate::cyclic_graph::CyclicGraph;
use crate::{Error, Result};

/// Largest vertex count the exhaustive constructions accept by default.
pub const DEFAULT_CAP: usize = 16;

/// A finite abstract simplicial complex on vertices `0..n`, with every face
/// listed as a sorted vertex tuple and grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Takes an explicit face list; it must be closed under subsets and
    /// contain every vertex `0..n`.
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) || f[f.len() - 1] >= n {
                return Err(Error::InvalidComplex(format!("bad face {f:?}")));
            }
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(f);
        }
        for fs in &mut by_dim {
            fs.sort();
            fs.dedup();
        }
        let k = SimplicialComplex { n, faces: by_dim };
        if k.faces.first().map_or(0, |v| v.len()) != n {
            return Err(Error::InvalidComplex("vertex list incomplete".into()));
        }
        for d in 1..k.faces.len() {
            for f in &k.faces[d] {
                for i in 0..f.len() {
                    if !k.contains(&without(f, i)) {
                        return Err(Error::InvalidComplex(format!("face {f:?} has a missing facet")));
                    }
                }
            }
        }
        Ok(k)
    }

    /// Closure of the given faces under subsets.
    pub fn from_maximal_faces(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > 20 {
                return Err(Error::OverCap { size: f.len(), cap: 20 });
            }
            for mask in 1u32..(1 << f.len()) {
                all.push((0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
            }
        }
        Self::from_faces(n, all)
    }

    /// All cliques of the graph on `0..n` given by `adjacent`.
    pub fn flag(n: usize, cap: usize, adjacent: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::hereditary(n, cap, |face, v| face.iter().all(|&u| adjacent(u, v)))
    }

    /// All vertex sets accepted by `extend`, which is asked whether a face
    /// stays a face when vertex `v` (larger than all of its vertices) is
    /// added. Correct when the accepted sets are closed under subsets.
    pub fn hereditary(n: usize, cap: usize, mut extend: impl FnMut(&[usize], usize) -> bool) -> Result<Self> {
        if n > cap {
            return Err(Error::OverCap { size: n, cap });
        }
        let mut faces: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
        let mut frontier = faces[0].clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                let last = *f.last().unwrap();
                for v in last + 1..n {
                    if extend(f, v) {
                        let mut g = f.clone();
                        g.push(v);
                        next.push(g);
                    }
                }
            }
            if !next.is_empty() {
                faces.push(next.clone());
            }
            frontier = next;
        }
        Ok(SimplicialComplex { n, faces })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn iter_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().flatten()
    }

    /// `sigma` must be sorted.
    pub fn contains(&self, sigma: &[usize]) -> bool {
        self.index_of(sigma).is_some()
    }

    pub fn index_of(&self, sigma: &[usize]) -> Option<usize> {
        let d = sigma.len().checked_sub(1)?;
        self.faces.get(d)?.binary_search_by(|f| f.as_slice().cmp(sigma)).ok()
    }

    /// `∂_d` with rows indexed by `d`-faces and columns by `(d-1)`-faces,
    /// i.e. the transpose of the usual boundary matrix. Sign of dropping the
    /// `i`-th vertex is `(-1)^i`.
    pub fn coboundary_rows(&self, d: usize) -> SparseIntMatrix {
        assert!(d >= 1);
        let rows = self
            .faces(d)
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|i| {
                        let j = self.index_of(&without(f, i)).expect("complex is closed under subsets");
                        (j, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect()
            })
            .collect();
        SparseIntMatrix::new(self.faces(d - 1).len(), rows)
    }

    /// Restriction to the vertex set `keep`, relabelled `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> SimplicialComplex {
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for fs in &self.faces {
            let kept: Vec<Vec<usize>> = fs
                .iter()
                .filter(|f| f.iter().all(|&v| new_index[v] != usize::MAX))
                .map(|f| {
                    let mut g: Vec<usize> = f.iter().map(|&v| new_index[v]).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            if kept.is_empty() {
                break;
            }
            faces.push(kept);
        }
        for fs in &mut faces {
            fs.sort();
        }
        SimplicialComplex { n: keep.len(), faces }
    }
}

pub(crate) fn without(f: &[usize], i: usize) -> Vec<usize> {
    let mut g = Vec::with_capacity(f.len() - 1);
    g.extend_from_slice(&f[..i]);
    g.extend_from_slice(&f[i + 1..]);
    g
}

/// `Cl(G)` for the underlying undirected graph of `g`.
pub fn clique_complex(g: &CyclicGraph) -> Result<SimplicialComplex> {
    clique_complex_with_cap(g, DEFAULT_CAP)
}

pub fn clique_complex_with_cap(g: &CyclicGraph, cap: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::flag(g.n(), cap, |u, v| g.adjacent(u, v))
}

/// Reduced integral homology.
pub fn homology(k: &SimplicialComplex) -> Result<BettiProfile> {
    let Some(top) = k.dim() else {
        return Err(Error::InvalidComplex("empty complex".into()));
    };
    // invariants[d] belongs to ∂_d; ∂_0 is the augmentation, of rank 1.
    let mut invariants: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for d in 1..=top {
        invariants.push(invariant_factors(&k.coboundary_rows(d)));
    }
    invariants.push(Vec::new());
    let mut p = BettiProfile::default();
    for d in 0..=top {
        let b = k.faces(d).len() - invariants[d].len() - invariants[d + 1].len();
        p.set_betti(d, b);
        let t: Vec<BigInt> = invariants[d + 1].iter().filter(|v| **v > BigInt::from(1)).cloned().collect();
        if !t.is_empty() {
            p.torsion.insert(d, t);
        }
    }
    Ok(p)
}
