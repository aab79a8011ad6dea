//! Integral simplicial homology of clique complexes, the cross-polytopal
//! classes of `Cl(C_{d(2l+1)}^{dl})`, and lattice membership.

mod chain;
mod complex;
mod cross_polytope;
mod induced;
pub mod intmat;
mod lattice;

use num_bigint::BigInt;

pub use chain::{sort_with_sign, IntegerChain, IntegerCochain};
pub use complex::{clique_complex, clique_complex_with_cap, homology, SimplicialComplex, DEFAULT_CAP};
pub use cross_polytope::{
    alpha_class, alpha_map, beta_cocycle, enumerate_cross_polytopal, iota_cycle, CrossPolytopalClass,
};
pub use induced::{has_induced_c8_3, has_induced_copy};
pub use lattice::{lattice_membership, LatticeBasisProblem, LatticeStatus, VTilde};

use crate::{Error, Result};
use intmat::{invariant_factors, SparseIntMatrix};

/// Whether `c` is a boundary in `k` up to a rational multiple, i.e. lies in
/// the rational span of the `(dim+1)`-face boundaries. For a cycle this is
/// exact whenever `H_dim(k)` is torsion-free.
pub fn is_rational_boundary(k: &SimplicialComplex, c: &IntegerChain) -> Result<bool> {
    if !c.is_supported_in(k) {
        return Err(Error::InvalidComplex("chain not supported in complex".into()));
    }
    let faces = k.faces(c.dim);
    let row: alloc::vec::Vec<(usize, BigInt)> =
        c.terms.iter().map(|(t, v)| (faces.binary_search(t).unwrap(), BigInt::from(*v))).collect();
    if k.faces(c.dim + 1).is_empty() {
        return Ok(row.is_empty());
    }
    let base = k.coboundary_rows(c.dim + 1);
    let r0 = invariant_factors(&base).len();
    let mut rows = base.rows.clone();
    rows.push(row);
    let r1 = invariant_factors(&SparseIntMatrix::new(base.ncols, rows)).len();
    Ok(r0 == r1)
}
