//! The cross-polytope cycle `ι_{2l}`, its images `α_{a,b}` in
//! `Cl(C_{d(2l+1)}^{dl})` and the dual cocycles `β_a`.

use alloc::format;
use alloc::vec::Vec;

use super::chain::{IntegerChain, IntegerCochain};
use super::complex::DEFAULT_CAP;
use crate::cyclic_graph::CyclicGraph;
use crate::{Error, Result};

/// Fundamental cycle of the boundary of the `(2l+1)`-dimensional
/// cross-polytope on `0..2(2l+1)`:
/// `(-1)^{l(l+3)/2} ([0] - [2l+1]) ∧ ([1] - [2l+2]) ∧ ... ∧ ([2l] - [4l+1])`.
pub fn iota_cycle(l: usize) -> IntegerChain {
    let m = 2 * l + 1;
    let global: i64 = if (l * (l + 3) / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut c = IntegerChain::zero(2 * l);
    for choice in 0u64..(1 << m) {
        let tuple: Vec<usize> = (0..m).map(|i| i + if choice >> i & 1 == 1 { m } else { 0 }).collect();
        let sign = if choice.count_ones() % 2 == 0 { 1 } else { -1 };
        c.add_oriented(&tuple, global * sign);
    }
    c
}

/// `α_{a,b}`: even `i ↦ a + d i/2`, odd `i ↦ b + d (i-1)/2`, mod `d(2l+1)`.
///
/// Requires `b - a` to be in `1..d` modulo `n`.
pub fn alpha_map(l: usize, d: usize, a: usize, b: usize) -> Result<Vec<usize>> {
    let n = d * (2 * l + 1);
    if d == 0 || a >= n || b >= n {
        return Err(Error::OutOfRange(format!("alpha needs d >= 1 and a, b < {n}")));
    }
    let gap = (b + n - a) % n;
    if gap == 0 || gap >= d {
        return Err(Error::OutOfRange(format!("alpha_{{{a},{b}}} needs b - a in 1..{d} mod {n}")));
    }
    Ok((0..2 * (2 * l + 1))
        .map(|i| if i % 2 == 0 { (a + d * (i / 2)) % n } else { (b + d * ((i - 1) / 2)) % n })
        .collect())
}

pub fn alpha_class(l: usize, d: usize, a: usize, b: usize) -> Result<IntegerChain> {
    Ok(iota_cycle(l).pushforward(&alpha_map(l, d, a, b)?))
}

/// Dual of the oriented face `[a, a+d, ..., a+2l d]`, after checking that
/// the face is maximal in `Cl(C_{d(2l+1)}^{dl})`.
pub fn beta_cocycle(l: usize, d: usize, a: usize) -> Result<IntegerCochain> {
    let n = d * (2 * l + 1);
    if d == 0 || a >= n {
        return Err(Error::OutOfRange(format!("beta needs d >= 1 and a < {n}")));
    }
    let face: Vec<usize> = (0..=2 * l).map(|i| (a + d * i) % n).collect();
    let g = CyclicGraph::cnk(n, d * l)?;
    let clique = face.iter().all(|&u| face.iter().all(|&v| u == v || g.adjacent(u, v)));
    let extendable = (0..n).any(|v| !face.contains(&v) && face.iter().all(|&u| g.adjacent(u, v)));
    if !clique || extendable {
        return Err(Error::Invariant(format!("face {face:?} is not maximal")));
    }
    Ok(IntegerCochain::dual(&face))
}

/// One cross-polytopal class of `Cl(C_{d(2l+1)}^{dl})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossPolytopalClass {
    /// Coordinates in the basis `α_{1,d}, ..., α_{d-1,d}`.
    pub coords: Vec<i64>,
    /// Every `(a, b)` whose `α_{a,b}` represents the class.
    pub pairs: Vec<(usize, usize)>,
    pub representative: IntegerChain,
}

/// All classes `α_{a,b}` with their coordinates `β_i(α_{a,b})`,
/// deduplicated.
pub fn enumerate_cross_polytopal(l: usize, d: usize) -> Result<Vec<CrossPolytopalClass>> {
    let n = d * (2 * l + 1);
    if n > DEFAULT_CAP {
        return Err(Error::OverCap { size: n, cap: DEFAULT_CAP });
    }
    let betas: Vec<IntegerCochain> = (1..d).map(|i| beta_cocycle(l, d, i)).collect::<Result<_>>()?;
    let mut out: Vec<CrossPolytopalClass> = Vec::new();
    for a in 0..n {
        for step in 1..d {
            let b = (a + step) % n;
            let chain = alpha_class(l, d, a, b)?;
            if !chain.is_cycle() {
                return Err(Error::Invariant(format!("alpha_{{{a},{b}}} is not a cycle")));
            }
            let coords: Vec<i64> = betas.iter().map(|beta| beta.evaluate(&chain)).collect();
            match out.iter_mut().find(|c| c.coords == coords) {
                Some(c) => c.pairs.push((a, b)),
                None => out.push(CrossPolytopalClass { coords, pairs: alloc::vec![(a, b)], representative: chain }),
            }
        }
    }
    Ok(out)
}
