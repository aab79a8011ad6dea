//! Homotopy types of clique complexes of cyclic graphs and closed-form
//! answers for the whole circle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclic_graph::{check_radius, CyclicGraph, WindingFraction};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Multiplicity of a wedge of spheres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WedgeCount {
    Finite(usize),
    /// The cardinality of the continuum.
    Continuum,
}

/// A homotopy type from the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomotopyType {
    Point,
    /// `S^{2l+1}`.
    OddSphere(usize),
    /// A wedge of `count` copies of `S^{2l}`; `count` is never `Finite(0)`.
    /// For `l = 0` this is `count + 1` points.
    EvenWedge(usize, WedgeCount),
}

impl HomotopyType {
    /// Builds a wedge, normalizing the empty wedge to a point.
    pub fn even_wedge(l: usize, count: WedgeCount) -> Self {
        match count {
            WedgeCount::Finite(0) => HomotopyType::Point,
            c => HomotopyType::EvenWedge(l, c),
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Point => write!(f, "point"),
            HomotopyType::OddSphere(l) => write!(f, "S^{}", 2 * l + 1),
            HomotopyType::EvenWedge(l, WedgeCount::Finite(c)) => write!(f, "wedge({c}) of S^{}", 2 * l),
            HomotopyType::EvenWedge(l, WedgeCount::Continuum) => write!(f, "wedge(continuum) of S^{}", 2 * l),
        }
    }
}

/// Reduced integral homology: Betti numbers and torsion orders by dimension.
/// Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiProfile {
    pub betti: BTreeMap<usize, usize>,
    pub torsion: BTreeMap<usize, Vec<BigInt>>,
}

impl BettiProfile {
    pub fn betti(&self, dim: usize) -> usize {
        self.betti.get(&dim).copied().unwrap_or(0)
    }

    pub fn set_betti(&mut self, dim: usize, b: usize) {
        if b == 0 {
            self.betti.remove(&dim);
        } else {
            self.betti.insert(dim, b);
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(|t| t.is_empty())
    }

    /// The reduced homology of a point: nothing anywhere.
    pub fn is_trivial(&self) -> bool {
        self.betti.is_empty() && self.is_torsion_free()
    }
}

/// Homotopy type of `Cl(C_n^k)`.
///
/// With `l = floor(k / (n - 2k))`, `k/n` lies in `[l/(2l+1), (l+1)/(2l+3))`
/// and is singular exactly when `k (2l+1) = l n`.
pub fn classify_core(n: usize, k: usize) -> Result<HomotopyType> {
    if n == 0 || 2 * k >= n {
        return Err(Error::OutOfRange(format!("need 0 <= k < n/2, got n = {n}, k = {k}")));
    }
    let l = k / (n - 2 * k);
    if k * (2 * l + 1) == l * n {
        Ok(HomotopyType::even_wedge(l, WedgeCount::Finite(n - 2 * k - 1)))
    } else {
        Ok(HomotopyType::OddSphere(l))
    }
}

pub fn classify_graph(g: &CyclicGraph) -> Result<HomotopyType> {
    let (n, k) = g.core_parameters()?;
    classify_core(n, k)
}

/// The four complexes of the whole circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    VrStrict,
    VrNonstrict,
    CechStrict,
    CechNonstrict,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 4] =
        [ComplexKind::VrStrict, ComplexKind::VrNonstrict, ComplexKind::CechStrict, ComplexKind::CechNonstrict];

    pub fn is_strict(self) -> bool {
        matches!(self, ComplexKind::VrStrict | ComplexKind::CechStrict)
    }

    pub fn is_cech(self) -> bool {
        matches!(self, ComplexKind::CechStrict | ComplexKind::CechNonstrict)
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::VrStrict => "vr<",
            ComplexKind::VrNonstrict => "vr<=",
            ComplexKind::CechStrict => "cech<",
            ComplexKind::CechNonstrict => "cech<=",
        })
    }
}

/// `2r / (1 + 2r)`: the Vietoris–Rips scale matching Čech scale `r`.
pub fn cech_to_vr_scale(r: &Rational) -> Rational {
    let two_r = r * int(2);
    &two_r / (Rational::one() + &two_r)
}

/// Homotopy type of the complex of kind `kind` on all of `S^1` at scale `r`.
pub fn circle_lookup(r: &Rational, kind: ComplexKind) -> Result<HomotopyType> {
    check_radius(r)?;
    let rho = if kind.is_cech() { cech_to_vr_scale(r) } else { r.clone() };
    let (l, singular) = vr_index(&rho);
    Ok(match (kind.is_strict(), singular) {
        (true, true) => HomotopyType::OddSphere(l - 1),
        (false, true) => HomotopyType::even_wedge(l, WedgeCount::Continuum),
        (_, false) => HomotopyType::OddSphere(l),
    })
}

/// The `l` with `l/(2l+1) <= rho < (l+1)/(2l+3)` and whether `rho` equals
/// the left endpoint.
pub fn vr_index(rho: &Rational) -> (usize, bool) {
    // l/(2l+1) <= rho  <=>  l <= rho / (1 - 2 rho).
    let t = rho / (Rational::one() - rho * int(2));
    let l = t.floor().to_integer();
    let singular = Rational::from_integer(l.clone()) == t;
    (usize::try_from(&l).unwrap_or(0), singular)
}

/// The `l` of a generic scale `r`, failing at singular values `l/(2l+1)`.
pub fn generic_index(r: &Rational) -> Result<usize> {
    check_radius(r)?;
    let (l, singular) = vr_index(r);
    if singular {
        return Err(Error::SingularRadius(crate::rational::format_rational(r)));
    }
    Ok(l)
}

/// `r - l/(2l+1)` for the `l` of a generic `r`.
pub fn generic_delta(r: &Rational) -> Result<(usize, Rational)> {
    let l = generic_index(r)?;
    Ok((l, r - singular_value(l)))
}

/// `l/(2l+1)`.
pub fn singular_value(l: usize) -> Rational {
    Rational::new(BigInt::from(l), BigInt::from(2 * l + 1))
}

/// Critical Čech scale `l / (2(l+1))`.
pub fn cech_singular_value(l: usize) -> Rational {
    Rational::new(BigInt::from(l), BigInt::from(2 * (l + 1)))
}

/// A bound of a scale interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}/{}, {}/{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo.numer(),
            self.lo.denom(),
            self.hi.numer(),
            self.hi.denom(),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// The maximal scale interval containing `r` on which the complex of kind
/// `kind` has constant homotopy type. Within it, homology is that of
/// [`circle_lookup`] and the inclusions are isomorphisms; a singular
/// non-strict value is its own degenerate interval.
pub fn persistence_interval(r: &Rational, kind: ComplexKind) -> Result<Interval> {
    check_radius(r)?;
    let crit = |l: usize| if kind.is_cech() { cech_singular_value(l) } else { singular_value(l) };
    let rho = if kind.is_cech() { cech_to_vr_scale(r) } else { r.clone() };
    let (l, singular) = vr_index(&rho);
    Ok(match (kind.is_strict(), singular) {
        (false, true) => Interval { lo: crit(l), hi: crit(l), lo_closed: true, hi_closed: true },
        (false, false) => Interval { lo: crit(l), hi: crit(l + 1), lo_closed: false, hi_closed: false },
        (true, true) => Interval { lo: crit(l - 1), hi: crit(l), lo_closed: false, hi_closed: true },
        (true, false) => Interval { lo: crit(l), hi: crit(l + 1), lo_closed: false, hi_closed: true },
    })
}

/// Reduced Betti numbers of a finite homotopy type.
pub fn betti_of(t: &HomotopyType) -> Result<BettiProfile> {
    let mut p = BettiProfile::default();
    match *t {
        HomotopyType::Point => {}
        HomotopyType::OddSphere(l) => p.set_betti(2 * l + 1, 1),
        HomotopyType::EvenWedge(_, WedgeCount::Continuum) => return Err(Error::Continuum),
        HomotopyType::EvenWedge(l, WedgeCount::Finite(c)) => p.set_betti(2 * l, c),
    }
    Ok(p)
}

/// `2l` at `w = l/(2l+1)`, `2l+1` strictly between singular values.
pub fn intrinsic_dimension(w: &WindingFraction) -> usize {
    let (k, n) = (w.k(), w.n());
    if k == 0 {
        return 0;
    }
    let l = k / (n - 2 * k);
    if k * (2 * l + 1) == l * n {
        2 * l
    } else {
        2 * l + 1
    }
}
