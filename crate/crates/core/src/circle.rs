//! Points of the circle `S^1 = R/Z`, clockwise distances, coverings and
//! regular subsets.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

use crate::rational::{format_rational, int, Rational};
use crate::{Error, Result};

/// A point of the circle of circumference 1, stored as an exact rational in
/// `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value >= Rational::one() {
            return Err(Error::PointOutOfRange(format_rational(&value)));
        }
        Ok(CirclePoint(value))
    }

    /// Reduces any rational modulo 1.
    pub fn wrap(value: Rational) -> Self {
        let f = value.floor();
        CirclePoint(value - f)
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    /// The dyadic point `u / 2^64`.
    pub fn from_ticks(u: u64) -> Self {
        CirclePoint(Rational::new(BigInt::from(u), BigInt::one() << 64usize))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// `(b - a) mod 1`, the length of the clockwise arc from `a` to `b`.
pub fn clockwise_distance(a: &CirclePoint, b: &CirclePoint) -> Rational {
    let d = &b.0 - &a.0;
    if d.is_negative() {
        d + Rational::one()
    } else {
        d
    }
}

/// Arc-length metric: the shorter of the two arcs.
pub fn symmetric_distance(a: &CirclePoint, b: &CirclePoint) -> Rational {
    let d = clockwise_distance(a, b);
    let e = Rational::one() - &d;
    if d.is_zero() {
        d
    } else if e < d {
        e
    } else {
        d
    }
}

/// A finite subset of the circle in clockwise order starting nearest to 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PointConfiguration {
    points: Vec<CirclePoint>,
}

impl PointConfiguration {
    /// Sorts the points; rejects duplicates.
    pub fn new(mut points: Vec<CirclePoint>) -> Result<Self> {
        points.sort();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0].to_string_exact()));
            }
        }
        Ok(PointConfiguration { points })
    }

    pub fn from_rationals(values: Vec<Rational>) -> Result<Self> {
        let pts = values.into_iter().map(CirclePoint::new).collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    /// The vertex set `{0, 1/n, ..., (n-1)/n}` of the regular n-gon.
    pub fn regular(n: usize) -> Self {
        let points = (0..n).map(|i| CirclePoint(Rational::new(BigInt::from(i), BigInt::from(n)))).collect();
        PointConfiguration { points }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &CirclePoint {
        &self.points[i]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, CirclePoint> {
        self.points.iter()
    }

    pub fn position(&self, p: &CirclePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Inserts `p`, returning its index, or an error if already present.
    pub fn insert(&mut self, p: CirclePoint) -> Result<usize> {
        match self.points.binary_search(&p) {
            Ok(_) => Err(Error::DuplicatePoint(p.to_string_exact())),
            Err(i) => {
                self.points.insert(i, p);
                Ok(i)
            }
        }
    }

    /// Clockwise gaps `d(x_i, x_{i+1})`, wrap gap last. A single point has
    /// one gap of length 1.
    pub fn gaps(&self) -> Vec<Rational> {
        let n = self.points.len();
        (0..n)
            .map(
                |i| {
                    if n == 1 {
                        Rational::one()
                    } else {
                        clockwise_distance(&self.points[i], &self.points[(i + 1) % n])
                    }
                },
            )
            .collect()
    }

    pub fn max_gap(&self) -> Result<Rational> {
        self.gaps().into_iter().max().ok_or(Error::EmptyConfiguration)
    }

    /// Every point of the circle is at distance `< eps` from the set, i.e.
    /// all consecutive gaps are `< 2 eps`.
    pub fn is_epsilon_covering(&self, eps: &Rational) -> Result<bool> {
        let twice = eps * int(2);
        Ok(self.max_gap()? < twice)
    }
}

impl CirclePoint {
    fn to_string_exact(&self) -> alloc::string::String {
        format_rational(&self.0)
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a PointConfiguration {
    type Item = &'a CirclePoint;
    type IntoIter = core::slice::Iter<'a, CirclePoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Witness for an `(eps, m)`-regular subset: `points[i]` lies at symmetric
/// distance `< eps` from `phase + i/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularWitness {
    pub phase: Rational,
    pub points: Vec<CirclePoint>,
}

impl RegularWitness {
    /// Re-checks the witness from scratch.
    pub fn is_valid(&self, eps: &Rational) -> bool {
        let m = self.points.len();
        if m == 0 {
            return false;
        }
        let mut sorted = self.points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.points.iter().enumerate().all(|(i, p)| {
            let v = CirclePoint::wrap(&self.phase + Rational::new(BigInt::from(i), BigInt::from(m)));
            symmetric_distance(p, &v) < *eps
        })
    }
}

/// Searches for `m` points of `X` that sit within distance `eps` of the
/// vertices of one rotated regular `m`-gon.
///
/// The search is exact: the feasible phases form an open set whose boundary
/// lies among finitely many critical phases, and one phase inside every
/// elementary arc is tested. `None` is therefore a proof of absence.
pub fn find_regular_subset(x: &PointConfiguration, eps: &Rational, m: usize) -> Option<RegularWitness> {
    regular_search(x.points(), eps, m, None)
}

/// Like [`find_regular_subset`], but only accepts witnesses containing
/// `anchor`, which must be a point of `x`.
pub fn find_regular_subset_through(
    x: &PointConfiguration,
    eps: &Rational,
    m: usize,
    anchor: &CirclePoint,
) -> Option<RegularWitness> {
    let a = x.position(anchor)?;
    regular_search(x.points(), eps, m, Some(a))
}

fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

fn regular_search(pts: &[CirclePoint], eps: &Rational, m: usize, anchor: Option<usize>) -> Option<RegularWitness> {
    if m == 0 || pts.len() < m || !eps.is_positive() {
        return None;
    }
    let mq = int(m as i64);
    // Work in scaled coordinates where the polygon has unit spacing: a point
    // sits at s = m x (mod m), vertex i at tau + i, and the tolerance is m eps.
    let scaled: Vec<Rational> = pts.iter().map(|p| p.value() * &mq).collect();
    let e = eps * &mq;

    let mut crit: Vec<Rational> = vec![Rational::zero()];
    for s in &scaled {
        crit.push(frac(s));
        crit.push(frac(&(s - &e)));
        crit.push(frac(&(s + &e)));
    }
    crit.sort();
    crit.dedup();

    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut candidates = Vec::with_capacity(2 * crit.len());
    for (j, c) in crit.iter().enumerate() {
        candidates.push(c.clone());
        let next = if j + 1 < crit.len() { crit[j + 1].clone() } else { &crit[0] + Rational::one() };
        candidates.push(frac(&((c + next) * &half)));
    }

    let ctx = Phases { scaled: &scaled, e: &e, m, anchor };
    for tau in candidates {
        if let Some(assign) = ctx.assignment(&tau) {
            let points = assign.into_iter().map(|j| pts[j].clone()).collect();
            return Some(RegularWitness { phase: tau / &mq, points });
        }
    }
    None
}

struct Phases<'a> {
    scaled: &'a [Rational],
    e: &'a Rational,
    m: usize,
    anchor: Option<usize>,
}

impl Phases<'_> {
    /// Vertices within scaled distance `< e` of point `j` at phase `tau`.
    fn near(&self, j: usize, tau: &Rational) -> Vec<usize> {
        let m = self.m;
        let mq = int(m as i64);
        // w in [0, m): position of the point relative to vertex 0.
        let mut w = &self.scaled[j] - tau;
        w = &w - (&w / &mq).floor() * &mq;
        let mut out = Vec::new();
        if self.e * int(2) >= mq {
            // Tolerance wider than half the circle in scaled units: test all.
            for i in 0..m {
                if self.dist(&w, i) < *self.e {
                    out.push(i);
                }
            }
            return out;
        }
        let lo = (&w - self.e).floor().to_integer();
        let hi = (&w + self.e).ceil().to_integer();
        let mut i = lo;
        while i <= hi {
            let v = i.clone() % BigInt::from(m);
            let v = if v.is_negative() { v + BigInt::from(m) } else { v };
            let v = v.to_usize().unwrap();
            if self.dist(&w, v) < *self.e && !out.contains(&v) {
                out.push(v);
            }
            i += 1;
        }
        out
    }

    fn dist(&self, w: &Rational, i: usize) -> Rational {
        let mq = int(self.m as i64);
        let mut d = (w - int(i as i64)).abs();
        d = &d - (&d / &mq).floor() * &mq;
        let other = &mq - &d;
        if other < d {
            other
        } else {
            d
        }
    }

    /// A vertex-to-point assignment at phase `tau`, indexed by vertex.
    fn assignment(&self, tau: &Rational) -> Option<Vec<usize>> {
        let m = self.m;
        let nears: Vec<Vec<usize>> = (0..self.scaled.len()).map(|j| self.near(j, tau)).collect();
        let anchor_vertices = match self.anchor {
            Some(a) if nears[a].is_empty() => return None,
            Some(a) => nears[a].clone(),
            None => Vec::new(),
        };
        // Candidate points per vertex.
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (j, ns) in nears.iter().enumerate() {
            for &i in ns {
                by_vertex[i].push(j);
            }
        }
        if by_vertex.iter().any(|c| c.is_empty()) {
            return None;
        }
        match self.anchor {
            None => match_all(&by_vertex, self.scaled.len(), None),
            Some(a) => anchor_vertices.into_iter().find_map(|v| match_all(&by_vertex, self.scaled.len(), Some((v, a)))),
        }
    }
}

/// Kuhn's augmenting-path matching saturating every vertex of the polygon.
fn match_all(by_vertex: &[Vec<usize>], npoints: usize, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let m = by_vertex.len();
    let mut owner: Vec<Option<usize>> = vec![None; npoints];
    let mut matched: Vec<Option<usize>> = vec![None; m];
    if let Some((v, p)) = fixed {
        owner[p] = Some(v);
        matched[v] = Some(p);
    }

    fn augment(
        v: usize,
        by_vertex: &[Vec<usize>],
        owner: &mut [Option<usize>],
        matched: &mut [Option<usize>],
        seen: &mut [bool],
        fixed: Option<(usize, usize)>,
    ) -> bool {
        for &p in &by_vertex[v] {
            if seen[p] || fixed.is_some_and(|(_, fp)| fp == p) {
                continue;
            }
            seen[p] = true;
            let free = match owner[p] {
                None => true,
                Some(u) => augment(u, by_vertex, owner, matched, seen, fixed),
            };
            if free {
                owner[p] = Some(v);
                matched[v] = Some(p);
                return true;
            }
        }
        false
    }

    for v in 0..m {
        if matched[v].is_some() {
            continue;
        }
        let mut seen = vec![false; npoints];
        if !augment(v, by_vertex, &mut owner, &mut matched, &mut seen, fixed) {
            return None;
        }
    }
    Some(matched.into_iter().map(|p| p.unwrap()).collect())
}

/// One uniform 64-bit tick not already in `taken` (which must be sorted).
pub fn draw_fresh_tick<R: RngCore + ?Sized>(rng: &mut R, taken: &[u64]) -> u64 {
    loop {
        let u = rng.next_u64();
        if taken.binary_search(&u).is_err() {
            return u;
        }
    }
}

/// `count` distinct uniform dyadic points `u / 2^64`.
pub fn sample_uniform<R: RngCore + ?Sized>(rng: &mut R, count: usize) -> PointConfiguration {
    let mut ticks: Vec<u64> = Vec::with_capacity(count);
    for _ in 0..count {
        let u = draw_fresh_tick(rng, &ticks);
        let i = ticks.binary_search(&u).unwrap_err();
        ticks.insert(i, u);
    }
    PointConfiguration { points: ticks.into_iter().map(CirclePoint::from_ticks).collect() }
}
