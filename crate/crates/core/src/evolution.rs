//! Single trials of the random processes: points arriving uniformly on the
//! circle, and balls thrown into bins.
//!
//! Points are dyadic `u / 2^64`, so distances are exact `u64` differences and
//! comparisons against a rational threshold reduce to integer comparisons.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{draw_fresh_tick, find_regular_subset_through, CirclePoint, PointConfiguration};
use crate::classify::{betti_of, classify_core, generic_delta, intrinsic_dimension, singular_value, HomotopyType};
use crate::cyclic_graph::{sweep_reach, CyclicGraph, WindingFraction};
use crate::rational::{ceil_scaled_u64, floor_scaled_u64, int, to_u128_saturating, Rational};
use crate::{Error, Result};

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

const FULL_TURN: u128 = 1u128 << 64;

/// `d <= q` (or `d < q`) for tick distances `d`, as `d <= bound`.
fn tick_bound(q: &Rational, strict: bool) -> u128 {
    if strict {
        to_u128_saturating(&ceil_scaled_u64(q)).saturating_sub(1)
    } else {
        to_u128_saturating(&floor_scaled_u64(q))
    }
}

fn tick_gap(a: u64, b: u64, n: usize) -> u128 {
    if n == 1 {
        FULL_TURN
    } else {
        b.wrapping_sub(a) as u128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionConfig {
    pub r: Rational,
    pub strict: bool,
    pub max_n: usize,
    /// Scales `ε` for the coverage times `C(ε)`: all gaps below `ε`.
    pub coverage_eps: Vec<Rational>,
    /// Scales `ε` for the regular-subset times `R_{2l+1}(ε)`.
    pub regular_eps: Vec<Rational>,
    /// Keep the per-step series.
    pub record_steps: bool,
}

impl EvolutionConfig {
    /// No hit times, series recorded.
    pub fn new(r: Rational, strict: bool, max_n: usize) -> Result<Self> {
        generic_delta(&r)?;
        if max_n == 0 {
            return Err(Error::OutOfRange("max_n must be at least 1".into()));
        }
        Ok(EvolutionConfig { r, strict, max_n, coverage_eps: vec![], regular_eps: vec![], record_steps: true })
    }

    /// Adds the scales of the sandwich bounds: `C(δ)`, `C((2l+1)δ)`,
    /// `R(δ/2)` and, for `l >= 1`, `R(4lδ)`.
    pub fn with_sandwich_bounds(mut self) -> Self {
        let (l, delta) = generic_delta(&self.r).expect("checked in new");
        self.coverage_eps = vec![delta.clone(), &delta * int(2 * l as i64 + 1)];
        self.regular_eps = vec![&delta / int(2)];
        if l >= 1 {
            self.regular_eps.push(&delta * int(4 * l as i64));
        }
        self
    }

    pub fn without_steps(mut self) -> Self {
        self.record_steps = false;
        self
    }

    pub fn l(&self) -> usize {
        generic_delta(&self.r).expect("checked in new").0
    }

    pub fn delta(&self) -> Rational {
        generic_delta(&self.r).expect("checked in new").1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionStep {
    pub n: usize,
    pub wf: WindingFraction,
    pub intrinsic_dim: usize,
    /// Dimension and rank of the single nonzero reduced homology group
    /// (`0, 0` for a contractible complex).
    pub betti_dim: usize,
    pub betti_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitTime {
    pub eps: Rational,
    /// `None` if not reached within `max_n` points.
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionRecord {
    pub r: Rational,
    pub strict: bool,
    pub l: usize,
    pub delta: Rational,
    pub steps: Vec<EvolutionStep>,
    /// First `n` with `wf >= l/(2l+1)`.
    pub m_time: Option<usize>,
    /// First `n` with `wf > l/(2l+1)`.
    pub n_time: Option<usize>,
    pub coverage: Vec<HitTime>,
    pub regular: Vec<HitTime>,
    /// Number of points in the final configuration.
    pub points: usize,
}

impl EvolutionRecord {
    pub fn coverage_time(&self, eps: &Rational) -> Option<Option<usize>> {
        self.coverage.iter().find(|h| h.eps == *eps).map(|h| h.n)
    }

    pub fn regular_time(&self, eps: &Rational) -> Option<Option<usize>> {
        self.regular.iter().find(|h| h.eps == *eps).map(|h| h.n)
    }

    /// Violations of `R(4lδ) <= M <= R(δ/2)` and `C((2l+1)δ) <= N <= C(δ)`
    /// for whichever of these scales were tracked. Unreached times count
    /// as infinite; a bound is only violated when its smaller side is known
    /// to exceed the larger.
    pub fn sandwich_violations(&self) -> Vec<alloc::string::String> {
        let l = self.l as i64;
        let d = &self.delta;
        let mut out = Vec::new();
        let mut check = |name: &str, lo: Option<Option<usize>>, hi: Option<Option<usize>>| {
            if let (Some(lo), Some(Some(h))) = (lo, hi) {
                if lo.is_none_or(|v| v > h) {
                    out.push(format!("{name}: {lo:?} > {h}"));
                }
            }
        };
        check("R(4l delta) <= M", self.regular_time(&(d * int(4 * l))), Some(self.m_time));
        check("M <= R(delta/2)", Some(self.m_time), self.regular_time(&(d / int(2))));
        check("C((2l+1) delta) <= N", self.coverage_time(&(d * int(2 * l + 1))), Some(self.n_time));
        check("N <= C(delta)", Some(self.n_time), self.coverage_time(d));
        if let (Some(m), Some(n)) = (self.m_time, self.n_time) {
            if m > n {
                out.push(format!("M = {m} > N = {n}"));
            }
        }
        out
    }
}

fn betti_summary(t: &HomotopyType) -> (usize, usize) {
    let p = betti_of(t).expect("finite cores have finite wedges");
    p.betti.iter().next().map(|(&d, &b)| (d, b)).unwrap_or((0, 0))
}

/// Inserts uniform points one at a time, dismantling the whole VR digraph
/// after each insertion.
///
/// Without `record_steps` the run stops as soon as `M`, `N` and every
/// tracked hit time are known.
pub fn run_evolution<R: RngCore + ?Sized>(cfg: &EvolutionConfig, rng: &mut R) -> Result<EvolutionRecord> {
    let (l, delta) = generic_delta(&cfg.r)?;
    let m = 2 * l + 1;
    let edge = tick_bound(&cfg.r, cfg.strict);
    let cover_bounds: Vec<u128> = cfg.coverage_eps.iter().map(|e| tick_bound(e, true)).collect();
    let threshold = singular_value(l);
    let lk = l;

    let mut rec = EvolutionRecord {
        r: cfg.r.clone(),
        strict: cfg.strict,
        l,
        delta,
        steps: Vec::new(),
        m_time: None,
        n_time: None,
        coverage: cfg.coverage_eps.iter().map(|e| HitTime { eps: e.clone(), n: None }).collect(),
        regular: cfg.regular_eps.iter().map(|e| HitTime { eps: e.clone(), n: None }).collect(),
        points: 0,
    };
    let mut ticks: Vec<u64> = Vec::with_capacity(cfg.max_n);
    let mut prev: Option<WindingFraction> = None;

    for n in 1..=cfg.max_n {
        let u = draw_fresh_tick(rng, &ticks);
        let at = ticks.binary_search(&u).unwrap_err();
        ticks.insert(at, u);
        rec.points = n;

        let reach = sweep_reach(n, |i, s| tick_gap(ticks[i], ticks[(i + s) % n], n) <= edge);
        let g = CyclicGraph::from_reach(reach).map_err(|e| Error::Invariant(format!("VR digraph not cyclic: {e}")))?;
        let (cn, ck) = g.core_parameters()?;
        let wf = WindingFraction::from_core(cn, ck);

        if let Some(p) = prev {
            if wf.value_cmp(&p).is_lt() {
                return Err(Error::Invariant(format!("winding fraction dropped from {p} to {wf} at n = {n}")));
            }
        }
        let q = wf.as_rational();
        if q > cfg.r || (cfg.strict && q == cfg.r) {
            return Err(Error::Invariant(format!("winding fraction {wf} exceeds r at n = {n}")));
        }
        prev = Some(wf);

        if rec.m_time.is_none() && q >= threshold {
            rec.m_time = Some(n);
        }
        if rec.n_time.is_none() && q > threshold {
            rec.n_time = Some(n);
        }
        let t = classify_core(cn, ck)?;
        if rec.n_time.is_some() && t != HomotopyType::OddSphere(lk) {
            return Err(Error::Invariant(format!("past N the type is {t}, not S^{}", 2 * lk + 1)));
        }

        for (h, &bound) in rec.coverage.iter_mut().zip(&cover_bounds) {
            if h.n.is_none() {
                let widest = (0..n).map(|i| tick_gap(ticks[i], ticks[(i + 1) % n], n)).max().unwrap();
                if widest <= bound {
                    h.n = Some(n);
                }
            }
        }
        for h in rec.regular.iter_mut() {
            if h.n.is_none() && regular_through_tick(&ticks, u, &h.eps, m)? {
                h.n = Some(n);
            }
        }

        if cfg.record_steps {
            let (betti_dim, betti_rank) = betti_summary(&t);
            rec.steps.push(EvolutionStep { n, wf, intrinsic_dim: intrinsic_dimension(&wf), betti_dim, betti_rank });
        } else if rec.n_time.is_some()
            && rec.coverage.iter().all(|h| h.n.is_some())
            && rec.regular.iter().all(|h| h.n.is_some())
        {
            break;
        }
    }
    if let (Some(a), Some(b)) = (rec.m_time, rec.n_time) {
        if a > b {
            return Err(Error::Invariant(format!("M = {a} > N = {b}")));
        }
    }
    Ok(rec)
}

/// Tick threshold covering folded distances below `2 eps m` (in units of the
/// folded circle), or `None` when every point qualifies.
fn folded_window(eps: &Rational, m: usize) -> Option<u64> {
    let w = eps * int(2 * m as i64);
    if w * int(2) >= Rational::one() {
        return None;
    }
    let b = to_u128_saturating(&ceil_scaled_u64(&(eps * int(2 * m as i64))));
    Some(b.min(u64::MAX as u128) as u64)
}

fn folded_distance(a: u64, b: u64) -> u64 {
    let d = a.wrapping_sub(b);
    d.min(d.wrapping_neg())
}

/// Whether the dyadic configuration `ticks` has an `(eps, m)`-regular subset
/// containing the point `anchor`.
///
/// Only points whose `m`-fold images lie within `2 eps m` of the anchor's can
/// join it in a regular subset; the exact search runs on those.
fn regular_through_tick(ticks: &[u64], anchor: u64, eps: &Rational, m: usize) -> Result<bool> {
    let window = folded_window(eps, m);
    let fa = anchor.wrapping_mul(m as u64);
    let near: Vec<CirclePoint> = ticks
        .iter()
        .filter(|&&t| window.is_none_or(|w| folded_distance(t.wrapping_mul(m as u64), fa) <= w))
        .map(|&t| CirclePoint::from_ticks(t))
        .collect();
    anchored_search(near, CirclePoint::from_ticks(anchor), eps, m)
}

fn anchored_search(near: Vec<CirclePoint>, anchor: CirclePoint, eps: &Rational, m: usize) -> Result<bool> {
    if near.len() < m {
        return Ok(false);
    }
    let x = PointConfiguration::new(near)?;
    Ok(find_regular_subset_through(&x, eps, m, &anchor).is_some())
}

/// One coupled run of the balls-into-bins experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinsTrial {
    /// First throw after which a bin holds `m` balls.
    pub a: u64,
    /// First throw after which a bin (never emptied) holds all `m` colours.
    pub c: u64,
    /// Total throws until a repetition, with fresh bins each time, ends with
    /// `m` distinctly coloured balls in the full bin.
    pub b: u64,
    pub repetitions: u64,
    /// Whether the first repetition's outcome was good.
    pub first_good: bool,
}

/// Runs `A_m(K)`, `B_m(K)` and `C_m(K)` on one shared throw sequence.
pub fn bins_trial<R: RngCore + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<BinsTrial> {
    if m == 0 || k == 0 || m > 64 {
        return Err(Error::OutOfRange(format!("bins need 1 <= m <= 64 and K >= 1, got m = {m}, K = {k}")));
    }
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut all_colors = vec![0u64; k];
    let mut rep_count = vec![0u32; k];
    let mut rep_colors = vec![0u64; k];
    let mut touched: Vec<usize> = Vec::new();
    let (mut a, mut c) = (None, None);
    let mut repetitions = 1u64;
    let mut first_good = None;
    let mut thrown = 0u64;
    loop {
        let bin = rng.random_range(0..k);
        let color = rng.random_range(0..m);
        thrown += 1;
        all_colors[bin] |= 1 << color;
        if c.is_none() && all_colors[bin] == full {
            c = Some(thrown);
        }
        if rep_count[bin] == 0 {
            touched.push(bin);
        }
        rep_count[bin] += 1;
        rep_colors[bin] |= 1 << color;
        if rep_count[bin] as usize == m {
            a.get_or_insert(thrown);
            let good = rep_colors[bin] == full;
            first_good.get_or_insert(good);
            if good {
                let c = c.ok_or_else(|| Error::Invariant("good outcome before all colours met".into()))?;
                return Ok(BinsTrial { a: a.unwrap(), c, b: thrown, repetitions, first_good: first_good.unwrap() });
            }
            for &t in &touched {
                rep_count[t] = 0;
                rep_colors[t] = 0;
            }
            touched.clear();
            repetitions += 1;
        }
    }
}

/// One run coupling the circle process with `C_m(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CouplingTrial {
    /// `R_m(1/(Km))`.
    pub r: u64,
    /// `C_m(K)`.
    pub c: u64,
}

/// Draws `x = (y + i)/m` with `y` uniform dyadic in `[0, 1)` scaled by
/// `1/m` and colour `i`; the bin of `x` is `floor(K y)`. Runs until some bin
/// holds all colours, tracking the first `(1/(Km), m)`-regular subset.
pub fn coupling_trial<R: RngCore + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<CouplingTrial> {
    if m == 0 || k == 0 || m > 64 {
        return Err(Error::OutOfRange(format!("coupling needs 1 <= m <= 64 and K >= 1, got m = {m}, K = {k}")));
    }
    let eps = Rational::new(BigInt::one(), BigInt::from(k * m));
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let window = folded_window(&eps, m);
    let mut colors = vec![0u64; k];
    let mut drawn: Vec<(u64, usize)> = Vec::new();
    let mut r = None;
    let mut n = 0u64;
    loop {
        let (u, i) = loop {
            let u = rng.next_u64();
            let i = rng.random_range(0..m);
            if !drawn.contains(&(u, i)) {
                break (u, i);
            }
        };
        drawn.push((u, i));
        n += 1;
        let point = |u: u64, i: usize| {
            CirclePoint::new(Rational::new(BigInt::from(u) + (BigInt::from(i) << 64usize), BigInt::from(m) << 64usize))
                .expect("point in [0, 1)")
        };
        if r.is_none() {
            let near: Vec<CirclePoint> = drawn
                .iter()
                .filter(|&&(v, _)| window.is_none_or(|w| folded_distance(v, u) <= w))
                .map(|&(v, j)| point(v, j))
                .collect();
            if anchored_search(near, point(u, i), &eps, m)? {
                r = Some(n);
            }
        }
        let bin = ((u as u128 * k as u128) >> 64) as usize;
        colors[bin] |= 1 << i;
        if colors[bin] == full {
            let r = r.ok_or_else(|| {
                Error::Invariant(format!("bin {bin} holds all colours at n = {n} but no regular subset was found"))
            })?;
            return Ok(CouplingTrial { r, c: n });
        }
    }
}

/// Exact-point reference for the dyadic fast path, for tests.
pub fn ticks_to_configuration(ticks: &[u64]) -> PointConfiguration {
    PointConfiguration::new(ticks.iter().map(|&t| CirclePoint::from_ticks(t)).collect()).expect("distinct ticks")
}
