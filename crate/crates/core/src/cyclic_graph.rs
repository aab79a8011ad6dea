//! Cyclic graphs, Vietoris–Rips digraphs, domination, dismantling and the
//! winding fraction.
//!
//! A cyclic graph on `v_0, ..., v_{n-1}` is stored by its reach sequence:
//! `N⁺[v_i] = {v_i, v_{i+1}, ..., v_{i+reach[i]}}` with indices mod `n`.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::circle::{clockwise_distance, CirclePoint, PointConfiguration};
use crate::rational::{format_rational, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicGraph {
    reach: Vec<usize>,
    labels: Option<Vec<CirclePoint>>,
}

impl CyclicGraph {
    /// Validates the reach sequence: bounded reach, the shift condition
    /// `reach[i+1] >= reach[i] - 1`, and no pair of opposite edges.
    pub fn from_reach(reach: Vec<usize>) -> Result<Self> {
        validate_reach(&reach)?;
        Ok(CyclicGraph { reach, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<CirclePoint>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidGraph(format!("{} labels for {} vertices", labels.len(), self.n())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `C_n^k`: vertices `0..n`, edges `i -> i+1, ..., i+k`.
    pub fn cnk(n: usize, k: usize) -> Result<Self> {
        if n == 0 || 2 * k >= n {
            return Err(Error::OutOfRange(format!("C_n^k needs 0 <= k < n/2, got n = {n}, k = {k}")));
        }
        Ok(CyclicGraph { reach: vec![k; n], labels: None })
    }

    /// The directed Vietoris–Rips graph: `x -> y` iff `0 < d(x, y) <= r`
    /// (or `< r` when `strict`).
    pub fn vr_digraph(x: &PointConfiguration, r: &Rational, strict: bool) -> Result<Self> {
        check_radius(r)?;
        if x.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        let pts = x.points();
        let n = pts.len();
        let reach = sweep_reach(n, |i, s| {
            let d = clockwise_distance(&pts[i], &pts[(i + s) % n]);
            if strict {
                d < *r
            } else {
                d <= *r
            }
        });
        let g =
            CyclicGraph::from_reach(reach).map_err(|e| Error::Invariant(format!("VR digraph is not cyclic: {e}")))?;
        g.with_labels(pts.to_vec())
    }

    pub fn n(&self) -> usize {
        self.reach.len()
    }

    pub fn reach(&self) -> &[usize] {
        &self.reach
    }

    pub fn labels(&self) -> Option<&[CirclePoint]> {
        self.labels.as_deref()
    }

    pub fn edge_count(&self) -> usize {
        self.reach.iter().sum()
    }

    /// `i -> j` for distinct `i`, `j`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        let s = (j + n - i) % n;
        s != 0 && s <= self.reach[i]
    }

    /// Adjacent in the underlying undirected graph.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.has_edge(i, j) || self.has_edge(j, i)
    }

    /// Open out-neighbourhood in clockwise order.
    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        (1..=self.reach[i]).map(move |s| (i + s) % n)
    }

    /// Open in-neighbourhood, sorted by index.
    pub fn in_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.has_edge(j, i)).collect()
    }

    pub fn has_directed_cycle(&self) -> bool {
        self.n() >= 2 && self.reach.iter().all(|&s| s >= 1)
    }

    /// `v_i` is dominated by `v_{i+1}`: `N⁻(v_{i+1}) = N⁻[v_i]`.
    ///
    /// Computed directly from the in-neighbourhoods.
    pub fn is_dominated(&self, i: usize) -> bool {
        let n = self.n();
        let next = (i + 1) % n;
        let mut closed = self.in_neighbors(i);
        closed.push(i);
        closed.sort_unstable();
        closed == self.in_neighbors(next)
    }

    /// Subgraph induced on `keep` (sorted, distinct original indices).
    pub fn induced(&self, keep: &[usize]) -> CyclicGraph {
        let n = self.n();
        let mut kept = vec![false; n];
        for &v in keep {
            kept[v] = true;
        }
        // prefix[j] = number of kept vertices among 0..j, over two turns.
        let mut prefix = vec![0usize; 2 * n + 1];
        for j in 0..2 * n {
            prefix[j + 1] = prefix[j] + usize::from(kept[j % n]);
        }
        let reach = keep.iter().map(|&u| prefix[u + self.reach[u] + 1] - prefix[u + 1]).collect();
        let labels = self.labels.as_ref().map(|l| keep.iter().map(|&u| l[u].clone()).collect());
        CyclicGraph { reach, labels }
    }

    /// Dismantles by repeatedly removing the lowest-index dominated vertex.
    pub fn dismantle(&self) -> Result<Dismantling> {
        let mut heap = BinaryHeap::new();
        self.dismantle_with(|dominated| {
            for v in dominated.drain(..) {
                heap.push(Reverse(v));
            }
            heap.pop().map(|Reverse(v)| v)
        })
    }

    /// Dismantles in the order chosen by `pick`.
    ///
    /// `pick` receives the vertices that became dominated since its last call
    /// (it must remember earlier ones itself: domination is never lost by a
    /// removal) and returns the next vertex to remove, or `None` to stop
    /// once nothing is dominated.
    pub fn dismantle_with(&self, mut pick: impl FnMut(&mut Vec<usize>) -> Option<usize>) -> Result<Dismantling> {
        let mut p = Peeler::new(self);
        let mut fresh: Vec<usize> = (0..self.n()).filter(|&v| p.count[v] == 0).collect();
        let mut trace = Vec::new();
        let mut moves = Vec::new();
        while let Some(v) = pick(&mut fresh) {
            if !p.alive[v] || p.count[v] != 0 {
                return Err(Error::Invariant(format!("vertex {v} picked for removal but not dominated")));
            }
            let succ = p.next[v];
            if let Some(w) = p.remove(v) {
                fresh.push(w);
            }
            trace.push(v);
            moves.push((v, succ));
        }
        if (0..self.n()).any(|v| p.alive[v] && p.count[v] == 0) {
            return Err(Error::Invariant("dismantling stopped with a dominated vertex left".into()));
        }
        self.finish(p, trace, moves)
    }

    fn finish(&self, p: Peeler, trace: Vec<usize>, moves: Vec<(usize, usize)>) -> Result<Dismantling> {
        let survivors: Vec<usize> = (0..self.n()).filter(|&v| p.alive[v]).collect();
        let (core_n, core_k) = p.core_parameters(&survivors)?;
        let mut retraction = vec![usize::MAX; self.n()];
        for (pos, &v) in survivors.iter().enumerate() {
            retraction[v] = pos;
        }
        for &(v, succ) in moves.iter().rev() {
            retraction[v] = retraction[succ];
        }
        let mut core = CyclicGraph::cnk(core_n, core_k)?;
        if let Some(l) = &self.labels {
            core.labels = Some(survivors.iter().map(|&u| l[u].clone()).collect());
        }
        Ok(Dismantling { core, core_n, core_k, survivors, trace, retraction })
    }

    /// Core parameters `(n, k)` without recording a trace.
    pub fn core_parameters(&self) -> Result<(usize, usize)> {
        let mut p = Peeler::new(self);
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| p.count[v] == 0).collect();
        while let Some(v) = stack.pop() {
            if let Some(w) = p.remove(v) {
                stack.push(w);
            }
        }
        let survivors: Vec<usize> = (0..self.n()).filter(|&v| p.alive[v]).collect();
        p.core_parameters(&survivors)
    }

    pub fn winding_fraction(&self) -> Result<WindingFraction> {
        let (n, k) = self.core_parameters()?;
        Ok(WindingFraction::from_core(n, k))
    }
}

pub(crate) fn check_radius(r: &Rational) -> Result<()> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if *r <= Rational::zero() || *r >= half {
        return Err(Error::OutOfRange(format!("r = {} must lie in (0, 1/2)", format_rational(r))));
    }
    Ok(())
}

fn validate_reach(reach: &[usize]) -> Result<()> {
    let n = reach.len();
    if n == 0 {
        return Err(Error::InvalidGraph("no vertices".into()));
    }
    for i in 0..n {
        let s = reach[i];
        if s > n - 1 {
            return Err(Error::InvalidGraph(format!("reach[{i}] = {s} exceeds n - 1")));
        }
        if reach[(i + 1) % n] + 1 < s {
            return Err(Error::InvalidGraph(format!("reach[{}] < reach[{i}] - 1", (i + 1) % n)));
        }
        if s >= 1 && s + reach[(i + s) % n] > n - 1 {
            return Err(Error::InvalidGraph(format!("vertices {i} and {} are joined both ways", (i + s) % n)));
        }
    }
    Ok(())
}

/// Reach sequence of a cyclic graph given the edge predicate `within(i, s)`
/// for `v_i -> v_{i+s}`, which must be monotone in `s`.
///
/// Two-pointer sweep: ends `i + reach[i]` are non-decreasing in `i`.
pub(crate) fn sweep_reach(n: usize, mut within: impl FnMut(usize, usize) -> bool) -> Vec<usize> {
    let mut reach = vec![0usize; n];
    let mut s = 0usize;
    for i in 0..n {
        s = s.saturating_sub(usize::from(i > 0));
        while s < n - 1 && within(i, s + 1) {
            s += 1;
        }
        reach[i] = s;
    }
    reach
}

/// Dismantling state. A vertex is dominated iff no alive vertex has it as
/// the last element of its closed out-neighbourhood; removing a dominated
/// vertex leaves every other end in place.
struct Peeler {
    next: Vec<usize>,
    prev: Vec<usize>,
    end: Vec<usize>,
    count: Vec<usize>,
    alive: Vec<bool>,
}

impl Peeler {
    fn new(g: &CyclicGraph) -> Self {
        let n = g.n();
        let end: Vec<usize> = (0..n).map(|i| (i + g.reach[i]) % n).collect();
        let mut count = vec![0usize; n];
        for &e in &end {
            count[e] += 1;
        }
        Peeler {
            next: (0..n).map(|i| (i + 1) % n).collect(),
            prev: (0..n).map(|i| (i + n - 1) % n).collect(),
            end,
            count,
            alive: vec![true; n],
        }
    }

    /// Removes `v`; returns the vertex that just became dominated, if any.
    fn remove(&mut self, v: usize) -> Option<usize> {
        let (a, b) = (self.prev[v], self.next[v]);
        self.next[a] = b;
        self.prev[b] = a;
        self.alive[v] = false;
        let e = self.end[v];
        self.count[e] -= 1;
        (self.count[e] == 0).then_some(e)
    }

    fn core_parameters(&self, survivors: &[usize]) -> Result<(usize, usize)> {
        let m = survivors.len();
        let mut pos = vec![usize::MAX; self.alive.len()];
        for (p, &v) in survivors.iter().enumerate() {
            pos[v] = p;
        }
        let k = pos[self.end[survivors[0]]];
        for (p, &v) in survivors.iter().enumerate() {
            let kv = (pos[self.end[v]] + m - p) % m;
            if kv != k {
                return Err(Error::Invariant(format!("core has non-constant reach ({kv} vs {k})")));
            }
        }
        if 2 * k >= m {
            return Err(Error::Invariant(format!("core reach {k} not below half of {m}")));
        }
        Ok((m, k))
    }
}

/// Result of a dismantling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dismantling {
    /// The core as `C_n^k`, labelled by surviving points when available.
    pub core: CyclicGraph,
    pub core_n: usize,
    pub core_k: usize,
    /// Surviving original vertex indices, ascending.
    pub survivors: Vec<usize>,
    /// Removed original vertex indices in removal order.
    pub trace: Vec<usize>,
    /// For each original vertex, the core position it retracts onto.
    pub retraction: Vec<usize>,
}

impl Dismantling {
    pub fn winding_fraction(&self) -> WindingFraction {
        WindingFraction::from_core(self.core_n, self.core_k)
    }
}

/// `k/n` in lowest terms plus the unreduced core parameters it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindingFraction {
    k: usize,
    n: usize,
    core_n: usize,
    core_k: usize,
}

impl WindingFraction {
    pub fn from_core(core_n: usize, core_k: usize) -> Self {
        let g = core_n.gcd(&core_k);
        let (k, n) = if core_k == 0 { (0, 1) } else { (core_k / g, core_n / g) };
        WindingFraction { k, n, core_n, core_k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn core(&self) -> (usize, usize) {
        (self.core_n, self.core_k)
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.k), BigInt::from(self.n))
    }

    /// Compares the fractions only.
    pub fn value_cmp(&self, other: &WindingFraction) -> Ordering {
        ((self.k as u128) * (other.n as u128)).cmp(&((other.k as u128) * (self.n as u128)))
    }
}

impl fmt::Display for WindingFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.n)
    }
}

/// A vertex map between cyclic graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub source: CyclicGraph,
    pub target: CyclicGraph,
    pub assignment: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: CyclicGraph, target: CyclicGraph, assignment: Vec<usize>) -> Self {
        VertexMap { source, target, assignment }
    }

    /// `g ∘ self`; `None` if the middle graphs differ.
    pub fn then(&self, g: &VertexMap) -> Option<VertexMap> {
        if self.target != g.source {
            return None;
        }
        let assignment = self.assignment.iter().map(|&v| g.assignment[v]).collect();
        Some(VertexMap::new(self.source.clone(), g.target.clone(), assignment))
    }

    /// Homomorphism of digraphs, cyclic monotone, and non-constant when the
    /// source has a directed cycle.
    pub fn is_cyclic_homomorphism(&self) -> bool {
        let (s, t, f) = (&self.source, &self.target, &self.assignment);
        let (n, m) = (s.n(), t.n());
        if f.len() != n || f.iter().any(|&v| v >= m) {
            return false;
        }
        for i in 0..n {
            for j in s.out_neighbors(i) {
                if f[i] != f[j] && !t.has_edge(f[i], f[j]) {
                    return false;
                }
            }
        }
        // Start right after a change of value so that runs are not split.
        let Some(start) = (0..n).find(|&i| f[i] != f[(i + n - 1) % n]) else {
            return !s.has_directed_cycle();
        };
        let mut runs = Vec::new();
        for step in 0..n {
            let v = f[(start + step) % n];
            if runs.last() != Some(&v) {
                runs.push(v);
            }
        }
        let mut distinct = runs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != runs.len() {
            return false;
        }
        if runs.len() >= 3 {
            let turn: usize = (0..runs.len()).map(|j| (runs[(j + 1) % runs.len()] + m - runs[j]) % m).sum();
            if turn != m {
                return false;
            }
        }
        true
    }
}

/// A cyclic homomorphism `g -> h`, which exists iff `wf(g) <= wf(h)`.
///
/// Built as the composite: retract `g` onto its core `C_n^k`, send core
/// position `p` to `floor(n' p / n)` in the core `C_{n'}^{k'}` of `h`, then
/// include that core into `h`.
pub fn build_homomorphism(g: &CyclicGraph, h: &CyclicGraph) -> Result<Option<VertexMap>> {
    let dg = g.dismantle()?;
    let dh = h.dismantle()?;
    let (n, k) = (dg.core_n, dg.core_k);
    let (n2, k2) = (dh.core_n, dh.core_k);
    if k * n2 > k2 * n {
        return Ok(None);
    }
    let assignment = dg.retraction.iter().map(|&p| dh.survivors[p * n2 / n]).collect();
    Ok(Some(VertexMap::new(g.clone(), h.clone(), assignment)))
}
