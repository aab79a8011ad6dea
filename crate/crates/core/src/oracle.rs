//! Slow reference implementations used to cross-check the fast paths.
//!
//! Everything here works straight from the definitions and is only meant
//! for inputs of a dozen or so points.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::IndexedRandom;
use rand::{Rng, RngCore};

use crate::circle::CirclePoint;
use crate::cyclic_graph::{CyclicGraph, VertexMap, WindingFraction};
use crate::homology::{LatticeBasisProblem, LatticeStatus};
use crate::rational::Rational;
use crate::{Error, Result};

/// `a ≺ b ≺ c` in the cyclic order of `0..n`: distinct and met in this
/// order going forward from `a`.
fn between(n: usize, a: usize, b: usize, c: usize) -> bool {
    a != b && b != c && a != c && (b + n - a) % n < (c + n - a) % n
}

/// `s` is a cyclic subinterval of `0..n`.
fn is_subinterval(n: usize, s: &[bool]) -> bool {
    let count = s.iter().filter(|&&x| x).count();
    if count == 0 || count == n {
        return true;
    }
    // Exactly one place where membership switches on.
    (0..n).filter(|&i| s[i] && !s[(i + n - 1) % n]).count() == 1
}

/// Cyclic homomorphism test straight from the definition: directed graph
/// homomorphism, interval fibres, the betweenness condition on all triples,
/// and non-constancy when the source has a directed cycle.
pub fn cyclic_homomorphism_by_definition(f: &VertexMap) -> bool {
    let (g, h, a) = (&f.source, &f.target, &f.assignment);
    let (n, m) = (g.n(), h.n());
    if a.len() != n || a.iter().any(|&v| v >= m) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if g.has_edge(i, j) && a[i] != a[j] && !h.has_edge(a[i], a[j]) {
                return false;
            }
        }
    }
    for t in 0..m {
        let fibre: Vec<bool> = a.iter().map(|&v| v == t).collect();
        if !is_subinterval(n, &fibre) {
            return false;
        }
    }
    for s in 0..n {
        for s1 in 0..n {
            for s2 in 0..n {
                if between(m, a[s], a[s1], a[s2]) && !between(n, s, s1, s2) {
                    return false;
                }
            }
        }
    }
    if a.iter().all(|&v| v == a[0]) && has_cycle_by_search(g) {
        return false;
    }
    true
}

/// Directed cycle by depth-first search over the edge relation.
pub fn has_cycle_by_search(g: &CyclicGraph) -> bool {
    let n = g.n();
    // 0 = unvisited, 1 = on stack, 2 = done.
    let mut state = vec![0u8; n];
    fn visit(g: &CyclicGraph, v: usize, state: &mut [u8]) -> bool {
        state[v] = 1;
        for w in 0..g.n() {
            if g.has_edge(v, w) && (state[w] == 1 || (state[w] == 0 && visit(g, w, state))) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    (0..n).any(|v| state[v] == 0 && visit(g, v, &mut state))
}

/// Searches every vertex map `g -> h`, pruning partial maps that already
/// break the edge or betweenness condition. Leaves are confirmed with
/// [`cyclic_homomorphism_by_definition`].
pub fn exhaustive_homomorphism(g: &CyclicGraph, h: &CyclicGraph) -> Option<VertexMap> {
    let n = g.n();
    let m = h.n();
    let mut a = Vec::with_capacity(n);
    fn extend(g: &CyclicGraph, h: &CyclicGraph, a: &mut Vec<usize>) -> Option<VertexMap> {
        let (n, m) = (g.n(), h.n());
        let i = a.len();
        if i == n {
            let f = VertexMap::new(g.clone(), h.clone(), a.clone());
            return cyclic_homomorphism_by_definition(&f).then_some(f);
        }
        'value: for v in 0..m {
            for j in 0..i {
                let aj = a[j];
                if (g.has_edge(j, i) && aj != v && !h.has_edge(aj, v))
                    || (g.has_edge(i, j) && aj != v && !h.has_edge(v, aj))
                {
                    continue 'value;
                }
            }
            for j in 0..i {
                for k in 0..i {
                    let (x, y) = (a[j], a[k]);
                    let bad = (between(m, x, y, v) && !between(n, j, k, i))
                        || (between(m, x, v, y) && !between(n, j, i, k))
                        || (between(m, v, x, y) && !between(n, i, j, k));
                    if bad {
                        continue 'value;
                    }
                }
            }
            a.push(v);
            if let Some(f) = extend(g, h, a) {
                return Some(f);
            }
            a.pop();
        }
        None
    }
    if n == 0 || m == 0 {
        return None;
    }
    extend(g, h, &mut a)
}

/// Largest `k/n` with `n <= max_n` admitting a cyclic homomorphism
/// `C_n^k -> g`, found by exhaustive search.
pub fn max_wf_by_homomorphisms(g: &CyclicGraph, max_n: usize) -> WindingFraction {
    let mut best = WindingFraction::from_core(1, 0);
    for n in 1..=max_n {
        for k in 1..n.div_ceil(2) {
            let cand = WindingFraction::from_core(n, k);
            if cand.n() != n || cand.value_cmp(&best).is_le() {
                continue;
            }
            let src = CyclicGraph::cnk(n, k).expect("k < n/2");
            if exhaustive_homomorphism(&src, g).is_some() {
                best = cand;
            }
        }
    }
    best
}

/// Result of dismantling by re-deriving domination on each induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlowDismantling {
    pub core_n: usize,
    pub core_k: usize,
    pub survivors: Vec<usize>,
    pub trace: Vec<usize>,
}

/// Removes a uniformly chosen dominated vertex until none is left, checking
/// domination directly on the current induced subgraph each time.
pub fn random_dismantling<R: RngCore + ?Sized>(g: &CyclicGraph, rng: &mut R) -> Result<SlowDismantling> {
    let mut alive: Vec<usize> = (0..g.n()).collect();
    let mut trace = Vec::new();
    loop {
        let cur = g.induced(&alive);
        let dominated: Vec<usize> = (0..cur.n()).filter(|&i| cur.is_dominated(i)).collect();
        let Some(&pos) = dominated.choose(rng) else {
            let k = cur.reach()[0];
            if cur.reach().iter().any(|&s| s != k) {
                return Err(Error::Invariant(format!("dismantled graph is not a C_n^k: {:?}", cur.reach())));
            }
            return Ok(SlowDismantling { core_n: cur.n(), core_k: k, survivors: alive, trace });
        };
        trace.push(alive.remove(pos));
    }
}

/// A random cyclic graph on `n` vertices: uniform reach vectors by
/// rejection, falling back to reaches below `n/2` when rejection stalls.
pub fn random_cyclic_graph<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> CyclicGraph {
    assert!(n >= 1);
    for _ in 0..500 {
        let reach = (0..n).map(|_| rng.random_range(0..n)).collect();
        if let Ok(g) = CyclicGraph::from_reach(reach) {
            return g;
        }
    }
    let cap = (n - 1) / 2;
    loop {
        let mut reach = vec![rng.random_range(0..=cap)];
        for i in 1..n {
            let lo = reach[i - 1].saturating_sub(1);
            reach.push(rng.random_range(lo..=cap));
        }
        if let Ok(g) = CyclicGraph::from_reach(reach) {
            return g;
        }
    }
}

/// Whether some `m`-subset of `points` is `(eps, m)`-regular, by trying every
/// subset and every assignment of its points to polygon vertices.
///
/// For a fixed assignment the admissible rotations are those within `eps`
/// of every `y_j - σ(j)/m`, which exist iff these centres fit in an arc
/// shorter than `2 eps`.
pub fn regular_subset_exists_brute(points: &[CirclePoint], eps: &Rational, m: usize) -> bool {
    if m == 0 || points.len() < m {
        return false;
    }
    let mut subset = Vec::new();
    subsets(points.len(), m, 0, &mut subset, &mut |s| {
        let mut perm: Vec<usize> = (0..m).collect();
        permutations(&mut perm, 0, &mut |p| {
            let centres: Vec<CirclePoint> = s
                .iter()
                .zip(p)
                .map(|(&j, &v)| CirclePoint::wrap(points[j].value() - Rational::new(v.into(), m.into())))
                .collect();
            fits_in_open_arc(&centres, eps)
        })
    })
}

fn fits_in_open_arc(c: &[CirclePoint], eps: &Rational) -> bool {
    let half = Rational::new(1.into(), 2.into());
    if *eps > half {
        return true;
    }
    let mut v: Vec<&Rational> = c.iter().map(|p| p.value()).collect();
    v.sort();
    let n = v.len();
    let one = Rational::from_integer(1.into());
    let widest = (0..n)
        .map(|i| if i + 1 < n { v[i + 1] - v[i] } else { &one - v[n - 1] + v[0] })
        .max()
        .unwrap_or_else(|| one.clone());
    &one - widest < eps * Rational::from_integer(2.into())
}

fn subsets(n: usize, m: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == m {
        return f(cur);
    }
    for i in from..n {
        if n - i < m - cur.len() {
            break;
        }
        cur.push(i);
        if subsets(n, m, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

fn permutations(p: &mut [usize], at: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == p.len() {
        return f(p);
    }
    for i in at..p.len() {
        p.swap(at, i);
        if permutations(p, at + 1, f) {
            return true;
        }
        p.swap(at, i);
    }
    false
}

/// Lattice status by enumerating integer combinations with coefficients in
/// `-bound..=bound`. A query multiple `c q` counts for `1 <= c <= bound`.
pub fn lattice_brute(p: &LatticeBasisProblem, bound: i64) -> LatticeStatus {
    let n = p.rank;
    let gens: Vec<Vec<i64>> = p.generators.iter().map(|g| g.to_vector(n)).collect();
    let q = p.query.to_vector(n);
    let mut best: Option<i64> = None;
    let mut coeffs = vec![-bound; gens.len()];
    loop {
        let mut sum = vec![0i64; n];
        for (c, g) in coeffs.iter().zip(&gens) {
            for (s, x) in sum.iter_mut().zip(g) {
                *s += c * x;
            }
        }
        for c in 1..=bound {
            if sum.iter().zip(&q).all(|(s, x)| *s == c * x) {
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return match best {
                    Some(1) => LatticeStatus::Member,
                    Some(_) => LatticeStatus::MultipleOnly,
                    None => LatticeStatus::NotMember,
                };
            }
            if coeffs[i] < bound {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}
