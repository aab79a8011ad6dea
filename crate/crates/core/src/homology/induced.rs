use alloc::vec::Vec;

use super::complex::DEFAULT_CAP;
use crate::cyclic_graph::CyclicGraph;
use crate::{Error, Result};

/// Whether the undirected graph underlying `g` has an induced subgraph
/// isomorphic to the undirected `C_8^3`. Exhaustive over 8-subsets.
pub fn has_induced_c8_3(g: &CyclicGraph) -> Result<bool> {
    let pattern = CyclicGraph::cnk(8, 3)?;
    has_induced_copy(g, &pattern)
}

/// Exhaustive induced-subgraph isomorphism test for small graphs.
pub fn has_induced_copy(g: &CyclicGraph, pattern: &CyclicGraph) -> Result<bool> {
    let n = g.n();
    if n > DEFAULT_CAP {
        return Err(Error::OverCap { size: n, cap: DEFAULT_CAP });
    }
    let p = pattern.n();
    if p > n {
        return Ok(false);
    }
    let padj: Vec<Vec<bool>> = (0..p).map(|i| (0..p).map(|j| i != j && pattern.adjacent(i, j)).collect()).collect();
    let gadj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && g.adjacent(i, j)).collect()).collect();
    let pdeg: Vec<usize> = padj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();

    let mut subset = Vec::with_capacity(p);
    Ok(subsets(n, p, 0, &mut subset, &mut |s| {
        let deg: Vec<usize> = s.iter().map(|&u| s.iter().filter(|&&v| gadj[u][v]).count()).collect();
        let mut a = deg.clone();
        let mut b = pdeg.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b && isomorphic(s, &gadj, &padj)
    }))
}

fn subsets(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == p {
        return f(cur);
    }
    for v in start..n {
        if n - v < p - cur.len() {
            break;
        }
        cur.push(v);
        if subsets(n, p, v + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Backtracking bijection from pattern vertices onto `s`.
fn isomorphic(s: &[usize], gadj: &[Vec<bool>], padj: &[Vec<bool>]) -> bool {
    fn go(
        i: usize,
        s: &[usize],
        gadj: &[Vec<bool>],
        padj: &[Vec<bool>],
        img: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == s.len() {
            return true;
        }
        for c in 0..s.len() {
            if used[c] {
                continue;
            }
            if (0..i).all(|j| padj[i][j] == gadj[s[c]][s[img[j]]]) {
                used[c] = true;
                img.push(c);
                if go(i + 1, s, gadj, padj, img, used) {
                    return true;
                }
                img.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut used = alloc::vec![false; s.len()];
    go(0, s, gadj, padj, &mut Vec::new(), &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(has_induced_c8_3(&CyclicGraph::cnk(8, 3).unwrap()).unwrap());
        assert!(!has_induced_c8_3(&CyclicGraph::cnk(5, 1).unwrap()).unwrap());
        assert!(!has_induced_c8_3(&CyclicGraph::cnk(8, 2).unwrap()).unwrap());
    }

    #[test]
    fn finds_relabelled_copies() {
        // C_16^7 contains C_8^3 on the even vertices.
        assert!(has_induced_c8_3(&CyclicGraph::cnk(16, 6).unwrap()).unwrap());
    }
}
