//! Integer matrices: Smith invariant factors and Hermite row reduction.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by rows, each row sorted by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> Self {
        let rows: Vec<Vec<(usize, BigInt)>> = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                r.retain(|e| !e.1.is_zero());
                r
            })
            .collect();
        SparseIntMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }
}

/// Nonzero invariant factors (positive, each dividing the next).
///
/// Unit pivots are eliminated sparsely first; whatever is left is reduced
/// densely.
pub fn invariant_factors(m: &SparseIntMatrix) -> Vec<BigInt> {
    let mut rows = m.rows.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            cols[*j].insert(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut units = 0usize;

    while let Some((pr, pc)) = unit_pivot(&rows, &cols, &alive) {
        let pivot_sign = rows[pr].iter().find(|e| e.0 == pc).unwrap().1.clone();
        let others: Vec<usize> = cols[pc].iter().copied().filter(|&t| t != pr).collect();
        let prow = rows[pr].clone();
        for t in others {
            let a = rows[t].iter().find(|e| e.0 == pc).unwrap().1.clone();
            // pivot is ±1, so its inverse is itself.
            let f = &a * &pivot_sign;
            let old: Vec<usize> = rows[t].iter().map(|e| e.0).collect();
            rows[t] = axpy(&rows[t], &f, &prow);
            for j in old {
                cols[j].remove(&t);
            }
            for (j, _) in &rows[t] {
                cols[*j].insert(t);
            }
        }
        for (j, _) in &prow {
            cols[*j].remove(&pr);
        }
        alive[pr] = false;
        rows[pr].clear();
        units += 1;
    }

    let rest_rows: Vec<usize> = (0..rows.len()).filter(|&i| alive[i] && !rows[i].is_empty()).collect();
    let mut rest_cols: Vec<usize> = rest_rows.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
    rest_cols.sort_unstable();
    rest_cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (a, &i) in rest_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            let b = rest_cols.binary_search(j).unwrap();
            dense[a][b] = v.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_invariant_factors(dense));
    out.sort();
    out
}

fn unit_pivot(rows: &[Vec<(usize, BigInt)>], cols: &[BTreeSet<usize>], alive: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in rows.iter().enumerate() {
        if !alive[i] || r.is_empty() {
            continue;
        }
        for (j, v) in r {
            if v.abs().is_one() {
                let score = (r.len() - 1) * (cols[*j].len() - 1);
                if best.is_none_or(|b| score < b.0) {
                    best = Some((score, i, *j));
                    if score == 0 {
                        return Some((i, *j));
                    }
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// `x - f * y` for sorted sparse rows.
fn axpy(x: &[(usize, BigInt)], f: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let ca = x.get(a).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = y.get(b).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(x[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, -(f * &y[b].1)));
            b += 1;
        } else {
            let v = &x[a].1 - f * &y[b].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Smith normal form diagonal of a dense matrix, zeros dropped.
pub fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut done = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                move_min_to_pivot(&mut a, t);
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Brings the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
fn move_min_to_pivot(a: &mut [Vec<BigInt>], t: usize) {
    let nr = a.len();
    let nc = a[0].len();
    let mut best = (t, t);
    for i in t..nr {
        if !a[i][t].is_zero() && (a[best.0][best.1].is_zero() || a[i][t].abs() < a[best.0][best.1].abs()) {
            best = (i, t);
        }
    }
    for j in t..nc {
        if !a[t][j].is_zero() && (a[best.0][best.1].is_zero() || a[t][j].abs() < a[best.0][best.1].abs()) {
            best = (t, j);
        }
    }
    if best.0 != t {
        a.swap(t, best.0);
    }
    if best.1 != t {
        for row in a.iter_mut() {
            row.swap(t, best.1);
        }
    }
}

/// Row-style Hermite normal form: nonzero rows, strictly increasing pivot
/// columns, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_rows(mut a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let nc = a.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..nc {
        // Euclid down column c among the remaining rows.
        loop {
            let live: Vec<usize> = (0..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let p = *live.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            for &i in &live {
                if i != p {
                    let q = a[i][c].div_floor(&a[p][c]);
                    let prow = a[p].clone();
                    for j in 0..nc {
                        a[i][j] -= &q * &prow[j];
                    }
                }
            }
        }
        if let Some(p) = (0..a.len()).find(|&i| !a[i][c].is_zero()) {
            let mut row = a.swap_remove(p);
            if row[c].is_negative() {
                row.iter_mut().for_each(|v| *v = -v.clone());
            }
            out.push(row);
        }
    }
    // Reduce above pivots.
    for k in 0..out.len() {
        let pc = out[k].iter().position(|v| !v.is_zero()).unwrap();
        for i in 0..k {
            let q = out[i][pc].div_floor(&out[k][pc]);
            if !q.is_zero() {
                let prow = out[k].clone();
                for j in 0..nc {
                    out[i][j] -= &q * &prow[j];
                }
            }
        }
    }
    out
}

/// Whether `v` is an integer combination of the Hermite rows `h`.
pub fn in_row_lattice(h: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in h {
        let pc = row.iter().position(|x| !x.is_zero()).unwrap();
        if v[..pc].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = v[pc].div_mod_floor(&row[pc]);
        if !r.is_zero() {
            return false;
        }
        for j in pc..v.len() {
            v[j] -= &q * &row[j];
        }
    }
    v.iter().all(|x| x.is_zero())
}
