use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::complex::{without, SimplicialComplex};

/// Sorts `tuple` in place and returns the sign of the sorting permutation,
/// or `None` if a vertex repeats.
pub fn sort_with_sign(tuple: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// An integral simplicial chain, coefficients stored against sorted tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerChain {
    pub dim: usize,
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl IntegerChain {
    pub fn zero(dim: usize) -> Self {
        IntegerChain { dim, terms: BTreeMap::new() }
    }

    /// Adds `coeff` times the oriented simplex `tuple` (any vertex order).
    /// Degenerate tuples contribute nothing.
    pub fn add_oriented(&mut self, tuple: &[usize], coeff: i64) {
        assert_eq!(tuple.len(), self.dim + 1, "wrong dimension");
        let mut t = tuple.to_vec();
        if let Some(s) = sort_with_sign(&mut t) {
            add_term(&mut self.terms, t, s * coeff);
        }
    }

    pub fn coefficient(&self, tuple: &[usize]) -> i64 {
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            Some(s) => s * self.terms.get(&t).copied().unwrap_or(0),
            None => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: i64) -> Self {
        let mut out = IntegerChain::zero(self.dim);
        for (t, v) in &self.terms {
            add_term(&mut out.terms, t.clone(), c * v);
        }
        out
    }

    pub fn plus(&self, other: &IntegerChain) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (t, v) in &other.terms {
            add_term(&mut out.terms, t.clone(), *v);
        }
        out
    }

    /// Sum of coefficients of a 0-chain (the reduced-homology `∂_0`).
    pub fn augmentation(&self) -> i64 {
        assert_eq!(self.dim, 0);
        self.terms.values().sum()
    }

    /// `∂` of a chain of positive dimension.
    pub fn boundary(&self) -> Option<IntegerChain> {
        let d = self.dim.checked_sub(1)?;
        let mut out = IntegerChain::zero(d);
        for (t, v) in &self.terms {
            for i in 0..t.len() {
                let s = if i % 2 == 0 { 1 } else { -1 };
                add_term(&mut out.terms, without(t, i), s * v);
            }
        }
        Some(out)
    }

    pub fn is_cycle(&self) -> bool {
        match self.boundary() {
            Some(b) => b.is_zero(),
            None => self.augmentation() == 0,
        }
    }

    /// Image under a vertex map; simplices whose vertices collide vanish.
    pub fn pushforward(&self, f: &[usize]) -> IntegerChain {
        let mut out = IntegerChain::zero(self.dim);
        for (t, v) in &self.terms {
            let mut img: Vec<usize> = t.iter().map(|&x| f[x]).collect();
            if let Some(s) = sort_with_sign(&mut img) {
                add_term(&mut out.terms, img, s * v);
            }
        }
        out
    }

    pub fn is_supported_in(&self, k: &SimplicialComplex) -> bool {
        self.terms.keys().all(|t| k.contains(t))
    }
}

/// An integral cochain, values stored against sorted tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCochain {
    pub dim: usize,
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl IntegerCochain {
    /// The dual of the oriented simplex `tuple`: 1 on it, 0 elsewhere.
    pub fn dual(tuple: &[usize]) -> Self {
        let mut t = tuple.to_vec();
        let s = sort_with_sign(&mut t).expect("dual of a degenerate simplex");
        let mut terms = BTreeMap::new();
        terms.insert(t, s);
        IntegerCochain { dim: tuple.len() - 1, terms }
    }

    pub fn evaluate(&self, c: &IntegerChain) -> i64 {
        if c.dim != self.dim {
            return 0;
        }
        self.terms.iter().map(|(t, v)| v * c.terms.get(t).copied().unwrap_or(0)).sum()
    }

    /// `δβ` on the `(dim+1)`-faces of `k`.
    pub fn coboundary(&self, k: &SimplicialComplex) -> IntegerCochain {
        let mut terms = BTreeMap::new();
        for f in k.faces(self.dim + 1) {
            let v: i64 = (0..f.len())
                .map(|i| {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    s * self.terms.get(&without(f, i)).copied().unwrap_or(0)
                })
                .sum();
            add_term(&mut terms, f.clone(), v);
        }
        IntegerCochain { dim: self.dim + 1, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn add_term(terms: &mut BTreeMap<Vec<usize>, i64>, t: Vec<usize>, v: i64) {
    if v == 0 {
        return;
    }
    match terms.entry(t) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn permutation_signs() {
        let mut t = [2, 0, 1];
        assert_eq!(sort_with_sign(&mut t), Some(1));
        let mut t = [1, 0, 2];
        assert_eq!(sort_with_sign(&mut t), Some(-1));
        assert_eq!(sort_with_sign(&mut [1, 1]), None);
    }

    #[test]
    fn triangle_boundary() {
        let mut c = IntegerChain::zero(2);
        c.add_oriented(&[0, 1, 2], 1);
        let b = c.boundary().unwrap();
        assert_eq!(b.coefficient(&[1, 2]), 1);
        assert_eq!(b.coefficient(&[0, 2]), -1);
        assert_eq!(b.coefficient(&[2, 0]), 1);
        assert!(b.is_cycle());
    }

    proptest! {
        #[test]
        fn boundary_squared_is_zero(simplices in proptest::collection::vec((proptest::collection::btree_set(0usize..9, 4), -5i64..6), 1..8)) {
            let mut c = IntegerChain::zero(3);
            for (s, v) in &simplices {
                let t: Vec<usize> = s.iter().copied().collect();
                c.add_oriented(&t, *v);
            }
            let bb = c.boundary().unwrap().boundary().unwrap();
            prop_assert!(bb.is_zero());
            prop_assert!(c.boundary().unwrap().is_cycle());
        }
    }
}
