//! Small symmetric groups: permutations, subgroups and fixed points of
//! GF(2)-representations.

use std::collections::BTreeSet;
use std::fmt;

use crate::gf2::{BitVec, LinMap, Subspace};

/// A permutation of `0..n`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    /// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn long_cycle(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n.max(1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    /// Moves the entry in slot `i` to slot `self(i)`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        let mut out = xs.to_vec();
        for (i, x) in xs.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// Block permutation of `0..n*m` permuting `n` consecutive blocks of size `m`.
    pub fn blocks(&self, m: usize) -> Perm {
        let n = self.0.len();
        let mut v = vec![0; n * m];
        for b in 0..n {
            for j in 0..m {
                v[b * m + j] = self.0[b] * m + j;
            }
        }
        Perm(v)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All permutations of `0..n` in lexicographic order (identity first).
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// The subgroup generated by `gens`, as a sorted set.
pub fn closure(n: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut group = BTreeSet::from([Perm::identity(n)]);
    let mut frontier = vec![Perm::identity(n)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    group
}

/// A subgroup together with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: BTreeSet<Perm>,
    pub generators: Vec<Perm>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Every subgroup of `Σ_n` generated by at most two elements; for `n <= 4`
/// this is every subgroup. Ordered by size, then elements.
pub fn subgroups(n: usize) -> Vec<Subgroup> {
    let perms = all_perms(n);
    let mut found: Vec<Subgroup> = Vec::new();
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for (i, a) in perms.iter().enumerate() {
        for b in &perms[i..] {
            let gens = vec![a.clone(), b.clone()];
            let el = closure(n, &gens);
            let key: Vec<Perm> = el.iter().cloned().collect();
            if seen.insert(key) {
                found.push(Subgroup { elements: el, generators: gens });
            }
        }
    }
    found.sort_by(|x, y| {
        x.order()
            .cmp(&y.order())
            .then_with(|| x.elements.iter().cmp(y.elements.iter()))
    });
    found
}

/// Dimension of the vectors fixed by every `rho(g)`, `g` in `gens`.
pub fn fixed_dim(dim: usize, gens: &[Perm], rho: impl Fn(&Perm) -> LinMap) -> usize {
    let mut fixed = Subspace::full(dim);
    for g in gens {
        let m = rho(g).add(&LinMap::identity(dim));
        let k = Subspace::spanned_by(dim, m.kernel());
        fixed = fixed.intersect(&k);
    }
    fixed.dim()
}

/// The regular representation of `Σ_n` on `GF(2)[Σ_n]`, basis [`all_perms`].
pub fn regular_rep(n: usize) -> impl Fn(&Perm) -> LinMap {
    let perms = all_perms(n);
    move |g: &Perm| {
        let cols = perms
            .iter()
            .map(|h| {
                let gh = g.compose(h);
                BitVec::unit(perms.len(), perms.iter().position(|p| *p == gh).unwrap())
            })
            .collect();
        LinMap::from_columns(perms.len(), cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(all_perms(4).len(), 24);
        assert!(all_perms(4)[0].is_identity());
        // Σ_3 has 6 subgroups, Σ_4 has 30
        assert_eq!(subgroups(3).len(), 6);
        assert_eq!(subgroups(4).len(), 30);
    }

    #[test]
    fn group_law() {
        let ps = all_perms(4);
        for a in &ps {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in &ps {
                let xs = vec!['a', 'b', 'c', 'd'];
                assert_eq!(a.compose(b).permute(&xs), a.permute(&b.permute(&xs)));
            }
        }
    }

    #[test]
    fn regular_fixed_points() {
        for n in 1..=3 {
            let rho = regular_rep(n);
            let size: usize = (1..=n).product();
            for h in subgroups(n) {
                assert_eq!(fixed_dim(size, &h.generators, &rho), size / h.order());
            }
        }
    }
}
