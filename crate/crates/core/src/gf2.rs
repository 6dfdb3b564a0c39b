//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words. Linear maps are stored by the images
//! of the source basis vectors, which is the natural layout for module actions
//! (applying a map is an XOR over the set bits of the input). Subspaces are
//! kept in fully reduced echelon form so that reduction modulo a subspace is a
//! single pass and the residual doubles as quotient coordinates.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                out.set(i - start, true);
            }
        }
        out
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// A linear map `GF(2)^src -> GF(2)^tgt`, stored by columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap {
    src: usize,
    tgt: usize,
    cols: Vec<BitVec>,
}

impl LinMap {
    pub fn zero(src: usize, tgt: usize) -> Self {
        LinMap {
            src,
            tgt,
            cols: vec![BitVec::zeros(tgt); src],
        }
    }

    pub fn identity(n: usize) -> Self {
        LinMap {
            src: n,
            tgt: n,
            cols: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_columns(tgt: usize, cols: Vec<BitVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.len() == tgt));
        LinMap {
            src: cols.len(),
            tgt,
            cols,
        }
    }

    #[inline]
    pub fn src_dim(&self) -> usize {
        self.src
    }

    #[inline]
    pub fn tgt_dim(&self) -> usize {
        self.tgt
    }

    #[inline]
    pub fn column(&self, i: usize) -> &BitVec {
        &self.cols[i]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.cols
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.src);
        let mut out = BitVec::zeros(self.tgt);
        for i in v.iter_ones() {
            out.xor_assign(&self.cols[i]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        debug_assert_eq!(other.tgt, self.src);
        LinMap {
            src: other.src,
            tgt: self.tgt,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        debug_assert_eq!((self.src, self.tgt), (other.src, other.tgt));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.xor_assign(b);
                c
            })
            .collect();
        LinMap {
            src: self.src,
            tgt: self.tgt,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        Subspace::spanned_by(self.tgt, self.cols.iter().cloned()).dim()
    }

    pub fn image(&self) -> Subspace {
        Subspace::spanned_by(self.tgt, self.cols.iter().cloned())
    }

    /// Basis of the kernel, as vectors in the source.
    pub fn kernel(&self) -> Vec<BitVec> {
        // Eliminate on (image | tag) pairs; rows whose image part vanishes
        // carry kernel vectors in their tag part.
        let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
        let mut kernel = Vec::new();
        for (i, col) in self.cols.iter().enumerate() {
            let mut img = col.clone();
            let mut tag = BitVec::unit(self.src, i);
            for (p, pimg, ptag) in &pivots {
                if img.get(*p) {
                    img.xor_assign(pimg);
                    tag.xor_assign(ptag);
                }
            }
            match img.first_one() {
                Some(p) => {
                    // keep pivot rows mutually reduced at pivot positions
                    for (_, qimg, qtag) in pivots.iter_mut() {
                        if qimg.get(p) {
                            qimg.xor_assign(&img);
                            qtag.xor_assign(&tag);
                        }
                    }
                    pivots.push((p, img, tag));
                }
                None => kernel.push(tag),
            }
        }
        kernel
    }

    /// Some `x` with `self(x) = y`, if one exists.
    pub fn solve(&self, y: &BitVec) -> Option<BitVec> {
        let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
        for (i, col) in self.cols.iter().enumerate() {
            let mut img = col.clone();
            let mut tag = BitVec::unit(self.src, i);
            for (p, pimg, ptag) in &pivots {
                if img.get(*p) {
                    img.xor_assign(pimg);
                    tag.xor_assign(ptag);
                }
            }
            if let Some(p) = img.first_one() {
                pivots.push((p, img, tag));
            }
        }
        let mut rest = y.clone();
        let mut x = BitVec::zeros(self.src);
        for (p, pimg, ptag) in &pivots {
            if rest.get(*p) {
                rest.xor_assign(pimg);
                x.xor_assign(ptag);
            }
        }
        rest.is_zero().then_some(x)
    }
}

/// A subspace of `GF(2)^ambient` in fully reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(|i| BitVec::unit(ambient, i)))
    }

    pub fn spanned_by(ambient: usize, vs: impl IntoIterator<Item = BitVec>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace; the residual is supported off the pivots.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = a·self = b·other  <=> (a, b) in ker [self | other]
        let cols: Vec<BitVec> = self.rows.iter().chain(&other.rows).cloned().collect();
        let m = LinMap::from_columns(self.ambient, cols);
        let k = self.dim();
        Subspace::spanned_by(
            self.ambient,
            m.kernel().into_iter().map(|t| {
                let mut v = BitVec::zeros(self.ambient);
                for i in t.iter_ones().filter(|&i| i < k) {
                    v.xor_assign(&self.rows[i]);
                }
                v
            }),
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Ambient coordinates not used as pivots, in increasing order; these
    /// index a basis of the quotient `ambient / self`.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&i| !used[i]).collect()
    }
}

/// Projection onto the quotient `ambient / sub`, with quotient basis given by
/// the complement coordinates of `sub`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    sub: Subspace,
    coords: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl QuotientMap {
    pub fn new(sub: Subspace) -> Self {
        let coords = sub.complement_coordinates();
        let mut slot = vec![None; sub.ambient()];
        for (j, &c) in coords.iter().enumerate() {
            slot[c] = Some(j);
        }
        QuotientMap { sub, coords, slot }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn project(&self, v: &BitVec) -> BitVec {
        let r = self.sub.reduce(v);
        let mut out = BitVec::zeros(self.coords.len());
        for i in r.iter_ones() {
            out.set(self.slot[i].expect("residual lies off the pivots"), true);
        }
        out
    }

    /// The ambient vector representing quotient basis element `j`.
    pub fn lift(&self, j: usize) -> BitVec {
        BitVec::unit(self.sub.ambient(), self.coords[j])
    }

    pub fn lift_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_indices(self.sub.ambient(), v.iter_ones().map(|j| self.coords[j]))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }
}

/// Coordinates of vectors of a subspace with respect to a chosen basis.
#[derive(Clone, Debug)]
pub struct SubspaceCoords {
    basis: Vec<BitVec>,
    map: LinMap,
}

impl SubspaceCoords {
    pub fn new(ambient: usize, basis: Vec<BitVec>) -> Self {
        let map = LinMap::from_columns(ambient, basis.clone());
        SubspaceCoords { basis, map }
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &BitVec) -> Option<BitVec> {
        self.map.solve(v)
    }

    pub fn embed(&self, c: &BitVec) -> BitVec {
        self.map.apply(c)
    }
}

/// `C(n, k) mod 2` by Lucas' theorem.
#[inline]
pub fn binomial_mod2(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_small_map() {
        // columns e0+e1, e1, e0
        let m = LinMap::from_columns(2, vec![bv("11"), bv("01"), bv("10")]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn subspace_quotient_coordinates() {
        let s = Subspace::spanned_by(3, vec![bv("110"), bv("011")]);
        let q = QuotientMap::new(s);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&bv("101")), bv("0"));
        assert_eq!(q.project(&bv("100")), bv("1"));
    }

    #[test]
    fn lucas() {
        assert!(binomial_mod2(3, 1));
        assert!(!binomial_mod2(2, 1));
        assert!(binomial_mod2(5, 4));
        assert!(!binomial_mod2(1, 2));
        for n in 0..40u64 {
            let mut c = 1u64;
            for k in 0..=n {
                assert_eq!(binomial_mod2(n, k), c % 2 == 1, "C({n},{k})");
                c = c * (n - k) / (k + 1);
            }
        }
    }

    fn arb_map() -> impl Strategy<Value = LinMap> {
        (1usize..12, 1usize..12).prop_flat_map(|(s, t)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), t), s)
                .prop_map(move |cols| LinMap::from_columns(t, cols.iter().map(|c| BitVec::from_bits(c)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_map()) {
            let k = m.kernel();
            prop_assert_eq!(k.len() + m.rank(), m.src_dim());
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn solve_hits_image(m in arb_map(), bits in proptest::collection::vec(any::<bool>(), 12)) {
            let x = BitVec::from_bits(&bits[..m.src_dim()]);
            let y = m.apply(&x);
            let sol = m.solve(&y).expect("image vector must be solvable");
            prop_assert_eq!(m.apply(&sol), y);
        }

        #[test]
        fn intersection_dimension(
            (a, b) in (1usize..12).prop_flat_map(|t| {
                let col = move || proptest::collection::vec(any::<bool>(), t);
                (proptest::collection::vec(col(), 1..8), proptest::collection::vec(col(), 1..8))
                    .prop_map(move |(x, y)| (
                        LinMap::from_columns(t, x.iter().map(|c| BitVec::from_bits(c)).collect()),
                        LinMap::from_columns(t, y.iter().map(|c| BitVec::from_bits(c)).collect()),
                    ))
            })
        ) {
            let (sa, sb) = (a.image(), b.image());
            let i = sa.intersect(&sb);
            prop_assert_eq!(i.dim() + sa.sum(&sb).dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa) && i.is_subspace_of(&sb));
        }
    }
}
