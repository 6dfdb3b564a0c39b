//! Unstable modules as degree-truncated graded GF(2) data.
//!
//! A [`RealizedModule`] stores a basis in each degree `0..=top` together with
//! the matrices of `Sq^k`. Only squares that stay inside the window are
//! stored; `Sq^k` with `k > d` vanishes on `M^d` by instability. The `cert`
//! degree records how far the data is known to agree with the untruncated
//! module: truncated inputs to left adjoints or kernels can make the upper
//! part of a window wrong, and every operation propagates the bound.

mod free;
mod functors;
mod presented;

use std::sync::Arc;

use crate::gf2::{BitVec, LinMap, QuotientMap, Subspace};
use crate::steenrod::{adem_normalize, Monomial, SqWord};

pub use free::{free, FreeElement, FreeSum};
pub use functors::{
    desuspend, direct_sum, lambda_map, loops, phi, suspend, tensor, tensor_swap, truncate_above,
    zero_module, Loops,
};
pub use presented::{
    hom_space, present, present_with_values, realize, realize_with_lifts, HomSpace, PresentedModule,
    Realization,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedModule {
    top: usize,
    cert: usize,
    dims: Vec<usize>,
    /// `action[d][k - 1]` is `Sq^k: M^d -> M^{d+k}` for `1 <= k <= min(d, top - d)`.
    action: Vec<Vec<LinMap>>,
    labels: Option<Vec<Vec<String>>>,
}

impl RealizedModule {
    /// Builds a module from a closure giving `Sq^k` of basis vector `i` in degree `d`.
    pub fn build(
        top: usize,
        cert: usize,
        dims: Vec<usize>,
        mut sq: impl FnMut(usize, usize, usize) -> BitVec,
    ) -> Self {
        assert_eq!(dims.len(), top + 1, "one dimension per degree");
        let action = (0..=top)
            .map(|d| {
                (1..=d.min(top - d))
                    .map(|k| {
                        let cols = (0..dims[d]).map(|i| sq(k, d, i)).collect();
                        LinMap::from_columns(dims[d + k], cols)
                    })
                    .collect()
            })
            .collect();
        RealizedModule {
            top,
            cert: cert.min(top),
            dims,
            action,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        debug_assert!(labels.iter().zip(&self.dims).all(|(l, &d)| l.len() == d));
        self.labels = Some(labels);
        self
    }

    pub fn with_cert(mut self, cert: usize) -> Self {
        self.cert = cert.min(self.top);
        self
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn cert(&self) -> usize {
        self.cert
    }

    #[inline]
    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, d: usize, i: usize) -> String {
        match &self.labels {
            Some(l) => l[d][i].clone(),
            None => format!("b{d}_{i}"),
        }
    }

    /// The matrix of `Sq^k` on `M^d`; identity for `k = 0`, zero past the
    /// instability bound. Panics if `d + k` leaves the window.
    pub fn sq_matrix(&self, k: usize, d: usize) -> LinMap {
        assert!(d + k <= self.top, "Sq^{k} on degree {d} leaves window {}", self.top);
        if k == 0 {
            LinMap::identity(self.dims[d])
        } else if k > d {
            LinMap::zero(self.dims[d], self.dims[d + k])
        } else {
            self.action[d][k - 1].clone()
        }
    }

    pub fn sq(&self, k: usize, d: usize, v: &BitVec) -> BitVec {
        assert!(d + k <= self.top, "Sq^{k} on degree {d} leaves window {}", self.top);
        if k == 0 {
            v.clone()
        } else if k > d {
            BitVec::zeros(self.dims[d + k])
        } else {
            self.action[d][k - 1].apply(v)
        }
    }

    /// Applies a word (rightmost square first).
    pub fn act_word(&self, w: &[u32], d: usize, v: &BitVec) -> BitVec {
        let mut cur = v.clone();
        let mut deg = d;
        for &a in w.iter().rev() {
            cur = self.sq(a as usize, deg, &cur);
            deg += a as usize;
            if cur.is_zero() {
                let end = d + w.iter().map(|&a| a as usize).sum::<usize>();
                return BitVec::zeros(self.dims[end]);
            }
        }
        cur
    }

    pub fn act_monomial(&self, m: &Monomial, d: usize, v: &BitVec) -> BitVec {
        self.act_word(m.exponents(), d, v)
    }

    /// `P_0 = Sq^d` on `M^d`.
    pub fn p0(&self, d: usize, v: &BitVec) -> BitVec {
        self.sq(d, d, v)
    }

    /// Restricts the window to degrees `0..=top`.
    pub fn restrict(&self, top: usize) -> RealizedModule {
        let top = top.min(self.top);
        RealizedModule {
            top,
            cert: self.cert.min(top),
            dims: self.dims[..=top].to_vec(),
            action: (0..=top)
                .map(|d| self.action[d][..d.min(top - d)].to_vec())
                .collect(),
            labels: self.labels.as_ref().map(|l| l[..=top].to_vec()),
        }
    }

    /// Checks instability shape and Adem compatibility through `cert`.
    pub fn validate(&self) -> Result<(), String> {
        for d in 0..=self.top {
            let expect = d.min(self.top - d);
            if self.action[d].len() != expect {
                return Err(format!("degree {d}: {} action maps, expected {expect}", self.action[d].len()));
            }
        }
        for d in 0..=self.cert {
            for b in 1..=d {
                for a in 1..2 * b {
                    if d + a + b > self.cert {
                        break;
                    }
                    let rhs = adem_normalize(&SqWord::new([a as u32, b as u32]));
                    for i in 0..self.dims[d] {
                        let v = BitVec::unit(self.dims[d], i);
                        let lhs = self.act_word(&[a as u32, b as u32], d, &v);
                        let mut r = BitVec::zeros(self.dims[d + a + b]);
                        for m in rhs.terms() {
                            r.xor_assign(&self.act_monomial(m, d, &v));
                        }
                        if lhs != r {
                            return Err(format!("Adem relation Sq^{a}Sq^{b} fails on degree {d} vector {i}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The submodule with the given Sq-stable subspaces; basis in degree `d`
    /// is the reduced echelon basis of `spaces[d]`.
    pub fn submodule(self: &Arc<Self>, spaces: &[Subspace]) -> (Arc<RealizedModule>, ModuleMap) {
        assert_eq!(spaces.len(), self.top + 1);
        let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
        let coords = |d: usize, w: &BitVec| -> BitVec {
            let s = &spaces[d];
            debug_assert!(s.contains(w), "subspace not closed under Sq in degree {d}");
            BitVec::from_indices(
                s.dim(),
                s.pivots().iter().enumerate().filter(|(_, &p)| w.get(p)).map(|(j, _)| j),
            )
        };
        let sub = RealizedModule::build(self.top, self.cert, dims, |k, d, i| {
            coords(d + k, &self.sq(k, d, &spaces[d].basis()[i]))
        });
        let sub = Arc::new(sub);
        let maps = spaces
            .iter()
            .map(|s| LinMap::from_columns(s.ambient(), s.basis().to_vec()))
            .collect();
        let inc = ModuleMap::new(Arc::clone(&sub), Arc::clone(self), maps, self.cert);
        (sub, inc)
    }

    /// The quotient by Sq-stable subspaces.
    pub fn quotient(self: &Arc<Self>, spaces: &[Subspace]) -> (Arc<RealizedModule>, ModuleMap) {
        assert_eq!(spaces.len(), self.top + 1);
        let qs: Vec<QuotientMap> = spaces.iter().cloned().map(QuotientMap::new).collect();
        let dims = qs.iter().map(QuotientMap::dim).collect();
        let mut q = RealizedModule::build(self.top, self.cert, dims, |k, d, i| {
            qs[d + k].project(&self.sq(k, d, &qs[d].lift(i)))
        });
        if let Some(l) = &self.labels {
            let labels = qs
                .iter()
                .enumerate()
                .map(|(d, qm)| {
                    (0..qm.dim())
                        .map(|j| {
                            let v = qm.lift(j);
                            let i = v.first_one().expect("lift is a unit vector");
                            l[d][i].clone()
                        })
                        .collect()
                })
                .collect();
            q = q.with_labels(labels);
        }
        let q = Arc::new(q);
        let maps = (0..=self.top)
            .map(|d| {
                LinMap::from_columns(
                    qs[d].dim(),
                    (0..self.dims[d])
                        .map(|i| qs[d].project(&BitVec::unit(self.dims[d], i)))
                        .collect(),
                )
            })
            .collect();
        let proj = ModuleMap::new(Arc::clone(self), Arc::clone(&q), maps, self.cert);
        (q, proj)
    }

    /// The smallest Sq-stable family of subspaces containing `seeds[d]` in each degree.
    pub fn sq_closure(&self, seeds: &[Vec<BitVec>]) -> Vec<Subspace> {
        let mut spaces: Vec<Subspace> = (0..=self.top).map(|d| Subspace::zero(self.dims[d])).collect();
        for d in 0..=self.top {
            if let Some(s) = seeds.get(d) {
                for v in s {
                    spaces[d].insert(v.clone());
                }
            }
            for k in 1..=d / 2 {
                let src = d - k;
                if k > src {
                    continue;
                }
                let imgs: Vec<BitVec> = spaces[src]
                    .basis()
                    .iter()
                    .map(|v| self.sq(k, src, v))
                    .collect();
                for w in imgs {
                    spaces[d].insert(w);
                }
            }
        }
        spaces
    }

    /// Whether the given subspaces are closed under every square in the window.
    pub fn is_sq_stable(&self, spaces: &[Subspace]) -> bool {
        (0..=self.top).all(|d| {
            (1..=d.min(self.top - d)).all(|k| {
                spaces[d]
                    .basis()
                    .iter()
                    .all(|v| spaces[d + k].contains(&self.sq(k, d, v)))
            })
        })
    }

    /// All of `M^d` as a subspace.
    pub fn full_spaces(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&n| Subspace::full(n)).collect()
    }

    pub fn zero_spaces(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&n| Subspace::zero(n)).collect()
    }
}

/// An Sq-equivariant degree-0 map, stored degreewise through `min(top)`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Arc<RealizedModule>,
    target: Arc<RealizedModule>,
    maps: Vec<LinMap>,
    cert: usize,
}

impl ModuleMap {
    pub fn new(
        source: Arc<RealizedModule>,
        target: Arc<RealizedModule>,
        maps: Vec<LinMap>,
        cert: usize,
    ) -> Self {
        let top = source.top().min(target.top());
        assert!(maps.len() > top, "need a matrix in every degree through {top}");
        let maps = maps.into_iter().take(top + 1).collect::<Vec<_>>();
        for (d, m) in maps.iter().enumerate() {
            assert_eq!((m.src_dim(), m.tgt_dim()), (source.dim(d), target.dim(d)), "degree {d}");
        }
        let cert = cert.min(source.cert()).min(target.cert()).min(top);
        ModuleMap {
            source,
            target,
            maps,
            cert,
        }
    }

    pub fn identity(m: &Arc<RealizedModule>) -> Self {
        let maps = (0..=m.top()).map(|d| LinMap::identity(m.dim(d))).collect();
        ModuleMap::new(Arc::clone(m), Arc::clone(m), maps, m.cert())
    }

    pub fn zero(source: &Arc<RealizedModule>, target: &Arc<RealizedModule>) -> Self {
        let top = source.top().min(target.top());
        let maps = (0..=top).map(|d| LinMap::zero(source.dim(d), target.dim(d))).collect();
        ModuleMap::new(Arc::clone(source), Arc::clone(target), maps, top)
    }

    pub fn source(&self) -> &Arc<RealizedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RealizedModule> {
        &self.target
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn cert(&self) -> usize {
        self.cert
    }

    pub fn matrix(&self, d: usize) -> &LinMap {
        &self.maps[d]
    }

    pub fn apply(&self, d: usize, v: &BitVec) -> BitVec {
        self.maps[d].apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let top = self.top().min(other.top());
        let maps = (0..=top).map(|d| self.maps[d].compose(&other.maps[d])).collect();
        ModuleMap::new(
            Arc::clone(&other.source),
            Arc::clone(&self.target),
            maps,
            self.cert.min(other.cert),
        )
    }

    /// Checks `f ∘ Sq^k = Sq^k ∘ f` through `cert`.
    pub fn is_equivariant(&self) -> bool {
        (0..=self.cert).all(|d| {
            (1..=d.min(self.cert - d)).all(|k| {
                let lhs = self.maps[d + k].compose(&self.source.sq_matrix(k, d));
                let rhs = self.target.sq_matrix(k, d).compose(&self.maps[d]);
                lhs == rhs
            })
        })
    }

    pub fn kernel_spaces(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self
            .maps
            .iter()
            .map(|m| Subspace::spanned_by(m.src_dim(), m.kernel()))
            .collect();
        out.extend((self.maps.len()..=self.source.top()).map(|d| Subspace::zero(self.source.dim(d))));
        out
    }

    pub fn image_spaces(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self.maps.iter().map(LinMap::image).collect();
        out.extend((self.maps.len()..=self.target.top()).map(|d| Subspace::zero(self.target.dim(d))));
        out
    }

    pub fn kernel(&self) -> (Arc<RealizedModule>, ModuleMap) {
        let src = Arc::new(self.source.restrict(self.top()).with_cert(self.cert));
        let spaces = self.kernel_spaces()[..=self.top()].to_vec();
        src.submodule(&spaces)
    }

    pub fn image(&self) -> (Arc<RealizedModule>, ModuleMap) {
        let tgt = Arc::new(self.target.restrict(self.top()).with_cert(self.cert));
        let spaces = self.image_spaces()[..=self.top()].to_vec();
        tgt.submodule(&spaces)
    }

    pub fn cokernel(&self) -> (Arc<RealizedModule>, ModuleMap) {
        let tgt = Arc::new(self.target.restrict(self.top()).with_cert(self.cert));
        let spaces = self.image_spaces()[..=self.top()].to_vec();
        tgt.quotient(&spaces)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.src_dim())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.tgt_dim())
    }
}

/// The pullback of `f: A -> Q` and `g: B -> Q`, with its two projections.
pub fn pullback(f: &ModuleMap, g: &ModuleMap) -> (Arc<RealizedModule>, ModuleMap, ModuleMap) {
    assert!(Arc::ptr_eq(f.target(), g.target()) || f.target() == g.target(), "common target");
    let (sum, pl, pr) = direct_sum(f.source(), g.source());
    let sum = Arc::new(sum);
    let top = f.top().min(g.top());
    let maps: Vec<LinMap> = (0..=top)
        .map(|d| {
            let a = f.source().dim(d);
            let cols = (0..sum.dim(d))
                .map(|i| {
                    if i < a {
                        f.matrix(d).column(i).clone()
                    } else {
                        g.matrix(d).column(i - a).clone()
                    }
                })
                .collect();
            LinMap::from_columns(f.target().dim(d), cols)
        })
        .collect();
    let sum_map = ModuleMap::new(Arc::clone(&sum), Arc::clone(f.target()), maps, f.cert().min(g.cert()));
    let (pb, inc) = sum_map.kernel();
    let pa = ModuleMap::new(
        Arc::clone(&sum),
        Arc::clone(f.source()),
        pl,
        sum.cert(),
    );
    let pbm = ModuleMap::new(
        Arc::clone(&sum),
        Arc::clone(g.source()),
        pr,
        sum.cert(),
    );
    (Arc::clone(&pb), pa.compose(&inc), pbm.compose(&inc))
}

#[cfg(test)]
mod tests;
