use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, LinMap};

use super::{ModuleMap, RealizedModule};

pub fn zero_module(top: usize) -> RealizedModule {
    RealizedModule::build(top, top, vec![0; top + 1], |_, _, _| unreachable!())
}

/// `Σ^s M`, keeping the window; the top `s` degrees of `M` fall off.
pub fn suspend(m: &RealizedModule, s: usize) -> RealizedModule {
    let top = m.top();
    let dims = (0..=top).map(|d| if d >= s { m.dim(d - s) } else { 0 }).collect();
    let out = RealizedModule::build(top, (m.cert() + s).min(top), dims, |k, d, i| {
        let src = d - s;
        if k > src {
            BitVec::zeros(m.dim(src + k))
        } else {
            m.sq(k, src, &BitVec::unit(m.dim(src), i))
        }
    });
    match m.labels() {
        Some(l) => {
            let labels = (0..=top)
                .map(|d| {
                    if d >= s {
                        l[d - s].iter().map(|x| format!("σ{s}({x})")).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            out.with_labels(labels)
        }
        None => out,
    }
}

/// `Σ^{-1} N`; fails if `N` has a class in degree 0 or if the result would
/// violate instability.
pub fn desuspend(n: &RealizedModule, which: &'static str) -> Result<RealizedModule> {
    if n.dim(0) != 0 {
        return Err(Error::Desuspension { which });
    }
    let top = n.top().saturating_sub(1);
    for d in 0..top {
        let e = d + 1;
        if 2 * e <= n.top() && !n.sq_matrix(e, e).is_zero() {
            return Err(Error::Desuspension { which });
        }
    }
    let dims = (0..=top).map(|d| n.dim(d + 1)).collect();
    let out = RealizedModule::build(top, n.cert().saturating_sub(1), dims, |k, d, i| {
        n.sq(k, d + 1, &BitVec::unit(n.dim(d + 1), i))
    });
    Ok(match n.labels() {
        Some(l) => out.with_labels((0..=top).map(|d| l[d + 1].clone()).collect()),
        None => out,
    })
}

/// The Frobenius `Φ M`: `φ(x)` in degree `2|x|`, `Sq^{2k} φ(x) = φ(Sq^k x)`.
pub fn phi(m: &RealizedModule) -> RealizedModule {
    let top = m.top();
    let dims = (0..=top).map(|d| if d % 2 == 0 { m.dim(d / 2) } else { 0 }).collect();
    let out = RealizedModule::build(top, (2 * m.cert()).min(top), dims, |k, d, i| {
        let tgt = d + k;
        let n = d / 2;
        if k % 2 == 1 {
            BitVec::zeros(if tgt % 2 == 0 { m.dim(tgt / 2) } else { 0 })
        } else {
            m.sq(k / 2, n, &BitVec::unit(m.dim(n), i))
        }
    });
    match m.labels() {
        Some(l) => {
            let labels = (0..=top)
                .map(|d| {
                    if d % 2 == 0 {
                        l[d / 2].iter().map(|x| format!("φ({x})")).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            out.with_labels(labels)
        }
        None => out,
    }
}

/// `λ: Φ M -> M`, `φ(x) ↦ P_0 x`.
pub fn lambda_map(m: &Arc<RealizedModule>) -> ModuleMap {
    let src = Arc::new(phi(m));
    let maps = (0..=m.top())
        .map(|d| {
            if d % 2 == 0 {
                m.sq_matrix(d / 2, d / 2)
            } else {
                LinMap::zero(0, m.dim(d))
            }
        })
        .collect();
    ModuleMap::new(src, Arc::clone(m), maps, m.cert())
}

#[derive(Clone, Debug)]
pub struct Loops {
    pub omega: RealizedModule,
    pub omega1: RealizedModule,
}

/// `Ω M` and `Ω^1 M` from `0 -> ΣΩ^1 M -> ΦM -> M -> ΣΩM -> 0`.
pub fn loops(m: &Arc<RealizedModule>) -> Result<Loops> {
    let lam = lambda_map(m);
    let (coker, _) = lam.cokernel();
    let (ker, _) = lam.kernel();
    Ok(Loops {
        omega: desuspend(&coker, "cokernel of λ")?,
        omega1: desuspend(&ker, "kernel of λ")?,
    })
}

struct TensorIndex {
    /// `offsets[d][a]`: start of the `M^a ⊗ N^{d-a}` block in degree `d`.
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

fn tensor_index(m: &RealizedModule, n: &RealizedModule, top: usize) -> TensorIndex {
    let mut offsets = Vec::with_capacity(top + 1);
    let mut dims = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut off = Vec::with_capacity(d + 1);
        let mut acc = 0;
        for a in 0..=d {
            off.push(acc);
            acc += m.dim(a) * n.dim(d - a);
        }
        offsets.push(off);
        dims.push(acc);
    }
    TensorIndex { offsets, dims }
}

/// `M ⊗ N` with the Cartan formula; basis `x_i ⊗ y_j` blocked by the degree of `x`.
pub fn tensor(m: &RealizedModule, n: &RealizedModule) -> RealizedModule {
    let top = m.top().min(n.top());
    let idx = tensor_index(m, n, top);
    let out = RealizedModule::build(top, m.cert().min(n.cert()), idx.dims.clone(), |k, d, pos| {
        // locate the block of `pos`
        let a = (0..=d).rev().find(|&a| idx.offsets[d][a] <= pos && m.dim(a) * n.dim(d - a) > 0).unwrap();
        let r = pos - idx.offsets[d][a];
        let b = d - a;
        let (i, j) = (r / n.dim(b), r % n.dim(b));
        let x = BitVec::unit(m.dim(a), i);
        let y = BitVec::unit(n.dim(b), j);
        let mut out = BitVec::zeros(idx.dims[d + k]);
        for t in 0..=k.min(a) {
            if k - t > b {
                continue;
            }
            let sx = m.sq(t, a, &x);
            if sx.is_zero() {
                continue;
            }
            let sy = n.sq(k - t, b, &y);
            if sy.is_zero() {
                continue;
            }
            let na = a + t;
            let nb = b + k - t;
            let base = idx.offsets[d + k][na];
            for p in sx.iter_ones() {
                for q in sy.iter_ones() {
                    out.flip(base + p * n.dim(nb) + q);
                }
            }
        }
        out
    });
    match (m.labels(), n.labels()) {
        (Some(lm), Some(ln)) => {
            let labels = (0..=top)
                .map(|d| {
                    let mut v = Vec::with_capacity(idx.dims[d]);
                    for a in 0..=d {
                        for x in &lm[a] {
                            for y in &ln[d - a] {
                                v.push(format!("{x}⊗{y}"));
                            }
                        }
                    }
                    v
                })
                .collect();
            out.with_labels(labels)
        }
        _ => out,
    }
}

/// The symmetry isomorphism `M ⊗ N -> N ⊗ M`.
pub fn tensor_swap(m: &RealizedModule, n: &RealizedModule) -> ModuleMap {
    let mn = Arc::new(tensor(m, n));
    let nm = Arc::new(tensor(n, m));
    let top = mn.top();
    let im = tensor_index(m, n, top);
    let inn = tensor_index(n, m, top);
    let maps = (0..=top)
        .map(|d| {
            let mut cols = Vec::with_capacity(im.dims[d]);
            for a in 0..=d {
                let b = d - a;
                for i in 0..m.dim(a) {
                    for j in 0..n.dim(b) {
                        cols.push(BitVec::unit(inn.dims[d], inn.offsets[d][b] + j * m.dim(a) + i));
                    }
                }
            }
            LinMap::from_columns(inn.dims[d], cols)
        })
        .collect();
    ModuleMap::new(mn, nm, maps, top)
}

/// `M / M^{>r}`.
pub fn truncate_above(m: &RealizedModule, r: usize) -> RealizedModule {
    let top = m.top();
    let dims = (0..=top).map(|d| if d <= r { m.dim(d) } else { 0 }).collect();
    let cert = if r <= m.cert() { top } else { m.cert() };
    let out = RealizedModule::build(top, cert, dims, |k, d, i| {
        if d + k <= r {
            m.sq(k, d, &BitVec::unit(m.dim(d), i))
        } else {
            BitVec::zeros(0)
        }
    });
    match m.labels() {
        Some(l) => out.with_labels(
            (0..=top)
                .map(|d| if d <= r { l[d].clone() } else { Vec::new() })
                .collect(),
        ),
        None => out,
    }
}

/// `A ⊕ B` (basis of `A` first in every degree) with the two projections.
pub fn direct_sum(
    a: &RealizedModule,
    b: &RealizedModule,
) -> (RealizedModule, Vec<LinMap>, Vec<LinMap>) {
    let top = a.top().min(b.top());
    let dims: Vec<usize> = (0..=top).map(|d| a.dim(d) + b.dim(d)).collect();
    let out = RealizedModule::build(top, a.cert().min(b.cert()), dims.clone(), |k, d, i| {
        if i < a.dim(d) {
            a.sq(k, d, &BitVec::unit(a.dim(d), i))
                .concat(&BitVec::zeros(b.dim(d + k)))
        } else {
            BitVec::zeros(a.dim(d + k)).concat(&b.sq(k, d, &BitVec::unit(b.dim(d), i - a.dim(d))))
        }
    });
    let out = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => out.with_labels(
            (0..=top)
                .map(|d| la[d].iter().chain(&lb[d]).cloned().collect())
                .collect(),
        ),
        _ => out,
    };
    let pa = (0..=top)
        .map(|d| {
            LinMap::from_columns(
                a.dim(d),
                (0..dims[d])
                    .map(|i| if i < a.dim(d) { BitVec::unit(a.dim(d), i) } else { BitVec::zeros(a.dim(d)) })
                    .collect(),
            )
        })
        .collect();
    let pb = (0..=top)
        .map(|d| {
            LinMap::from_columns(
                b.dim(d),
                (0..dims[d])
                    .map(|i| {
                        if i < a.dim(d) {
                            BitVec::zeros(b.dim(d))
                        } else {
                            BitVec::unit(b.dim(d), i - a.dim(d))
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    (out, pa, pb)
}
