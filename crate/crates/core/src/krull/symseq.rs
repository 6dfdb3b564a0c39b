//! Symmetric sequences of locally finite modules: induction products and the
//! wreath-induced sequences `Sh^m`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::gf2::{BitVec, LinMap};
use crate::lannes::EquivariantModule;
use crate::sym::{all_perms, Perm, Subgroup};
use crate::umod::{direct_sum, tensor, zero_module, RealizedModule};

use super::check_locally_finite;

/// A module with a `Σ_n`-action, meant to be locally finite.
#[derive(Clone, Debug)]
pub struct SymmetricObject(pub EquivariantModule);

impl SymmetricObject {
    pub fn new(e: EquivariantModule) -> Self {
        SymmetricObject(e)
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn module(&self) -> &Arc<RealizedModule> {
        &self.0.module
    }

    pub fn dims(&self) -> &[usize] {
        self.0.module.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.0.module.total_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.module.is_zero()
    }

    pub fn fixed_dim(&self, h: &Subgroup, d: usize) -> usize {
        self.0.fixed_dim(h, d)
    }

    /// Action validity and local finiteness within the window.
    pub fn validate(&self) -> Result<()> {
        self.0.validate().map_err(|reason| crate::Error::Certification { degree: 0, reason })?;
        check_locally_finite(&self.0.module)
    }
}

/// `N` with the trivial `Σ_n`-action.
pub fn trivial_object(module: RealizedModule, arity: usize) -> SymmetricObject {
    SymmetricObject(EquivariantModule::trivial(Arc::new(module), arity))
}

/// The zero object of arity `n`.
pub fn zero_object(arity: usize, top: usize) -> SymmetricObject {
    trivial_object(zero_module(top), arity)
}

/// `GF(2)[Σ_n]` in degree 0.
pub fn regular_object(arity: usize, top: usize) -> SymmetricObject {
    let one = trivial_object(unit_module(top), 0);
    let h = vec![Perm::identity(arity)];
    SymmetricObject(induce(arity, &h, &one.0.module, |_| one.0.action[0].clone()))
}

/// `ℤ/2` in degree 0.
pub fn unit_module(top: usize) -> RealizedModule {
    let mut dims = vec![0; top + 1];
    dims[0] = 1;
    RealizedModule::build(top, top, dims, |_, _, _| unreachable!())
}

/// A family `(M_0, …, M_N)` with `M_n` of arity `n`.
#[derive(Clone, Debug)]
pub struct SymmetricSequence {
    objects: Vec<SymmetricObject>,
}

impl SymmetricSequence {
    pub fn new(objects: Vec<SymmetricObject>) -> Self {
        for (n, o) in objects.iter().enumerate() {
            assert_eq!(o.arity(), n, "object {n} has the wrong arity");
        }
        SymmetricSequence { objects }
    }

    pub fn max_arity(&self) -> usize {
        self.objects.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> &SymmetricObject {
        &self.objects[n]
    }

    pub fn objects(&self) -> &[SymmetricObject] {
        &self.objects
    }

    /// Every arity tensored with a module carrying the trivial action.
    pub fn tensor_module(&self, m: &RealizedModule) -> SymmetricSequence {
        let objects = self
            .objects
            .iter()
            .map(|o| {
                let ids: Vec<LinMap> = m.dims().iter().map(|&n| LinMap::identity(n)).collect();
                let e = &o.0;
                let module = Arc::new(tensor(m, &e.module));
                let action = e
                    .action
                    .iter()
                    .map(|a| kron_degreewise(m, &e.module, &ids, a))
                    .collect();
                SymmetricObject(EquivariantModule {
                    module,
                    arity: e.arity,
                    group: e.group.clone(),
                    action,
                })
            })
            .collect();
        SymmetricSequence { objects }
    }
}

/// Offsets of the `A^a ⊗ B^{d-a}` blocks in the basis of `A ⊗ B`.
fn tensor_offsets(a: &RealizedModule, b: &RealizedModule, top: usize) -> Vec<Vec<usize>> {
    (0..=top)
        .map(|d| {
            let mut acc = 0;
            (0..=d)
                .map(|x| {
                    let o = acc;
                    acc += a.dim(x) * b.dim(d - x);
                    o
                })
                .collect()
        })
        .collect()
}

/// `f ⊗ g` on `A ⊗ B` for degreewise maps `f`, `g`.
pub fn kron_degreewise(a: &RealizedModule, b: &RealizedModule, f: &[LinMap], g: &[LinMap]) -> Vec<LinMap> {
    let top = a.top().min(b.top());
    let off = tensor_offsets(a, b, top);
    (0..=top)
        .map(|d| {
            let dim: usize = (0..=d).map(|x| a.dim(x) * b.dim(d - x)).sum();
            let mut cols = Vec::with_capacity(dim);
            for x in 0..=d {
                let y = d - x;
                for i in 0..a.dim(x) {
                    for j in 0..b.dim(y) {
                        let fi = f[x].column(i);
                        let gj = g[y].column(j);
                        let mut v = BitVec::zeros(dim);
                        for p in fi.iter_ones() {
                            for q in gj.iter_ones() {
                                v.flip(off[d][x] + p * b.dim(y) + q);
                            }
                        }
                        cols.push(v);
                    }
                }
            }
            LinMap::from_columns(dim, cols)
        })
        .collect()
}

/// `Ind_H^{Σ_n} W` for a subgroup `H` (all elements listed) acting on `W`
/// through `rho`. The basis is one copy of `W` per left coset, cosets
/// ordered by their first representative in lexicographic order.
pub fn induce(
    n: usize,
    h: &[Perm],
    w: &RealizedModule,
    rho: impl Fn(&Perm) -> Vec<LinMap>,
) -> EquivariantModule {
    let group = all_perms(n);
    let mut reps: Vec<Perm> = Vec::new();
    let mut coset_of: HashMap<Perm, usize> = HashMap::new();
    for g in &group {
        if coset_of.contains_key(g) {
            continue;
        }
        for x in h {
            coset_of.insert(g.compose(x), reps.len());
        }
        reps.push(g.clone());
    }
    let c = reps.len();
    let top = w.top();
    let dims: Vec<usize> = (0..=top).map(|d| c * w.dim(d)).collect();
    let module = RealizedModule::build(top, w.cert(), dims, |k, d, i| {
        let (blk, j) = (i / w.dim(d), i % w.dim(d));
        let img = w.sq(k, d, &BitVec::unit(w.dim(d), j));
        let n2 = w.dim(d + k);
        BitVec::from_indices(c * n2, img.iter_ones().map(|q| blk * n2 + q))
    });
    let rho_cache: HashMap<Perm, Vec<LinMap>> = h.iter().map(|x| (x.clone(), rho(x))).collect();
    let action = group
        .iter()
        .map(|x| {
            (0..=top)
                .map(|d| {
                    let nd = w.dim(d);
                    let mut cols = Vec::with_capacity(c * nd);
                    for r in &reps {
                        let xr = x.compose(r);
                        let j = coset_of[&xr];
                        let hh = reps[j].inverse().compose(&xr);
                        let m = &rho_cache[&hh][d];
                        for i in 0..nd {
                            let img = m.column(i);
                            cols.push(BitVec::from_indices(c * nd, img.iter_ones().map(|q| j * nd + q)));
                        }
                    }
                    LinMap::from_columns(c * nd, cols)
                })
                .collect()
        })
        .collect();
    EquivariantModule {
        module: Arc::new(module),
        arity: n,
        group,
        action,
    }
}

/// Direct sum of objects of the same arity.
fn sum_objects(xs: Vec<EquivariantModule>, arity: usize, top: usize) -> EquivariantModule {
    let group = all_perms(arity);
    let mut module = zero_module(top);
    let mut action: Vec<Vec<LinMap>> = group
        .iter()
        .map(|_| (0..=top).map(|_| LinMap::zero(0, 0)).collect())
        .collect();
    for x in xs {
        let (sum, _, _) = direct_sum(&module, &x.module);
        for (g, acts) in action.iter_mut().enumerate() {
            for (d, a) in acts.iter_mut().enumerate() {
                *a = block_diag(a, &x.action[g][d]);
            }
        }
        module = sum;
    }
    EquivariantModule {
        module: Arc::new(module),
        arity,
        group,
        action,
    }
}

fn block_diag(a: &LinMap, b: &LinMap) -> LinMap {
    let n = a.tgt_dim() + b.tgt_dim();
    let cols = a
        .columns()
        .iter()
        .map(|c| c.concat(&BitVec::zeros(b.tgt_dim())))
        .chain(b.columns().iter().map(|c| BitVec::zeros(a.tgt_dim()).concat(c)))
        .collect();
    LinMap::from_columns(n, cols)
}

/// `A_l ⊗ B_m` as a `Σ_l × Σ_m ⊆ Σ_{l+m}` representation, returned as the
/// tensor module and the list of subgroup elements with their matrices.
pub fn tensor_objects(a: &SymmetricObject, b: &SymmetricObject) -> (RealizedModule, Vec<(Perm, Vec<LinMap>)>) {
    let (l, m) = (a.arity(), b.arity());
    let module = tensor(a.module(), b.module());
    let mut elems = Vec::new();
    for s in all_perms(l) {
        for t in all_perms(m) {
            let mut img: Vec<usize> = s.images().to_vec();
            img.extend(t.images().iter().map(|&x| x + l));
            let mats = kron_degreewise(
                a.module(),
                b.module(),
                &a.0.action[a.0.group.iter().position(|x| *x == s).unwrap()],
                &b.0.action[b.0.group.iter().position(|x| *x == t).unwrap()],
            );
            elems.push((Perm::new(img), mats));
        }
    }
    (module, elems)
}

/// `(A ⊠ B)_n = ⊕_{l+m=n} Ind_{Σ_l×Σ_m}^{Σ_n}(A_l ⊗ B_m)` through `max_arity`.
pub fn boxtimes(a: &SymmetricSequence, b: &SymmetricSequence, max_arity: usize) -> SymmetricSequence {
    let top = a.get(0).module().top().min(b.get(0).module().top());
    let objects = (0..=max_arity)
        .map(|n| {
            let parts = (0..=n)
                .filter(|&l| l <= a.max_arity() && n - l <= b.max_arity())
                .map(|l| {
                    let (w, elems) = tensor_objects(a.get(l), b.get(n - l));
                    let h: Vec<Perm> = elems.iter().map(|(p, _)| p.clone()).collect();
                    let table: HashMap<Perm, Vec<LinMap>> = elems.into_iter().collect();
                    induce(n, &h, &w, |x| table[x].clone())
                })
                .collect();
            SymmetricObject(sum_objects(parts, n, top))
        })
        .collect();
    SymmetricSequence { objects }
}

/// Basis of `N^{⊗k}` (left-nested tensor powers) as tuples of `(degree, index)`.
fn tensor_power_basis(n: &RealizedModule, k: usize, top: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    let mut cur: Vec<Vec<Vec<(usize, usize)>>> = (0..=top)
        .map(|d| if d == 0 { vec![Vec::new()] } else { Vec::new() })
        .collect();
    for _ in 0..k {
        cur = (0..=top)
            .map(|d| {
                let mut out = Vec::new();
                for a in 0..=d {
                    for t in &cur[a] {
                        for j in 0..n.dim(d - a) {
                            let mut t2 = t.clone();
                            t2.push((d - a, j));
                            out.push(t2);
                        }
                    }
                }
                out
            })
            .collect();
    }
    cur
}

/// `N^{⊗k}` for `k >= 1`.
fn tensor_power(n: &RealizedModule, k: usize) -> RealizedModule {
    (1..k).fold(n.clone(), |acc, _| tensor(&acc, n))
}

/// `Sh^m_n(N) = Ind_{Σ_k≀Σ_m}^{Σ_{km}} N^{⊗k}` for `n = km`, else 0.
pub fn sh_m(nobj: &SymmetricObject, max_arity: usize) -> SymmetricSequence {
    let m = nobj.arity();
    let nmod = nobj.module();
    let top = nmod.top();
    let objects = (0..=max_arity)
        .map(|n| {
            if m == 0 {
                return if n == 0 { nobj.clone() } else { zero_object(n, top) };
            }
            if n == 0 {
                return trivial_object(unit_module(top), 0);
            }
            if n % m != 0 {
                return zero_object(n, top);
            }
            let k = n / m;
            let w = tensor_power(nmod, k);
            let basis = tensor_power_basis(nmod, k, top);
            let index: Vec<HashMap<Vec<(usize, usize)>, usize>> = basis
                .iter()
                .map(|b| b.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
                .collect();
            // elements of Σ_k ≀ Σ_m: block permutation after blockwise σ_f
            let sm = all_perms(m);
            let mut h = Vec::new();
            let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..k {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        (0..sm.len()).map(move |s| {
                            let mut t2 = t.clone();
                            t2.push(s);
                            t2
                        })
                    })
                    .collect();
            }
            for pi in all_perms(k) {
                for t in &tuples {
                    let mut img = vec![0; n];
                    for f in 0..k {
                        for j in 0..m {
                            img[f * m + j] = pi.image(f) * m + sm[t[f]].image(j);
                        }
                    }
                    h.push((Perm::new(img), pi.clone(), t.clone()));
                }
            }
            let rho_n: Vec<&Vec<LinMap>> = sm
                .iter()
                .map(|s| &nobj.0.action[nobj.0.group.iter().position(|x| x == s).unwrap()])
                .collect();
            let table: HashMap<Perm, Vec<LinMap>> = h
                .iter()
                .map(|(g, pi, t)| {
                    let mats = (0..=top)
                        .map(|d| {
                            let dim = basis[d].len();
                            let cols = basis[d]
                                .iter()
                                .map(|tuple| {
                                    // expand ⊗_f ρ(σ_f) x_f, then move factor f to π(f)
                                    let mut terms: Vec<Vec<(usize, usize)>> = vec![vec![(0, 0); k]];
                                    for (f, &(df, i)) in tuple.iter().enumerate() {
                                        let img = rho_n[t[f]][df].column(i);
                                        terms = terms
                                            .into_iter()
                                            .flat_map(|tt| {
                                                img.iter_ones().map(move |q| {
                                                    let mut t2 = tt.clone();
                                                    t2[pi.image(f)] = (df, q);
                                                    t2
                                                })
                                            })
                                            .collect();
                                    }
                                    let mut v = BitVec::zeros(dim);
                                    for tt in terms {
                                        v.flip(index[d][&tt]);
                                    }
                                    v
                                })
                                .collect();
                            LinMap::from_columns(dim, cols)
                        })
                        .collect();
                    (g.clone(), mats)
                })
                .collect();
            let hs: Vec<Perm> = h.into_iter().map(|(g, _, _)| g).collect();
            SymmetricObject(induce(n, &hs, &w, |x| table[x].clone()))
        })
        .collect();
    SymmetricSequence { objects }
}
