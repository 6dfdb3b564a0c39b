//! The adjunction between `𝒰ₙ/𝒰ₙ₋₁` and `Σ_n`-objects of `𝒰₀`:
//! `N ↦ (N ⊗ F(1)^{⊗n})^{Σ_n}` one way and `M ↦ T̄ⁿM` the other.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::gf2::{BitVec, LinMap, Subspace};
use crate::lannes::{is_in_Un, tbar_iter_full, EquivariantModule};
use crate::sym::{all_perms, subgroups, Perm};
use crate::umod::{present, realize_with_lifts, ModuleMap, PresentedModule, RealizedModule};

use super::{relative_spaces, Lifter, SymmetricObject};

/// A basis element `n_k ⊗ x_1^{a_1} ⊗ … ⊗ x_n^{a_n}` of `N ⊗ F(1)^{⊗n}`,
/// each `a_i` a power of two.
pub type CoBasis = (usize, usize, Vec<u32>);

/// `N ⊗ F(1)^{⊗n}` with its diagonal `Σ_n`-action and the fixed points.
#[derive(Clone, Debug)]
pub struct CoinducedModule {
    pub arity: usize,
    pub full: EquivariantModule,
    pub basis: Vec<Vec<CoBasis>>,
    index: Vec<HashMap<CoBasis, usize>>,
    pub fixed_spaces: Vec<Subspace>,
    pub fixed: Arc<RealizedModule>,
    pub inclusion: ModuleMap,
}

impl CoinducedModule {
    pub fn index_of(&self, d: usize, b: &CoBasis) -> Option<usize> {
        self.index[d].get(b).copied()
    }
}

/// Vectors of powers of two summing to `s`, lexicographically.
fn power_vectors(s: usize, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut p = 1usize;
    while p + (n - 1) <= s {
        for mut rest in power_vectors(s - p, n - 1) {
            rest.insert(0, p as u32);
            out.push(rest);
        }
        p *= 2;
    }
    out
}

/// `(N ⊗ F(1)^{⊗n})^{Σ_n}` through the window of `N`.
pub fn coinduce(nobj: &SymmetricObject) -> CoinducedModule {
    let n = nobj.arity();
    let nm = nobj.module();
    let top = nm.top();
    let basis: Vec<Vec<CoBasis>> = (0..=top)
        .map(|d| {
            let mut b = Vec::new();
            for e in 0..=d {
                for k in 0..nm.dim(e) {
                    for a in power_vectors(d - e, n) {
                        b.push((e, k, a));
                    }
                }
            }
            b
        })
        .collect();
    let index: Vec<HashMap<CoBasis, usize>> = basis
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let full = RealizedModule::build(top, nm.cert(), dims.clone(), |j, d, i| {
        let (e, k, a) = &basis[d][i];
        let mut out = BitVec::zeros(dims[d + j]);
        // Cartan: each factor x^{a_i} either stays or squares
        for mask in 0u32..(1 << n) {
            let t: usize = (0..n).filter(|s| mask >> s & 1 == 1).map(|s| a[s] as usize).sum();
            if t > j {
                continue;
            }
            let img = nm.sq(j - t, *e, &BitVec::unit(nm.dim(*e), *k));
            let a2: Vec<u32> = (0..n)
                .map(|s| if mask >> s & 1 == 1 { 2 * a[s] } else { a[s] })
                .collect();
            for q in img.iter_ones() {
                out.flip(index[d + j][&(e + j - t, q, a2.clone())]);
            }
        }
        out
    });
    let full = Arc::new(full);
    let group = all_perms(n);
    let action: Vec<Vec<LinMap>> = group
        .iter()
        .map(|pi| {
            let rn = &nobj.0.action[nobj.0.group.iter().position(|x| x == pi).unwrap()];
            (0..=top)
                .map(|d| {
                    let cols = basis[d]
                        .iter()
                        .map(|(e, k, a)| {
                            let pa = pi.permute(a);
                            let img = rn[*e].column(*k);
                            BitVec::from_indices(
                                dims[d],
                                img.iter_ones().map(|q| index[d][&(*e, q, pa.clone())]),
                            )
                        })
                        .collect();
                    LinMap::from_columns(dims[d], cols)
                })
                .collect()
        })
        .collect();
    let full = EquivariantModule {
        module: Arc::clone(&full),
        arity: n,
        group,
        action,
    };
    let gens: Vec<Perm> = if n >= 2 {
        vec![Perm::transposition(n, 0, 1), Perm::long_cycle(n)]
    } else {
        Vec::new()
    };
    let fixed_spaces: Vec<Subspace> = (0..=top)
        .map(|d| {
            let mut s = Subspace::full(dims[d]);
            for g in &gens {
                let m = full.matrix(g, d).add(&LinMap::identity(dims[d]));
                s = s.intersect(&Subspace::spanned_by(dims[d], m.kernel()));
            }
            s
        })
        .collect();
    let (fixed, inclusion) = full.module.submodule(&fixed_spaces);
    CoinducedModule {
        arity: n,
        full,
        basis,
        index,
        fixed_spaces,
        fixed,
        inclusion,
    }
}

/// The counit `T̄ⁿ(N ⊗ F(1)^{⊗n})^{Σ_n} -> N`, adjoint to the inclusion of the
/// fixed points into `N ⊗ F(1)^{⊗n} ⊆ N ⊗ H̄^{⊗n}`.
pub struct Counit {
    pub source: EquivariantModule,
    pub map: Vec<LinMap>,
    /// Whether every relation of the presented iterate maps to zero.
    pub well_defined: bool,
}

pub fn counit(co: &CoinducedModule, nobj: &SymmetricObject, out_top: usize) -> Result<Counit> {
    let n = co.arity;
    let nm = nobj.module();
    let lifter = Lifter::new(&co.fixed, co.fixed.cert())?;
    let p = &lifter.presentation;
    let (e, r, layout) = tbar_iter_full(p, n, out_top);
    // φ(e_{i,a}) = the x^a coefficient of generator i, an element of N
    let gen_value = |g: usize| -> (usize, BitVec) {
        let (i, a) = &layout.keys()[g];
        let deg = p.gens()[*i] - a.iter().map(|&x| x as usize).sum::<usize>();
        let full_vec = co.inclusion.apply(p.gens()[*i], &lifter.values[*i]);
        let mut v = BitVec::zeros(nm.dim(deg));
        for idx in full_vec.iter_ones() {
            let (ee, k, aa) = &co.basis[p.gens()[*i]][idx];
            if aa == a {
                debug_assert_eq!(*ee, deg);
                v.flip(*k);
            }
        }
        (deg, v)
    };
    let values: Vec<(usize, BitVec)> = (0..layout.gens().len()).map(gen_value).collect();
    let eval = |d: usize, x: &crate::umod::FreeElement| -> BitVec {
        let mut out = BitVec::zeros(nm.dim(d));
        for (mono, g) in x.terms() {
            let (deg, v) = &values[*g];
            out.xor_assign(&nm.act_monomial(mono, *deg, v));
        }
        out
    };
    let map = (0..=out_top)
        .map(|d| {
            let cols = (0..r.module.dim(d)).map(|j| eval(d, &r.lift(d, j))).collect();
            LinMap::from_columns(nm.dim(d), cols)
        })
        .collect();
    let (tp, _) = crate::lannes::tbar_iter_presentation(p, n, Some(out_top));
    let well_defined = (0..tp.relations().len()).all(|ri| {
        let d = tp.relation_degree(ri);
        d > out_top || eval(d, &tp.relations()[ri]).is_zero()
    });
    Ok(Counit {
        source: e,
        map,
        well_defined,
    })
}

/// The unit `M -> (T̄ⁿM ⊗ F(1)^{⊗n})^{Σ_n}` for `M ∈ 𝒰ₙ`.
pub struct UnitIntoCoinduced {
    pub coinduced: CoinducedModule,
    /// `η` into `T̄ⁿM ⊗ F(1)^{⊗n}`; `None` if some component leaves `F(1)^{⊗n}`.
    pub map: Option<ModuleMap>,
    pub lands_in_fixed: bool,
}

pub fn unit_into_coinduced(p: &PresentedModule, n: usize, top: usize) -> UnitIntoCoinduced {
    let src = realize_with_lifts(p, top);
    let (tm, rt, layout) = tbar_iter_full(p, n, top);
    let nobj = SymmetricObject::new(tm);
    let co = coinduce(&nobj);
    let full = &co.full.module;
    let mut ok = true;
    let maps: Vec<LinMap> = (0..=top)
        .map(|d| {
            let cols = (0..src.module.dim(d))
                .map(|j| {
                    let mut v = BitVec::zeros(full.dim(d));
                    for (b, y) in layout.apply_unit(&src.lift(d, j)) {
                        let s: usize = b.iter().map(|&x| x as usize).sum();
                        let py = rt.project(d - s, &y);
                        if py.is_zero() {
                            continue;
                        }
                        if !b.iter().all(|x| x.is_power_of_two()) {
                            ok = false;
                            continue;
                        }
                        for k in py.iter_ones() {
                            v.flip(co.index_of(d, &(d - s, k, b.clone())).unwrap());
                        }
                    }
                    v
                })
                .collect();
            LinMap::from_columns(full.dim(d), cols)
        })
        .collect();
    if !ok {
        return UnitIntoCoinduced {
            coinduced: co,
            map: None,
            lands_in_fixed: false,
        };
    }
    let map = ModuleMap::new(Arc::clone(&src.module), Arc::clone(full), maps, top);
    let lands = map
        .image_spaces()
        .iter()
        .zip(&co.fixed_spaces)
        .all(|(i, f)| i.is_subspace_of(f));
    UnitIntoCoinduced {
        coinduced: co,
        map: Some(map),
        lands_in_fixed: lands,
    }
}

/// Outcome of the counit check for `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub well_defined: bool,
    pub equivariant: bool,
    /// Bijective in every degree through the output window.
    pub iso: bool,
    /// `H`-fixed dimensions agree for every subgroup `H` and degree.
    pub fixed_dims_agree: bool,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.equivariant && self.iso && self.fixed_dims_agree
    }
}

/// Checks that `T̄ⁿ` of the coinduced module recovers `N` through `out_top`.
pub fn verify_quotient_equivalence(nobj: &SymmetricObject, out_top: usize) -> Result<EquivalenceReport> {
    let co = coinduce(nobj);
    let c = counit(&co, nobj, out_top)?;
    let nm = nobj.module();
    let src = &c.source;
    let iso = (0..=out_top).all(|d| {
        let m = &c.map[d];
        src.module.dim(d) == nm.dim(d) && m.rank() == nm.dim(d)
    });
    let equivariant = src.group.iter().all(|g| {
        (0..=out_top).all(|d| {
            c.map[d].compose(src.matrix(g, d)) == nobj.0.matrix(g, d).compose(&c.map[d])
        })
    });
    let fixed_dims_agree = subgroups(nobj.arity()).iter().all(|h| {
        (0..=out_top).all(|d| src.fixed_dim(h, d) == nobj.fixed_dim(h, d))
    });
    Ok(EquivalenceReport {
        well_defined: c.well_defined,
        equivariant,
        iso,
        fixed_dims_agree,
    })
}

/// Kernel and cokernel of the unit of `M ∈ 𝒰ₙ`, tested for membership in `𝒰ₙ₋₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitReport {
    pub lands_in_fixed: bool,
    pub kernel_dims: Vec<usize>,
    pub cokernel_dims: Vec<usize>,
    pub kernel_in_lower: bool,
    pub cokernel_in_lower: bool,
}

impl UnitReport {
    pub fn holds(&self) -> bool {
        self.lands_in_fixed && self.kernel_in_lower && self.cokernel_in_lower
    }
}

pub fn verify_unit(p: &PresentedModule, n: usize, top: usize) -> Result<UnitReport> {
    assert!(n >= 1, "the unit check needs n >= 1");
    let u = unit_into_coinduced(p, n, top);
    let Some(map) = u.map else {
        return Ok(UnitReport {
            lands_in_fixed: false,
            kernel_dims: Vec::new(),
            cokernel_dims: Vec::new(),
            kernel_in_lower: false,
            cokernel_in_lower: false,
        });
    };
    let co = &u.coinduced;
    let (kernel, _) = map.kernel();
    let image = map.image_spaces();
    let rel = relative_spaces(&co.fixed_spaces, &image);
    let (coker, _) = co.fixed.quotient(&rel);
    let kp = present(&kernel, kernel.cert())?;
    let cp = present(&coker, coker.cert())?;
    Ok(UnitReport {
        lands_in_fixed: u.lands_in_fixed,
        kernel_dims: kernel.dims().to_vec(),
        cokernel_dims: coker.dims().to_vec(),
        kernel_in_lower: is_in_Un(&kp, n - 1),
        cokernel_in_lower: is_in_Un(&cp, n - 1),
    })
}
