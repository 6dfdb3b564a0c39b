use std::sync::Arc;

use super::{dims_of, support, SuiteReport};
use crate::corpus::{point, pullback_module, pullback_with_legs};
use crate::gf2::{BitVec, LinMap, Subspace};
use crate::kalg::poly_algebra;
use crate::krull::{k_n_spaces, k_n_spaces_capped, kbar_n_capped, nil_1, nil_1_within, r_0};
use crate::lannes::krull_level;
use crate::umod::{
    free, phi, present, present_with_values, realize_with_lifts, suspend, tensor, truncate_above, ModuleMap,
    PresentedModule, RealizedModule,
};
use crate::Result;

pub(super) fn truncation(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("truncation", degree);
    let d = degree;
    let k0 = k_n_spaces(&PresentedModule::free(1), 0, d).map(|(_, k)| dims_of(&k));
    r.check_eq("k_0 F(1) = 0", k0, vec![0; d + 1]);
    let bottom = truncate_above(&free(1, d), 1);
    let mut want = vec![0; d + 1];
    want[1] = 1;
    r.check_eq("F(1)/F(1)^{>1} = Σℤ/2", Ok(bottom.dims().to_vec()), want.clone());
    let k0 = present(&bottom, d).and_then(|p| k_n_spaces(&p, 0, d)).map(|(_, k)| dims_of(&k));
    if let Ok(k) = &k0 {
        r.table("k_0(F(1)/F(1)^{>1})", k.clone());
    }
    r.check_eq("k_0(F(1)/F(1)^{>1}) = Σℤ/2", k0, want);
    r
}

pub(super) fn pullback(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("pullback", degree);
    let d = degree;
    let m = pullback_module(4 * d);
    let p = match present(&m, 4) {
        Ok(p) => p,
        Err(e) => {
            r.check("M is presented by its degree-4 class", Err(e));
            return r;
        }
    };
    r.check_eq("M is cyclic on a degree-4 class", Ok(p.gens().to_vec()), vec![4]);
    let powers = |from: usize, top: usize| -> Vec<usize> {
        (0..).map(|i| from << i).take_while(|&e| e <= top).collect()
    };
    // R_0 k_1 M = k_1M / nil_1 k_1M
    let outcome = k_n_spaces_capped(&p, 1, d, 2 * d).map(|(_, k1)| {
        let nil = nil_1_within(&m, &k1);
        (0..=d).map(|e| k1[e].dim() - nil.spaces[e].dim()).collect::<Vec<_>>()
    });
    let r0k1 = outcome.clone().unwrap_or_default();
    r.table("R_0 k_1 M", r0k1.clone());
    r.check_eq("R_0 k_1 M is nonzero exactly in degrees 8, 16, 32, …", outcome.map(|v| support(&v, d)), powers(8, d));
    r.check("R_0 k_1 M is at most one-dimensional in each degree", Ok(r0k1.iter().all(|&x| x <= 1)));
    let phi3 = phi(&phi(&phi(&free(1, d))));
    r.check_eq("R_0 k_1 M ≅ Φ^3 F(1) in dimension", Ok(r0k1.clone()), phi3.dims().to_vec());

    // R_0 M = Φ^2F(1) and k_1 R_0 M
    let (r0, _) = r_0(&Arc::new(m));
    let r0 = r0.restrict(2 * d);
    let phi2 = phi(&phi(&free(1, 2 * d)));
    r.check_eq("R_0 M ≅ Φ^2 F(1) through degree 2D", Ok(r0.dims().to_vec()), phi2.dims().to_vec());
    let k1r0 = present(&r0, d).and_then(|q| k_n_spaces_capped(&q, 1, d, 2 * d)).map(|(_, k)| dims_of(&k));
    if let Ok(k) = &k1r0 {
        r.table("k_1 R_0 M", k.clone());
    }
    r.check_eq("k_1 R_0 M is nonzero exactly in degrees 4, 8, 16, 32, …", k1r0.clone().map(|v| support(&v, d)), powers(4, d));
    let proper = k1r0.map(|k| {
        let contained = (0..=d).all(|e| r0k1[e] <= k[e]);
        contained && r0k1 != k
    });
    r.check("R_0 k_1 M ⊊ k_1 R_0 M (Φ^3 F(1) ⊂ Φ^2 F(1))", proper);
    r
}

pub(super) fn polynomial(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("polynomial", degree);
    let d = degree;
    let big = poly_algebra(1, 2 * d);
    let small = poly_algebra(1, d);
    let p = match present(big.module(), d) {
        Ok(p) => p,
        Err(e) => {
            r.check("GF(2)[x] is presented", Err(e));
            return r;
        }
    };
    for n in 0..=3 {
        let digits: Vec<usize> = (0..=d).map(|e| usize::from(e.count_ones() as usize <= n)).collect();
        let kn = k_n_spaces_capped(&p, n, d, 2 * d).map(|(_, k)| dims_of(&k));
        if let Ok(k) = &kn {
            r.table(format!("k_{n} GF(2)[x]"), k.clone());
        }
        r.check_eq(
            format!("k_{n} GF(2)[x] = span of x^e with at most {n} binary digits"),
            kn,
            digits.clone(),
        );
        // the primitive filtration lives in the augmentation ideal
        let prim = small
            .primitive_spaces(n)
            .map(|s| (0..=d).map(|e| s[e].dim() + usize::from(e == 0)).collect::<Vec<_>>());
        r.check_eq(
            format!("k_{n} GF(2)[x] = ℤ/2 ⊕ (span of products of at most {n} primitives)"),
            prim,
            digits,
        );
    }
    for n in 1..=2 {
        let kb = kbar_n_capped(&p, n, d, 2 * d).map(|m| m.dims().to_vec());
        let want: Vec<usize> = (0..=d).map(|e| usize::from(e.count_ones() as usize == n)).collect();
        r.check_eq(format!("kbar_{n} GF(2)[x] is x^e with exactly {n} binary digits"), kb, want);
    }
    r
}

/// A corpus member together with a presentation and the evaluation
/// `realize(P) -> M` through the working degree, so that `k_n` can be read
/// as subspaces of `M` itself.
struct Member {
    name: String,
    module: Arc<RealizedModule>,
    presentation: PresentedModule,
    eval: Vec<LinMap>,
    top: usize,
    levels: Vec<Option<Vec<Subspace>>>,
}

impl Member {
    /// `module` must be realized through `2 * top`.
    fn new(name: impl Into<String>, module: RealizedModule, top: usize) -> Result<Self> {
        Member::with_window(name, module, top, top)
    }

    fn with_window(name: impl Into<String>, module: RealizedModule, top: usize, g: usize) -> Result<Self> {
        let (presentation, values) = present_with_values(&module, g.min(module.cert()))?;
        let real = realize_with_lifts(&presentation, top);
        let gens = presentation.gens().to_vec();
        let eval = (0..=top)
            .map(|e| {
                let cols = (0..real.module.dim(e))
                    .map(|j| {
                        let mut v = BitVec::zeros(module.dim(e));
                        for (mono, i) in real.lift(e, j).terms() {
                            v.xor_assign(&module.act_monomial(mono, gens[*i], &values[*i]));
                        }
                        v
                    })
                    .collect();
                LinMap::from_columns(module.dim(e), cols)
            })
            .collect();
        Ok(Member {
            name: name.into(),
            module: Arc::new(module),
            presentation,
            eval,
            top,
            levels: vec![None; 4],
        })
    }

    /// The presentation realizes `M` through the working degree.
    fn faithful(&self) -> bool {
        self.eval
            .iter()
            .enumerate()
            .all(|(e, m)| m.src_dim() == self.module.dim(e) && m.rank() == self.module.dim(e))
    }

    fn full(&self) -> Vec<Subspace> {
        (0..=self.top).map(|e| Subspace::full(self.module.dim(e))).collect()
    }

    /// `k_nM ⊆ M` through the working degree.
    fn k(&mut self, n: usize) -> Result<Vec<Subspace>> {
        if let Some(k) = &self.levels[n] {
            return Ok(k.clone());
        }
        let (_, spaces) = k_n_spaces_capped(&self.presentation, n, self.top, 2 * self.top)?;
        let k: Vec<Subspace> = spaces
            .iter()
            .enumerate()
            .map(|(e, s)| Subspace::spanned_by(self.module.dim(e), s.basis().iter().map(|v| self.eval[e].apply(v))))
            .collect();
        self.levels[n] = Some(k.clone());
        Ok(k)
    }
}

fn same(a: &[Subspace], b: &[Subspace]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_subspace_of(y) && y.is_subspace_of(x))
}

/// Images of subspaces under degreewise maps.
fn push(spaces: &[Subspace], f: &ModuleMap) -> Vec<Subspace> {
    spaces
        .iter()
        .enumerate()
        .map(|(e, s)| Subspace::spanned_by(f.target().dim(e), s.basis().iter().map(|v| f.apply(e, v))))
        .collect()
}

/// `Σ_{a} A^a ⊗ B^{e-a}` inside `M ⊗ N` (basis blocked by the degree on the left).
fn tensor_spaces(m: &RealizedModule, n: &RealizedModule, a: &[Subspace], b: &[Subspace], top: usize) -> Vec<Subspace> {
    (0..=top)
        .map(|e| {
            let total: usize = (0..=e).map(|i| m.dim(i) * n.dim(e - i)).sum();
            let mut out = Subspace::zero(total);
            let mut off = 0;
            for i in 0..=e {
                let j = e - i;
                for x in a[i].basis() {
                    for y in b[j].basis() {
                        let mut v = BitVec::zeros(total);
                        for p in x.iter_ones() {
                            for q in y.iter_ones() {
                                v.flip(off + p * n.dim(j) + q);
                            }
                        }
                        out.insert(v);
                    }
                }
                off += m.dim(i) * n.dim(j);
            }
            out
        })
        .collect()
}

fn sum_spaces(a: &[Subspace], b: &[Subspace]) -> Vec<Subspace> {
    a.iter().zip(b).map(|(x, y)| x.sum(y)).collect()
}

/// `k_n` commutes with `Σ`, `Φ` and `nil_1`; checked for `n <= 2`.
fn commutation(r: &mut SuiteReport, member: &mut Member) -> Result<()> {
    let top = member.top;
    let name = member.name.clone();
    let m = member.module.clone();
    let mut sus = Member::new(format!("Σ{name}"), suspend(&m, 1), top)?;
    let mut ph = Member::new(format!("Φ{name}"), phi(&m), top)?;
    // nil_1 is exact through its certified degree; the submodule generated
    // there agrees with nil_1 through the working degree
    let nil = nil_1(&m);
    let seeds: Vec<Vec<BitVec>> = nil
        .spaces
        .iter()
        .enumerate()
        .map(|(e, s)| if e <= nil.certified.min(top) { s.basis().to_vec() } else { Vec::new() })
        .collect();
    let (sub, incl) = m.submodule(&m.sq_closure(&seeds));
    let mut nl = Member::new(format!("nil_1 {name}"), (*sub).clone(), top)?;
    for n in 0..=2 {
        let k = member.k(n)?;
        let ks = sus.k(n)?;
        let shifted = (0..top).all(|e| {
            let (x, y) = (&ks[e + 1], &k[e]);
            x.is_subspace_of(y) && y.is_subspace_of(x)
        }) && ks[0].dim() == 0;
        r.check(format!("k_{n} Σ{name} = Σ k_{n} {name}"), Ok(shifted));
        let kp = ph.k(n)?;
        let doubled = (0..=top).all(|e| {
            if e % 2 == 1 {
                kp[e].dim() == 0
            } else {
                let (x, y) = (&kp[e], &k[e / 2]);
                x.is_subspace_of(y) && y.is_subspace_of(x)
            }
        });
        r.check(format!("k_{n} Φ{name} = Φ k_{n} {name}"), Ok(doubled));
        let lhs = push(&nl.k(n)?, &incl);
        let rhs = nil_1_within(&m, &k).spaces;
        r.check(format!("k_{n} nil_1 {name} = nil_1 k_{n} {name}"), Ok(same(&lhs[..=top], &rhs[..=top])));
    }
    Ok(())
}

/// `k_n ker f = ker f ∩ k_n M` for `f: M -> Q`.
fn left_exact(r: &mut SuiteReport, label: &str, source: &mut Member, f: &ModuleMap) -> Result<()> {
    let top = source.top;
    let ker = f.kernel_spaces();
    let (sub, incl) = source.module.submodule(&ker);
    let mut kern = Member::new(format!("ker {label}"), (*sub).clone(), top)?;
    for n in 0..=2 {
        let lhs = push(&kern.k(n)?, &incl);
        let rhs: Vec<Subspace> = source.k(n)?.iter().zip(&ker).map(|(a, b)| a.intersect(b)).collect();
        r.check(format!("k_{n}(ker {label}) = ker {label} ∩ k_{n}"), Ok(same(&lhs[..=top], &rhs[..=top])));
    }
    Ok(())
}

/// Projection `F(1) -> F(1)/F(1)^{>2}` (identity in degrees `<= 2`).
fn quotient_map(m: &Arc<RealizedModule>, q: &Arc<RealizedModule>) -> ModuleMap {
    let maps = (0..=m.top())
        .map(|e| if q.dim(e) > 0 { LinMap::identity(m.dim(e)) } else { LinMap::zero(m.dim(e), 0) })
        .collect();
    ModuleMap::new(Arc::clone(m), Arc::clone(q), maps, m.cert())
}

pub(super) fn properties(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("krull", degree);
    if let Err(e) = properties_into(&mut r, degree) {
        r.check("the suite ran to completion", Err(e));
    }
    r
}

fn properties_into(r: &mut SuiteReport, top: usize) -> Result<()> {
    let big = 2 * top;
    let f1 = free(1, big);
    let trunc = truncate_above(&f1, 2);
    let mut corpus = vec![
        Member::new("F(0)", free(0, big), top)?,
        Member::new("Σℤ/2", point(1, big), top)?,
        Member::new("F(1)", f1.clone(), top)?,
        Member::new("F(2)", free(2, big), top)?,
        Member::new("F(1)⊗F(1)", tensor(&f1, &f1), top)?,
        Member::new("Φ²F(1)", phi(&phi(&f1)), top)?,
        Member::new("F(1)/F(1)^{>2}", trunc.clone(), top)?,
        Member::with_window("M (pullback of ΣF(3) and Φ²F(1))", pullback_module(big), top, 4)?,
    ];
    for member in &mut corpus {
        let name = member.name.clone();
        r.check(format!("{name}: the presentation realizes the module"), Ok(member.faithful()));
        let mut levels = Vec::new();
        for n in 0..=3 {
            levels.push(member.k(n)?);
        }
        let monotone = (1..=3).all(|n| levels[n - 1].iter().zip(&levels[n]).all(|(a, b)| a.is_subspace_of(b)));
        r.check(format!("k_0 ⊆ k_1 ⊆ k_2 ⊆ k_3 on {name}"), Ok(monotone));
        r.table(format!("k_3 {name}"), dims_of(&levels[3]));
        let level = krull_level(&member.presentation, 4);
        if let Some(l) = level.filter(|&l| l <= 3) {
            r.check(format!("{name} ∈ U_{l} and k_{l} {name} = {name}"), Ok(same(&levels[l], &member.full())));
        } else {
            r.check(format!("{name} has Krull level at most 3"), Ok(false));
        }
        commutation(r, member)?;
    }

    // left exactness on corpus maps
    {
        let [_, _, f1m, _, _, _, _, ex] = &mut corpus[..] else { unreachable!() };
        let q = Arc::new(trunc.clone());
        let proj = quotient_map(&f1m.module, &q);
        left_exact(r, "F(1) -> F(1)/F(1)^{>2}", f1m, &proj)?;
        let (_, to_sf3, to_phi) = pullback_with_legs(big);
        left_exact(r, "M -> ΣF(3)", ex, &to_sf3)?;
        left_exact(r, "M -> Φ²F(1)", ex, &to_phi)?;
    }
    {
        // 1 ⊗ q: F(1) ⊗ F(1) -> F(1) ⊗ F(1)/F(1)^{>2}
        let src = Arc::new(tensor(&f1, &f1));
        let tgt = Arc::new(tensor(&f1, &trunc));
        let keep = tensor_spaces(
            &f1,
            &f1,
            &(0..=big).map(|e| Subspace::full(f1.dim(e))).collect::<Vec<_>>(),
            &(0..=big).map(|e| if e <= 2 { Subspace::full(f1.dim(e)) } else { Subspace::zero(f1.dim(e)) }).collect::<Vec<_>>(),
            big,
        );
        // the target basis is the sub-basis of pairs with right factor in degree <= 2
        let maps = (0..=big)
            .map(|e| {
                let kept: Vec<usize> = keep[e].pivots().to_vec();
                let mut sorted = kept.clone();
                sorted.sort_unstable();
                let cols = (0..src.dim(e))
                    .map(|i| match sorted.binary_search(&i) {
                        Ok(pos) => BitVec::unit(tgt.dim(e), pos),
                        Err(_) => BitVec::zeros(tgt.dim(e)),
                    })
                    .collect();
                LinMap::from_columns(tgt.dim(e), cols)
            })
            .collect();
        let f = ModuleMap::new(Arc::clone(&src), tgt, maps, src.cert());
        r.check("1 ⊗ q: F(1)⊗F(1) -> F(1)⊗F(1)/F(1)^{>2} is a module map", Ok(f.is_equivariant()));
        left_exact(r, "1 ⊗ q", &mut corpus[4], &f)?;
    }

    // k_n(N ⊗ M) = N ⊗ k_n M for locally finite N
    let point1 = point(1, big);
    for (nname, n) in [("Σℤ/2", &point1), ("F(1)/F(1)^{>2}", &trunc)] {
        for idx in [2, 3, 7] {
            let mname = corpus[idx].name.clone();
            let mm = corpus[idx].module.clone();
            let mut prod = Member::new(format!("{nname}⊗{mname}"), tensor(n, &mm), top)?;
            let full_n: Vec<Subspace> = (0..=top).map(|e| Subspace::full(n.dim(e))).collect();
            for k in 0..=2 {
                let want = tensor_spaces(n, &mm, &full_n, &corpus[idx].k(k)?, top);
                r.check(
                    format!("k_{k}({nname} ⊗ {mname}) = {nname} ⊗ k_{k} {mname}"),
                    Ok(same(&prod.k(k)?, &want)),
                );
            }
        }
    }

    // Σ_{l+m=n} k_l M ⊗ k_m N = k_n(M ⊗ N), and additivity of Krull levels
    for (i, j) in [(2, 2), (2, 3), (1, 2), (5, 2), (6, 3)] {
        let (mname, nname) = (corpus[i].name.clone(), corpus[j].name.clone());
        let (mm, nn) = (corpus[i].module.clone(), corpus[j].module.clone());
        let mut prod = Member::new(format!("{mname}⊗{nname}"), tensor(&mm, &nn), top)?;
        for n in 0..=2 {
            let mut want: Vec<Subspace> = (0..=top).map(|e| Subspace::zero(prod.module.dim(e))).collect();
            for l in 0..=n {
                let piece = tensor_spaces(&mm, &nn, &corpus[i].k(l)?, &corpus[j].k(n - l)?, top);
                want = sum_spaces(&want, &piece);
            }
            r.check(
                format!("Σ_(l+m={n}) k_l {mname} ⊗ k_m {nname} = k_{n}({mname} ⊗ {nname})"),
                Ok(same(&prod.k(n)?, &want)),
            );
        }
        let (a, b) = (krull_level(&corpus[i].presentation, 4), krull_level(&corpus[j].presentation, 4));
        let c = krull_level(&prod.presentation, 6);
        r.check_eq(
            format!("Krull level of {mname} ⊗ {nname} is the sum of the levels"),
            Ok(c),
            a.zip(b).map(|(a, b)| a + b),
        );
    }
    Ok(())
}
