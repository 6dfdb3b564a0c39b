//! Passing between unstable modules and functors through `H*(BV)`.

use std::sync::Arc;

use super::standard::{subsets, StandardFunctor};
use super::{
    is_stable, nat_trans, poly_degree, standard_functor, subfunctor, tensor, transpose, FiniteFunctor, Mat,
    PolyDegree,
};
use crate::gf2::{BitVec, LinMap, Subspace, SubspaceCoords};
use crate::kalg::{poly_algebra, UnstableAlgebra};
use crate::umod::{hom_space, PresentedModule, RealizedModule};
use crate::{Error, Result};

/// `A^*: H^d(BF₂^k) -> H^d(BF₂^j)` for `A: F₂^j -> F₂^k`, where `src` and
/// `tgt` are the polynomial algebras of ranks `k` and `j`.
pub fn cohomology_pullback(src: &UnstableAlgebra, tgt: &UnstableAlgebra, a: &Mat, d: usize) -> LinMap {
    let (k, j) = (a.rows(), a.cols());
    assert_eq!(src.presentation().rank(), k);
    assert_eq!(tgt.presentation().rank(), j);
    if d == 0 {
        return LinMap::from_columns(1, vec![tgt.unit()]);
    }
    // y_r ↦ Σ_c A[r][c] x_c
    let linear: Vec<BitVec> = (0..k)
        .map(|r| {
            let mut v = BitVec::zeros(tgt.module().dim(1));
            for c in 0..j {
                if a.entry(r, c) {
                    let mut e = vec![0; j];
                    e[c] = 1;
                    v.xor_assign(&tgt.class_of(1, &e));
                }
            }
            v
        })
        .collect();
    let cols = (0..src.module().dim(d))
        .map(|i| {
            let e = src.basis_monomial(d, i);
            let mut acc = tgt.unit();
            let mut deg = 0;
            for (r, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    acc = tgt.mul(deg, &acc, 1, &linear[r]);
                    deg += 1;
                }
            }
            acc
        })
        .collect();
    LinMap::from_columns(tgt.module().dim(d), cols)
}

fn poly_algebras(cap: usize, top: usize) -> Arc<Vec<UnstableAlgebra>> {
    Arc::new((0..=cap).map(|k| poly_algebra(k, top)).collect())
}

/// `H_n(V) = H_n(BV)`, the dual of `H^n(BV)`.
pub fn homology_functor(n: usize, cap: usize) -> FiniteFunctor {
    let algs = poly_algebras(cap, n);
    let dims = algs.iter().map(|a| a.module().dim(n)).collect();
    FiniteFunctor::new(format!("H{n}"), cap, dims, move |a| {
        transpose(&cohomology_pullback(&algs[a.rows()], &algs[a.cols()], a, n))
    })
}

/// `l(M)(V) = Hom_U(M, H*(BV))^∨` for a finitely presented `M`.
pub fn l_of(p: &PresentedModule, cap: usize) -> Result<FiniteFunctor> {
    let top = p
        .gens()
        .iter()
        .copied()
        .chain((0..p.relations().len()).map(|r| p.relation_degree(r)))
        .max()
        .unwrap_or(0);
    let algs = poly_algebras(cap, top);
    let homs: Vec<SubspaceCoords> = algs
        .iter()
        .map(|alg| {
            let h = hom_space(p, alg.module(), 0)?;
            let ambient: usize = p.gens().iter().map(|&g| alg.module().dim(g)).sum();
            let basis = h
                .basis
                .into_iter()
                .map(|vals| vals.iter().fold(BitVec::zeros(0), |acc, v| acc.concat(v)))
                .collect();
            Ok(SubspaceCoords::new(ambient, basis))
        })
        .collect::<Result<_>>()?;
    let dims = homs.iter().map(SubspaceCoords::dim).collect();
    let homs = Arc::new(homs);
    let gens = p.gens().to_vec();
    Ok(FiniteFunctor::new(format!("l({p})"), cap, dims, move |a| {
        // post-composition with A^*: Hom(M, H*BF₂^k) -> Hom(M, H*BF₂^j), then dualize
        let (k, j) = (a.rows(), a.cols());
        let pulls: Vec<LinMap> = gens.iter().map(|&g| cohomology_pullback(&algs[k], &algs[j], a, g)).collect();
        let cols = homs[k]
            .basis()
            .iter()
            .map(|h| {
                let mut image = BitVec::zeros(0);
                let mut off = 0;
                for (gi, &g) in gens.iter().enumerate() {
                    let len = algs[k].module().dim(g);
                    image = image.concat(&pulls[gi].apply(&h.slice(off, len)));
                    off += len;
                }
                homs[j].coords(&image).expect("post-composition preserves module maps")
            })
            .collect();
        transpose(&LinMap::from_columns(homs[j].dim(), cols))
    }))
}

/// `r(l(M))` in degrees `0..=n_bound`, `r(F)^n = Hom(H_n, F)`.
#[derive(Clone, Debug)]
pub struct NilClosure {
    pub module: RealizedModule,
    pub functor: FiniteFunctor,
    pub degree: PolyDegree,
    /// Hom out of `H_n` is only trusted when `l(M)` has certified degree below the rank cap.
    pub certified: bool,
}

pub fn nil_closure(p: &PresentedModule, n_bound: usize, cap: usize) -> Result<NilClosure> {
    if cap == 0 {
        return Err(Error::RankExhausted { needed: 1, cap });
    }
    let f = l_of(p, cap)?;
    let degree = poly_degree(&f);
    let algs = poly_algebras(cap, n_bound);
    let homology: Vec<FiniteFunctor> = (0..=n_bound).map(|n| homology_functor(n, cap)).collect();
    let flatten = |t: &[LinMap]| -> BitVec {
        t.iter()
            .flat_map(|m| m.columns().iter().cloned())
            .fold(BitVec::zeros(0), |acc, c| acc.concat(&c))
    };
    let spaces: Vec<(Vec<Vec<LinMap>>, SubspaceCoords)> = homology
        .iter()
        .map(|h| {
            let basis = nat_trans(h, &f);
            let ambient: usize = (0..=cap).map(|k| h.dim(k) * f.dim(k)).sum();
            let coords = SubspaceCoords::new(ambient, basis.iter().map(|t| flatten(t)).collect());
            (basis, coords)
        })
        .collect();
    let dims = spaces.iter().map(|(b, _)| b.len()).collect();
    let module = RealizedModule::build(n_bound, n_bound, dims, |i, n, b| {
        // t ∘ (Sq^i)^∨ with (Sq^i)^∨: H_{n+i} -> H_n
        let t = &spaces[n].0[b];
        let composite: Vec<LinMap> = (0..=cap)
            .map(|k| t[k].compose(&transpose(&algs[k].module().sq_matrix(i, n))))
            .collect();
        spaces[n + i].1.coords(&flatten(&composite)).expect("precomposition is natural")
    });
    Ok(NilClosure {
        module,
        functor: f,
        certified: degree.certified_below(cap),
        degree,
    })
}

/// The splitting `Λ²(V) ⊗ V ≅ Λ³(V) ⊕ L(V)`.
#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub mult_natural: bool,
    pub comult_natural: bool,
    /// `Λ³ -> Λ² ⊗ Id -> Λ³` is the identity at every rank.
    pub composite_identity: bool,
    pub l: FiniteFunctor,
    pub l_dims: Vec<usize>,
    /// Every nonzero vector of `L(F₂^k)`, `k <= K`, generates `L`.
    pub simple: bool,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.mult_natural && self.comult_natural && self.composite_identity && self.simple
    }
}

fn wedge_index(k: usize, m: usize) -> std::collections::HashMap<u64, usize> {
    subsets(k, m).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// `(a∧b) ⊗ c ↦ a∧b∧c` at rank `k`; `Λ²⊗Id` indexed `i·k + c`.
fn mult(k: usize) -> LinMap {
    let two = subsets(k, 2);
    let three = wedge_index(k, 3);
    let cols = (0..two.len() * k)
        .map(|idx| {
            let (s, c) = (two[idx / k], idx % k);
            let mut out = BitVec::zeros(three.len());
            if s >> c & 1 == 0 {
                out.flip(three[&(s | 1 << c)]);
            }
            out
        })
        .collect();
    LinMap::from_columns(three.len(), cols)
}

/// `a∧b∧c ↦ (a∧b)⊗c + (a∧c)⊗b + (b∧c)⊗a`.
fn comult(k: usize) -> LinMap {
    let two = wedge_index(k, 2);
    let cols = subsets(k, 3)
        .into_iter()
        .map(|s| {
            let mut out = BitVec::zeros(two.len() * k);
            for c in (0..k).filter(|c| s >> c & 1 == 1) {
                out.flip(two[&(s & !(1 << c))] * k + c);
            }
            out
        })
        .collect();
    LinMap::from_columns(two.len() * k, cols)
}

/// Whether `t_k ∘ G(A) = F(A) ∘ t_j` on the generators of the category.
fn natural(g: &FiniteFunctor, f: &FiniteFunctor, t: impl Fn(usize) -> LinMap) -> bool {
    Mat::category_generators(g.rank_cap().min(f.rank_cap()))
        .iter()
        .all(|a| t(a.rows()).compose(&g.apply(a)) == f.apply(a).compose(&t(a.cols())))
}

/// Whether every nonzero vector of `F(F₂^k)`, `k <= K`, generates all of `F`.
pub fn generated_by_every_vector(f: &FiniteFunctor) -> bool {
    let cap = f.rank_cap();
    for k in 0..=cap {
        let n = f.dim(k);
        if n == 0 {
            continue;
        }
        assert!(n < 24, "too many vectors to check cyclicity");
        for code in 1u64..1 << n {
            let v = BitVec::from_indices(n, (0..n).filter(|i| code >> i & 1 == 1));
            for kp in 0..=cap {
                let mut span = Subspace::zero(f.dim(kp));
                for a in Mat::all(kp, k) {
                    span.insert(f.apply(&a).apply(&v));
                    if span.dim() == f.dim(kp) {
                        break;
                    }
                }
                if span.dim() != f.dim(kp) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn lambda2_tensor_splitting(cap: usize) -> Result<SplittingReport> {
    if cap < 3 {
        return Err(Error::RankExhausted { needed: 3, cap });
    }
    let l2 = standard_functor(StandardFunctor::Lambda(2), cap);
    let l3 = standard_functor(StandardFunctor::Lambda(3), cap);
    let id = standard_functor(StandardFunctor::Id, cap);
    let src = tensor(&l2, &id);
    let mult_natural = natural(&src, &l3, mult);
    let comult_natural = natural(&l3, &src, comult);
    let composite_identity = (0..=cap).all(|k| mult(k).compose(&comult(k)) == LinMap::identity(l3.dim(k)));
    let kernels: Vec<Subspace> = (0..=cap)
        .map(|k| Subspace::spanned_by(src.dim(k), mult(k).kernel()))
        .collect();
    debug_assert!(is_stable(&src, &kernels));
    let l = subfunctor(&src, "L", kernels);
    let simple = generated_by_every_vector(&l);
    Ok(SplittingReport {
        mult_natural,
        comult_natural,
        composite_identity,
        l_dims: l.dims().to_vec(),
        l,
        simple,
    })
}
