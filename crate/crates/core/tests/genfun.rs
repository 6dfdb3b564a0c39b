use krull_core::genfun::*;
use krull_core::gf2::{BitVec, Subspace};
use krull_core::umod::{free, present, suspend, PresentedModule, RealizedModule};
use StandardFunctor::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

#[test]
fn standard_functors_are_functors() {
    let cap = 3;
    for which in [Id, Const, TensorPower(2), Lambda(2), Lambda(3), Sym(2), Sym(3), Gamma(2), P(1), I(1), BarP(1), BarI(1)] {
        let f = standard_functor(which, cap);
        f.validate(40).unwrap_or_else(|e| panic!("{which}: {e}"));
    }
}

#[test]
fn standard_dimensions() {
    let cap = 3;
    assert_eq!(standard_functor(I(1), cap).dim(2), 4);
    assert_eq!(standard_functor(Lambda(2), cap).dim(3), 3);
    assert_eq!(standard_functor(P(1), cap).dim(2), 4);
    for k in 0..=cap {
        // I_{F₂}(V) = S*(V)/(x² - x): square-free monomials
        assert_eq!(standard_functor(I(1), cap).dim(k), 1 << k);
        assert_eq!(standard_functor(Gamma(2), cap).dim(k), binom(k + 1, 2));
        assert_eq!(standard_functor(BarI(1), cap).dim(k), (1 << k) - 1);
    }
}

#[test]
fn difference_functors() {
    let cap = 3;
    assert!(delta(&standard_functor(Const, cap)).unwrap().is_zero());
    let d_id = delta(&standard_functor(Id, cap)).unwrap();
    assert_eq!(d_id.dims(), &[1, 1, 1]);
    d_id.validate(20).unwrap();
    // every map acts as the identity on Δ(Id)
    for a in Mat::all(2, 1) {
        assert_eq!(*d_id.apply(&a), krull_core::gf2::LinMap::identity(1));
    }
    let d_s2 = delta(&standard_functor(Sym(2), cap)).unwrap();
    assert_eq!(d_s2.dim(2), 6 - 3);
    d_s2.validate(20).unwrap();
    assert!(matches!(
        delta(&standard_functor(Id, 0)),
        Err(krull_core::Error::RankExhausted { .. })
    ));
}

#[test]
fn polynomial_degrees() {
    let cap = 4;
    assert_eq!(poly_degree(&standard_functor(Const, cap)), PolyDegree::Degree(0));
    assert_eq!(poly_degree(&standard_functor(Id, cap)), PolyDegree::Degree(1));
    for n in 1..=3 {
        assert_eq!(poly_degree(&standard_functor(Gamma(n), cap)), PolyDegree::Degree(n), "H_{n}");
        assert_eq!(poly_degree(&standard_functor(TensorPower(n), cap)), PolyDegree::Degree(n));
    }
    assert_eq!(poly_degree(&standard_functor(BarP(1), cap)), PolyDegree::NotPolynomialWithin(cap));
    assert_eq!(poly_degree(&standard_functor(I(1), cap)), PolyDegree::NotPolynomialWithin(cap));
}

#[test]
fn polynomial_parts_of_injectives() {
    let cap = 4;
    let i = standard_functor(I(1), cap);
    for n in 0..=2 {
        let p = p_n(&i, n).unwrap();
        p.validate(20).unwrap();
        for k in 0..=cap - n - 1 {
            let want: usize = (0..=n).map(|j| binom(k, j)).sum();
            assert_eq!(p.dim(k), want, "p_{n} I at rank {k}");
        }
    }
    assert_eq!(p_n(&i, 1).unwrap().dim(2), 3);
    let h2 = standard_functor(Gamma(2), cap);
    assert_eq!(p_n(&h2, 2).unwrap().dims(), &h2.dims()[..2]);
    assert!(p_n(&h2, 1).unwrap().dims().iter().zip(h2.dims()).any(|(a, b)| a < b));
    assert!(matches!(p_n(&i, 4), Err(krull_core::Error::RankExhausted { .. })));
}

#[test]
fn polynomial_quotients() {
    let cap = 4;
    let h2 = standard_functor(Gamma(2), cap);
    assert_eq!(q_n(&h2, 2).unwrap().dims(), &h2.dims()[..2]);
    let id = standard_functor(Id, cap);
    assert!(q_n(&id, 0).unwrap().is_zero());
    assert_eq!(q_n(&id, 1).unwrap().dims(), &id.dims()[..3]);
    // P̄ is a sum of projective covers; its degree-1 quotient is Id
    let p = q_n(&standard_functor(BarP(1), cap), 1).unwrap();
    p.validate(20).unwrap();
    assert_eq!(p.dims(), &[0, 1, 2]);
}

#[test]
fn tensor_filtration() {
    let cap = 4;
    let functors = [I(1), Sym(2), Id];
    for a in functors {
        for b in functors {
            let (f, g) = (standard_functor(a, cap), standard_functor(b, cap));
            let fg = tensor(&f, &g);
            for n in 0..=2 {
                let lhs = p_n(&fg, n).unwrap();
                let top = cap - n - 1;
                for k in 0..=top {
                    // Σ_{l+m=n} p_l F ⊗ p_m G inside F ⊗ G at rank k
                    let mut sum = Subspace::zero(fg.dim(k));
                    for l in 0..=n {
                        let pl = p_space(&f, l, k);
                        let pm = p_space(&g, n - l, k);
                        for x in pl.basis() {
                            for y in pm.basis() {
                                sum.insert(tensor_vec(x, y));
                            }
                        }
                    }
                    let inside = p_space(&fg, n, k);
                    assert_eq!(lhs.dim(k), inside.dim());
                    assert!(sum.is_subspace_of(&inside) && inside.is_subspace_of(&sum), "{a}⊗{b}, n = {n}, rank {k}");
                }
            }
        }
    }
}

/// `p_nF(F₂^k)` as a subspace of `F(F₂^k)`.
fn p_space(f: &FiniteFunctor, n: usize, k: usize) -> Subspace {
    p_n_spaces(f, n).unwrap()[k].clone()
}

fn tensor_vec(x: &BitVec, y: &BitVec) -> BitVec {
    BitVec::from_indices(
        x.len() * y.len(),
        x.iter_ones().flat_map(|i| y.iter_ones().map(move |j| i * y.len() + j)),
    )
}

#[test]
fn lambda_two_tensor_identity_splits() {
    let r = lambda2_tensor_splitting(3).unwrap();
    assert!(r.composite_identity && r.mult_natural && r.comult_natural);
    assert_eq!(r.l_dims[2], 2);
    assert_eq!(r.l_dims[3], 8);
    assert!(r.simple);
    r.l.validate(20).unwrap();
    assert!(lambda2_tensor_splitting(2).is_err());
}

#[test]
fn functors_of_free_modules() {
    let cap = 3;
    for n in 0..=3 {
        let l = l_of(&PresentedModule::free(n), cap).unwrap();
        let h = standard_functor(Gamma(n), cap);
        assert_eq!(l.dims(), h.dims(), "l(F({n}))");
        l.validate(20).unwrap();
        // the identification is natural: Hom(H_n, l(F(n))) contains an isomorphism
        assert!(nat_trans(&h, &l).iter().any(|t| t.iter().all(|m| m.rank() == m.src_dim() && m.src_dim() == m.tgt_dim())));
    }
    let s = suspend(&free(0, 8), 1);
    assert!(l_of(&present(&s, s.cert()).unwrap(), cap).unwrap().is_zero());
    let f11 = tensor_modules(&free(1, 8), &free(1, 8));
    let l = l_of(&present(&f11, 8).unwrap(), cap).unwrap();
    assert_eq!(l.dims(), &[0, 1, 4, 9]);
}

fn tensor_modules(a: &RealizedModule, b: &RealizedModule) -> RealizedModule {
    krull_core::umod::tensor(a, b)
}

#[test]
fn nil_closures() {
    let cap = 3;
    let c = nil_closure(&PresentedModule::free(0), 4, cap).unwrap();
    assert_eq!(c.module.dims(), &[1, 0, 0, 0, 0]);
    assert!(c.certified);
    let c = nil_closure(&PresentedModule::free(1), 4, cap).unwrap();
    // r(Id) = F(1)
    assert_eq!(c.module.dims(), &[0, 1, 1, 0, 1]);
    assert!(c.certified);
    c.module.validate().unwrap();
    // H*(BZ/2) is Nil-closed; l of it is not polynomial, so the answer is flagged
    let poly = krull_core::kalg::poly_algebra(1, 8);
    let c = nil_closure(&present(poly.module(), 8).unwrap(), 4, cap).unwrap();
    assert_eq!(c.module.dims(), &[1, 1, 1, 1, 1]);
    assert!(!c.certified);
    for d in 1..=4 {
        for s in 1..=d.min(4 - d) {
            assert_eq!(c.module.sq_matrix(s, d), poly.module().restrict(4).sq_matrix(s, d), "Sq^{s} x^{d}");
        }
    }
}

fn corpus(top: usize) -> Vec<(&'static str, PresentedModule)> {
    let f1 = free(1, top);
    let f2 = free(2, top);
    let full = |m: &RealizedModule| present(m, m.cert()).unwrap();
    let (sum, _, _) = krull_core::umod::direct_sum(&suspend(&free(0, top), 1), &f1);
    vec![
        ("F(2)", PresentedModule::free(2)),
        ("F(1)⊗F(1)", full(&tensor_modules(&f1, &f1))),
        ("F(1)⊗F(2)", full(&tensor_modules(&f1, &f2))),
        ("Σℤ/2⊕F(1)", full(&sum)),
    ]
}

#[test]
fn difference_of_l_is_l_of_tbar() {
    let cap = 3;
    for (name, p) in corpus(10) {
        let l = l_of(&p, cap).unwrap();
        let lt = l_of(&krull_core::lannes::tbar(&p), cap - 1).unwrap();
        assert_eq!(delta(&l).unwrap().dims(), lt.dims(), "{name}");
    }
}

#[test]
fn l_of_k_n_is_p_n_of_l() {
    let cap = 3;
    let top = 10;
    for (name, p) in corpus(top) {
        let l = l_of(&p, cap).unwrap();
        for n in 0..cap {
            let (sub, _) = krull_core::krull::k_n(&p, n, top).unwrap();
            let kp = present(&sub, sub.cert()).unwrap();
            let lk = l_of(&kp, cap - n - 1).unwrap();
            assert_eq!(lk.dims(), p_n(&l, n).unwrap().dims(), "{name}, n = {n}");
        }
    }
}

