use std::sync::Arc;

use super::*;
use crate::gf2::BitVec;
use crate::steenrod::Monomial;

fn dims_at(m: &RealizedModule, degs: &[usize]) -> Vec<usize> {
    degs.iter().map(|&d| m.dim(d)).collect()
}

fn support(m: &RealizedModule) -> Vec<usize> {
    (0..=m.top()).filter(|&d| m.dim(d) > 0).collect()
}

#[test]
fn free_modules() {
    let f0 = free(0, 10);
    assert_eq!(support(&f0), vec![0]);
    let f1 = free(1, 16);
    assert_eq!(support(&f1), vec![1, 2, 4, 8, 16]);
    assert!(f1.dims().iter().all(|&d| d <= 1));
    let f2 = free(2, 7);
    assert_eq!(dims_at(&f2, &[2, 3, 4, 5, 6, 7]), vec![1, 1, 1, 1, 1, 0]);
    for m in [&f0, &f1, &f2, &free(3, 20)] {
        m.validate().unwrap();
    }
}

#[test]
fn suspension_and_instability() {
    let s = suspend(&free(0, 8), 1);
    assert_eq!(support(&s), vec![1]);
    assert!(s.sq_matrix(1, 1).is_zero());
    let sf3 = suspend(&free(3, 20), 1);
    sf3.validate().unwrap();
    assert_eq!(sf3.dim(4), 1);
}

#[test]
fn frobenius() {
    assert_eq!(support(&phi(&free(0, 8))), vec![0]);
    assert_eq!(support(&phi(&free(1, 32))), vec![2, 4, 8, 16, 32]);
    let p2 = phi(&phi(&free(1, 32)));
    assert_eq!(support(&p2), vec![4, 8, 16, 32]);
    p2.validate().unwrap();
}

#[test]
fn lambda_examples() {
    let z = Arc::new(free(0, 8));
    let l = lambda_map(&z);
    assert_eq!(l.matrix(0).rank(), 1);
    let f1 = Arc::new(free(1, 32));
    assert!(lambda_map(&f1).is_injective());
    let s = Arc::new(suspend(&free(0, 8), 1));
    assert!(lambda_map(&s).matrix(2).is_zero());
    assert!(lambda_map(&f1).is_equivariant());
}

#[test]
fn loops_examples() {
    let top = 24;
    // Ω F(n) = F(n-1), Ω^1 F(n) = 0
    for n in 1..=3 {
        let l = loops(&Arc::new(free(n, top))).unwrap();
        let fm = free(n - 1, top - 1);
        assert_eq!(l.omega.dims(), fm.dims(), "Ω F({n})");
        assert!(l.omega1.is_zero());
    }
    // Ω Σ M = M and Ω^1 Σ M = Σ Φ M for M = F(1), since Φ Σ = Σ^2 Φ
    let f1 = free(1, top);
    let l = loops(&Arc::new(suspend(&f1, 1))).unwrap();
    assert_eq!(l.omega.dims(), &f1.dims()[..top]);
    assert_eq!(l.omega1.dims(), &suspend(&phi(&f1), 1).dims()[..top]);
    assert!(loops(&Arc::new(free(0, 8))).unwrap().omega.is_zero());
}

#[test]
fn four_term_exactness() {
    let top = 24;
    for m in [free(1, top), free(2, top), suspend(&free(0, top), 1), tensor(&free(1, top), &free(1, top))] {
        let m = Arc::new(m);
        let l = loops(&m).unwrap();
        let pm = phi(&m);
        for d in 1..top {
            let lhs = l.omega1.dim(d - 1) + m.dim(d);
            let rhs = pm.dim(d) + l.omega.dim(d - 1);
            assert_eq!(lhs, rhs, "degree {d}");
        }
    }
}

#[test]
fn tensor_examples() {
    let f1 = free(1, 16);
    let t = tensor(&f1, &f1);
    // convolution of the F(1) support {1, 2, 4, 8, 16}
    let conv: Vec<usize> = (0..=16)
        .map(|d| {
            (0..=d)
                .filter(|&a| f1.dim(a) == 1 && f1.dim(d - a) == 1)
                .count()
        })
        .collect();
    assert_eq!(t.dims(), &conv[..]);
    assert_eq!(dims_at(&t, &[2, 3, 4, 5, 6, 7, 8]), vec![1, 2, 1, 2, 2, 0, 1]);
    t.validate().unwrap();
    // Sq^1(x⊗x) = x^2⊗x + x⊗x^2
    let v = BitVec::unit(1, 0);
    assert_eq!(t.sq(1, 2, &v).count_ones(), 2);
    // unit
    let u = tensor(&free(0, 16), &f1);
    assert_eq!(u.dims(), f1.dims());
    // symmetry
    let f2 = free(2, 16);
    let sw = tensor_swap(&f1, &f2);
    assert!(sw.is_equivariant());
    assert!(sw.is_injective() && sw.is_surjective());
}

#[test]
fn truncation() {
    let f1 = free(1, 16);
    assert_eq!(support(&truncate_above(&f1, 1)), vec![1]);
    assert_eq!(support(&truncate_above(&f1, 4)), vec![1, 2, 4]);
    assert_eq!(truncate_above(&f1, 16).dims(), f1.dims());
}

#[test]
fn kernel_cokernel() {
    let f1 = Arc::new(free(1, 16));
    let (k, _) = ModuleMap::identity(&f1).kernel();
    assert!(k.is_zero());
    let s = Arc::new(suspend(&free(0, 16), 1));
    let lam = lambda_map(&s);
    let (k, _) = lam.kernel();
    assert_eq!(k.dims(), phi(&s).dims());
    // cokernel of λ on F(1) is ΣΩF(1)
    let lam = lambda_map(&f1);
    let (c, _) = lam.cokernel();
    let om = loops(&f1).unwrap().omega;
    for d in 1..16 {
        assert_eq!(c.dim(d), om.dim(d - 1));
    }
}

fn onto_top_class(m: &Arc<RealizedModule>, target: &Arc<RealizedModule>, deg: usize) -> ModuleMap {
    let maps = (0..=m.top())
        .map(|d| {
            if d == deg {
                crate::gf2::LinMap::from_columns(1, vec![BitVec::unit(1, 0); m.dim(d)])
            } else {
                crate::gf2::LinMap::zero(m.dim(d), target.dim(d))
            }
        })
        .collect();
    ModuleMap::new(Arc::clone(m), Arc::clone(target), maps, m.cert())
}

#[test]
fn example_pullback_dims() {
    let top = 32;
    let sf3 = Arc::new(suspend(&free(3, top), 1));
    let p2 = Arc::new(phi(&phi(&free(1, top))));
    let s4 = Arc::new(suspend(&free(0, top), 4));
    let f = onto_top_class(&sf3, &s4, 4);
    let g = onto_top_class(&p2, &s4, 4);
    assert!(f.is_equivariant() && g.is_equivariant());
    let (m, pa, pb) = pullback(&f, &g);
    m.validate().unwrap();
    for d in 0..=top {
        assert_eq!(m.dim(d) + s4.dim(d), sf3.dim(d) + p2.dim(d), "degree {d}");
    }
    assert!(pa.is_equivariant() && pb.is_equivariant());
    // over the zero module the pullback is the direct sum
    let z = Arc::new(zero_module(top));
    let (m0, _, _) = pullback(&ModuleMap::zero(&sf3, &z), &ModuleMap::zero(&p2, &z));
    assert_eq!(m0.total_dim(), sf3.total_dim() + p2.total_dim());
}

#[test]
fn realize_examples() {
    assert_eq!(realize(&PresentedModule::free(3), 20).dims(), free(3, 20).dims());
    // F(2)/(Sq^1 ι): in degrees 2..6 F(2) has basis ι, Sq^1ι, Sq^2ι, Sq^2Sq^1ι,
    // Sq^3Sq^1ι. A·Sq^1ι contains the Sq^1 classes, leaving ι and Sq^2ι.
    let rel = FreeElement::term(Monomial::new(vec![1]).unwrap(), 0);
    let p = PresentedModule::new(vec![2], vec![rel]);
    let m = realize(&p, 6);
    assert_eq!(dims_at(&m, &[2, 3, 4, 5, 6]), vec![1, 0, 1, 0, 0]);
    m.validate().unwrap();
}

#[test]
fn present_examples() {
    let top = 32;
    let f1 = free(1, top);
    let p = present(&f1, 1).unwrap();
    assert_eq!(p.gens(), &[1]);
    assert!(p.relations().is_empty());

    // Φ^2 F(1): generator in degree 4 killed by Sq^1, Sq^2, Sq^3
    let p2 = phi(&phi(&f1));
    let p = present(&p2, 4).unwrap();
    assert_eq!(p.gens(), &[4]);
    let rel_degs: Vec<usize> = (0..p.relations().len()).map(|r| p.relation_degree(r)).collect();
    // Sq^1ι and Sq^2ι are minimal; Sq^3ι = Sq^1Sq^2ι follows
    assert_eq!(&rel_degs[..2], &[5, 6]);
    assert!(rel_degs[2..].iter().all(|&d| d > 7));
    assert_eq!(realize(&p, top).dims(), p2.dims());

    // F(1)⊗F(1) round trip
    let t = tensor(&f1, &f1);
    let p = present(&t, top).unwrap();
    assert_eq!(realize(&p, top).dims(), t.dims());
    assert!(present(&t.clone().with_cert(5), 6).is_err());
}

#[test]
fn hom_examples() {
    let top = 20;
    let f2 = free(2, top);
    for n in 0..=6 {
        let h = hom_space(&PresentedModule::free(n), &f2, 0).unwrap();
        assert_eq!(h.dim(), f2.dim(n));
    }
    let h = hom_space(&PresentedModule::free(0), &free(1, top), 0).unwrap();
    assert_eq!(h.dim(), 0);
}
