use std::sync::Arc;

use krull_core::gf2::{binomial_mod2, BitVec};
use krull_core::krull::*;
use krull_core::umod::*;

/// `GF(2)[x]` through `top`.
fn polynomial(top: usize) -> RealizedModule {
    RealizedModule::build(top, top, vec![1; top + 1], |k, d, _| {
        BitVec::from_bits(&[binomial_mod2(d as u64, k as u64)])
    })
}

fn present_full(m: &RealizedModule) -> PresentedModule {
    present(m, m.cert()).unwrap()
}

fn dims(spaces: &[krull_core::gf2::Subspace]) -> Vec<usize> {
    spaces.iter().map(|s| s.dim()).collect()
}

#[test]
fn k0_of_f1_and_of_its_bottom_class() {
    let top = 32;
    let (_, k) = k_n_spaces(&PresentedModule::free(1), 0, top).unwrap();
    assert!(dims(&k).iter().all(|&d| d == 0));
    let t = truncate_above(&free(1, top), 1);
    let (m, k) = k_n_spaces(&present_full(&t), 0, top).unwrap();
    assert_eq!(dims(&k), m.dims());
    assert_eq!(m.dims()[..3], [0, 1, 0]);
}

#[test]
fn free_modules_are_their_own_k_n() {
    let top = 24;
    for n in 0..=3 {
        let p = PresentedModule::free(n);
        let (m, k) = k_n_spaces(&p, n, top).unwrap();
        assert_eq!(dims(&k), m.dims(), "k_{n} F({n})");
        if n > 0 {
            let (_, k) = k_n_spaces(&p, n - 1, top).unwrap();
            assert!(dims(&k).iter().all(|&d| d == 0), "k_{} F({n})", n - 1);
        }
    }
}

#[test]
fn polynomial_filtration_is_digit_count() {
    let d = 32;
    let cap = 2 * d;
    let p = present(&polynomial(cap), d).unwrap();
    for n in 0..=3 {
        let (_, k) = k_n_spaces_capped(&p, n, d, cap).unwrap();
        for e in 0..=d {
            let want = usize::from(e.count_ones() as usize <= n);
            assert_eq!(k[e].dim(), want, "k_{n} in degree {e}");
        }
    }
}

#[test]
fn nil_examples() {
    let top = 32;
    let s = suspend(&free(0, top), 1);
    let nil = nil_1(&s);
    assert_eq!(dims(&nil.spaces), s.dims());
    let f1 = free(1, top);
    let nil = nil_1(&f1);
    assert!(dims(&nil.spaces).iter().all(|&d| d == 0));
    assert_eq!(nil.certified, 16);
    assert!(nil_1_through(&f1, 20).is_err());
    let t = Arc::new(truncate_above(&f1, 4));
    let (r, _) = r_0(&t);
    assert!(r.is_zero());
}

#[test]
fn locally_finite_nil_filtration() {
    let top = 16;
    let (m, _, _) = direct_sum(&free(0, top), &suspend(&free(0, top), 2));
    let f = nil_filtration_locally_finite(&m).unwrap();
    assert_eq!(f.r_dims[..4], [1, 0, 1, 0]);
    assert!(nil_filtration_locally_finite(&free(1, top)).is_err());
}

#[test]
fn example_six_two() {
    use krull_core::corpus::pullback_module;
    let d = 32;
    let m = pullback_module(4 * d);
    let p = present(&m, 4).unwrap();
    assert_eq!(p.gens(), &[4]);
    // k_1M and R_0k_1M
    let (mr, k1) = k_n_spaces_capped(&p, 1, d, 2 * d).unwrap();
    assert_eq!(mr.dims(), &m.dims()[..=d]);
    let nil = nil_1_within(&m, &k1);
    let r0k1: Vec<usize> = (0..=d).map(|e| k1[e].dim() - nil.spaces[e].dim()).collect();
    let support: Vec<usize> = (0..=d).filter(|&e| r0k1[e] > 0).collect();
    assert_eq!(support, vec![8, 16, 32]);
    assert!(r0k1.iter().all(|&x| x <= 1));
    // R_0M and k_1R_0M
    let (r0, _) = r_0(&Arc::new(m));
    let r0 = r0.restrict(2 * d);
    let support: Vec<usize> = (0..=2 * d).filter(|&e| r0.dim(e) > 0).collect();
    assert_eq!(support, vec![4, 8, 16, 32, 64]);
    let (_, k1r0) = k_n_spaces_capped(&present(&r0, d).unwrap(), 1, d, 2 * d).unwrap();
    let support: Vec<usize> = (0..=d).filter(|&e| k1r0[e].dim() > 0).collect();
    assert_eq!(support, vec![4, 8, 16, 32]);
}

#[test]
fn filtration_is_increasing_and_exhaustive() {
    let top = 16;
    let m = tensor(&free(1, top), &free(2, top));
    let p = present_full(&m);
    let mut prev: Option<Vec<krull_core::gf2::Subspace>> = None;
    for n in 0..=3 {
        let (_, k) = k_n_spaces(&p, n, top).unwrap();
        if let Some(prev) = &prev {
            assert!(prev.iter().zip(&k).all(|(a, b)| a.is_subspace_of(b)));
        }
        let want: Vec<usize> = if n == 3 { m.dims().to_vec() } else { vec![0; top + 1] };
        assert_eq!(dims(&k), want, "k_{n}");
        prev = Some(k);
    }
}

#[test]
fn commutes_with_suspension_frobenius_and_sums() {
    let top = 16;
    let f2 = free(2, top);
    let (_, k1) = k_n_spaces(&present_full(&f2), 1, top).unwrap();
    let s = suspend(&f2, 1);
    let (_, ks1) = k_n_spaces(&present_full(&s), 1, top).unwrap();
    assert_eq!(dims(&ks1)[1..], dims(&k1)[..top]);
    let (_, ks2) = k_n_spaces(&present_full(&s), 2, top).unwrap();
    assert_eq!(dims(&ks2), s.dims());

    let f1 = free(1, top);
    let ph = phi(&f1);
    let (_, k) = k_n_spaces(&present_full(&ph), 1, top).unwrap();
    assert_eq!(dims(&k), ph.dims());
    let (_, k) = k_n_spaces(&present_full(&ph), 0, top).unwrap();
    assert!(dims(&k).iter().all(|&d| d == 0));

    let (sum, _, _) = direct_sum(&f1, &f2);
    let (_, k) = k_n_spaces(&present_full(&sum), 1, top).unwrap();
    assert_eq!(dims(&k), f1.dims());
}

#[test]
fn tensor_formula() {
    let top = 16;
    let f1 = free(1, top);
    let m = tensor(&f1, &suspend(&free(0, top), 3));
    // k_n(F(1) ⊗ Σ^3ℤ/2) = k_nF(1) ⊗ Σ^3ℤ/2
    for n in 0..=1 {
        let (_, k) = k_n_spaces(&present_full(&m), n, top).unwrap();
        let want: Vec<usize> = if n == 0 { vec![0; top + 1] } else { m.dims().to_vec() };
        assert_eq!(dims(&k), want);
    }
}

#[test]
fn left_exact_on_an_inclusion() {
    // ΣF(2) ⊂ ΣF(2) ⊕ Σ^5ℤ/2 : k_1 of the sub is the intersection with k_1 of the sum
    let top = 16;
    let a = suspend(&free(2, top), 1);
    let (sum, _, _) = direct_sum(&a, &suspend(&free(0, top), 5));
    let (_, k_sum) = k_n_spaces(&present_full(&sum), 1, top).unwrap();
    let (_, k_a) = k_n_spaces(&present_full(&a), 1, top).unwrap();
    for d in 0..=top {
        let extra = usize::from(d == 5);
        assert_eq!(k_sum[d].dim(), k_a[d].dim() + extra, "degree {d}");
    }
}
