use krull_core::umod::*;

/// Unordered pairs of powers of two with sum `d`.
fn power_pairs(d: usize) -> usize {
    (0..usize::BITS)
        .flat_map(|i| (i..usize::BITS).map(move |j| (i, j)))
        .filter(|&(i, j)| (1usize << i).checked_add(1usize << j) == Some(d))
        .count()
}

#[test]
fn free_modules_on_one_and_two_classes() {
    let top = 40;
    let f1 = free(1, top);
    f1.validate().unwrap();
    for d in 0..=top {
        assert_eq!(f1.dim(d), usize::from(d.is_power_of_two()), "F(1) in degree {d}");
    }
    let f2 = free(2, top);
    f2.validate().unwrap();
    for d in 0..=top {
        assert_eq!(f2.dim(d), power_pairs(d), "F(2) in degree {d}");
    }
}

#[test]
fn suspension_frobenius_and_truncation() {
    let top = 24;
    let f1 = free(1, top);
    let s = suspend(&f1, 3);
    s.validate().unwrap();
    for d in 0..=top {
        assert_eq!(s.dim(d), if d >= 3 { f1.dim(d - 3) } else { 0 });
    }
    let p = phi(&f1);
    p.validate().unwrap();
    for d in 0..=top {
        assert_eq!(p.dim(d), if d % 2 == 0 { f1.dim(d / 2) } else { 0 });
    }
    let t = truncate_above(&f1, 2);
    assert_eq!(&t.dims()[..5], &[0, 1, 1, 0, 0]);
    // Sq^1 x = x^2 survives the truncation
    let x = krull_core::gf2::BitVec::unit(1, 0);
    assert!(t.sq(1, 1, &x).get(0));
}

#[test]
fn tensor_products_and_sums() {
    let top = 20;
    let (f1, f2) = (free(1, top), free(2, top));
    let t = tensor(&f1, &f2);
    t.validate().unwrap();
    for d in 0..=top {
        let conv: usize = (0..=d).map(|i| f1.dim(i) * f2.dim(d - i)).sum();
        assert_eq!(t.dim(d), conv);
    }
    let (s, _, _) = direct_sum(&f1, &f2);
    for d in 0..=top {
        assert_eq!(s.dim(d), f1.dim(d) + f2.dim(d));
    }
}

#[test]
fn presentations_round_trip() {
    let top = 16;
    let f11 = tensor(&free(1, top), &free(1, top));
    let p = present(&f11, top).unwrap();
    // x ⊗ x, and one of x ⊗ x² and x² ⊗ x since Sq^1(x ⊗ x) is their sum
    assert_eq!(p.gens(), &[2, 3]);
    assert_eq!(realize(&p, top).dims(), f11.dims());
    let f = PresentedModule::free(3);
    assert_eq!(realize(&f, top).dims(), free(3, top).dims());
}
