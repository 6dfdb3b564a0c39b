use krull_core::krull::*;
use krull_core::sym::{subgroups, Subgroup};
use krull_core::umod::*;

fn trivial_point(arity: usize, top: usize) -> SymmetricObject {
    trivial_object(unit_module(top), arity)
}

fn full_group(n: usize) -> Subgroup {
    subgroups(n).into_iter().max_by_key(|h| h.order()).unwrap()
}

fn trivial_group(n: usize) -> Subgroup {
    subgroups(n).into_iter().min_by_key(|h| h.order()).unwrap()
}

/// Unordered `n`-tuples of powers of two with sum `d`.
fn power_multisets(d: usize, n: usize, min: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    let mut count = 0;
    let mut p = min;
    while p <= d {
        count += power_multisets(d - p, n - 1, p);
        p *= 2;
    }
    count
}

/// Ordered `n`-tuples of powers of two with sum `d`.
fn power_tuples(d: usize, n: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    let mut count = 0;
    let mut p = 1;
    while p <= d {
        count += power_tuples(d - p, n - 1);
        p *= 2;
    }
    count
}

#[test]
fn regular_objects_have_orbit_counting_fixed_points() {
    for n in 0..=3 {
        let r = regular_object(n, 4);
        r.0.validate().unwrap();
        let order: usize = (1..=n).product();
        assert_eq!(r.dims()[0], order);
        for h in subgroups(n) {
            assert_eq!(r.fixed_dim(&h, 0), order / h.order());
        }
    }
}

#[test]
fn boxtimes_unit_and_induction() {
    let top = 6;
    let unit = SymmetricSequence::new(vec![trivial_point(0, top), zero_object(1, top), zero_object(2, top)]);
    let x = SymmetricSequence::new(vec![zero_object(0, top), trivial_object(free(1, top), 1), zero_object(2, top)]);
    let ux = boxtimes(&unit, &x, 2);
    for n in 0..=2 {
        assert_eq!(ux.get(n).dims(), x.get(n).dims());
    }
    let xx = boxtimes(&x, &x, 2);
    xx.get(2).0.validate().unwrap();
    assert!(xx.get(0).is_zero() && xx.get(1).is_zero());
    // Ind_{1}^{Σ_2} of F(1)⊗F(1) is two copies of it, freely permuted
    let sq = tensor(&free(1, top), &free(1, top));
    for d in 0..=top {
        assert_eq!(xx.get(2).dims()[d], 2 * sq.dim(d));
        assert_eq!(xx.get(2).fixed_dim(&full_group(2), d), sq.dim(d));
    }
}

#[test]
fn shuffle_powers() {
    let top = 4;
    let one = trivial_point(1, top);
    let sh = sh_m(&one, 3);
    for n in 0..=3 {
        assert_eq!(sh.get(n).dims()[0], 1, "Sh^1_{n}");
        assert_eq!(sh.get(n).fixed_dim(&full_group(n), 0), 1);
    }
    let two = regular_object(2, top);
    let sh = sh_m(&two, 4);
    assert_eq!(sh.get(0).dims()[0], 1);
    assert!(sh.get(1).is_zero() && sh.get(3).is_zero());
    assert_eq!(sh.get(2).dims(), two.dims());
    assert_eq!(sh.get(2).fixed_dim(&full_group(2), 0), 1);
    let triv = sh_m(&trivial_point(2, top), 4);
    assert_eq!(triv.get(4).dims()[0], 3);
    triv.get(4).0.validate().unwrap();
    assert_eq!(triv.get(4).fixed_dim(&full_group(4), 0), 1);
}

#[test]
fn coinduced_dimensions() {
    let top = 12;
    let n0 = trivial_object(free(2, top), 0);
    let co = coinduce(&n0);
    assert_eq!(co.fixed.dims(), n0.dims());
    for n in 1..=3 {
        let co = coinduce(&trivial_point(n, top));
        for d in 0..=top {
            assert_eq!(co.fixed.dim(d), power_multisets(d, n, 1), "trivial, arity {n}, degree {d}");
        }
        let co = coinduce(&regular_object(n, top));
        for d in 0..=top {
            assert_eq!(co.fixed.dim(d), power_tuples(d, n), "regular, arity {n}, degree {d}");
        }
    }
}

#[test]
fn counit_is_an_equivalence_on_small_objects() {
    let top = 6;
    for n in 1..=2 {
        for nobj in [trivial_point(n, top), regular_object(n, top)] {
            let report = verify_quotient_equivalence(&nobj, 3).unwrap();
            assert!(report.holds(), "arity {n}: {report:?}");
        }
    }
}

#[test]
fn unit_kernel_and_cokernel_drop_a_level() {
    let top = 12;
    for n in 1..=2 {
        let report = verify_unit(&PresentedModule::free(n), n, top).unwrap();
        assert!(report.holds(), "F({n}): {report:?}");
        assert!(report.kernel_dims.iter().all(|&d| d == 0));
    }
    let f11 = tensor(&free(1, top), &free(1, top));
    let report = verify_unit(&present(&f11, f11.cert()).unwrap(), 2, top).unwrap();
    assert!(report.holds(), "F(1)⊗F(1): {report:?}");
}

#[test]
fn sigma_of_free_modules_is_concentrated() {
    let top = 12;
    for m in 1..=2 {
        let p = PresentedModule::free(m);
        for n in 0..=2 {
            let s = sigma(&p, n, top, None, 4).unwrap();
            s.0.validate().unwrap();
            if n == m {
                assert_eq!(s.dims()[..=4], [1, 0, 0, 0, 0]);
                assert_eq!(s.fixed_dim(&full_group(n), 0), 1);
            } else {
                assert!(s.is_zero(), "σ_{n}F({m})");
            }
        }
    }
}

#[test]
fn sigma_of_tensor_powers_is_regular() {
    let top = 12;
    let f11 = tensor(&free(1, top), &free(1, top));
    let p = present(&f11, f11.cert()).unwrap();
    let s = sigma(&p, 2, top, None, 4).unwrap();
    assert_eq!(s.dims()[..=4], [2, 0, 0, 0, 0]);
    assert_eq!(s.fixed_dim(&full_group(2), 0), 1);
    assert_eq!(s.fixed_dim(&trivial_group(2), 0), 2);
    assert!(sigma(&p, 1, top, None, 4).unwrap().is_zero());
}

#[test]
fn sigma_of_the_polynomial_module_is_trivial() {
    use krull_core::gf2::{binomial_mod2, BitVec};
    let d = 32;
    let poly = RealizedModule::build(2 * d, 2 * d, vec![1; 2 * d + 1], |k, e, _| {
        BitVec::from_bits(&[binomial_mod2(e as u64, k as u64)])
    });
    let p = present(&poly, d).unwrap();
    for n in 0..=2 {
        let s = sigma_capped(&p, n, d, 2 * d, None, 4).unwrap();
        s.0.validate().unwrap();
        assert_eq!(s.dims()[..=4], [1, 0, 0, 0, 0], "σ_{n}");
        assert_eq!(s.fixed_dim(&full_group(n), 0), 1);
    }
}

#[test]
fn sigma_is_monoidal_on_a_tensor_product() {
    let top = 16;
    let a = PresentedModule::free(1);
    let b = PresentedModule::free(2);
    let ab = tensor(&free(1, top), &free(2, top));
    let pab = present(&ab, ab.cert()).unwrap();
    let sa = sigma_sequence(&a, 3, top, None, 4).unwrap();
    let sb = sigma_sequence(&b, 3, top, None, 4).unwrap();
    let prod = boxtimes(&sa, &sb, 3);
    for n in 0..=3 {
        let s = sigma(&pab, n, top, None, 4).unwrap();
        assert_eq!(s.dims(), prod.get(n).dims(), "arity {n}");
        for h in subgroups(n) {
            for e in 0..=4 {
                assert_eq!(s.fixed_dim(&h, e), prod.get(n).fixed_dim(&h, e), "arity {n}");
            }
        }
    }
}
