use super::SuiteReport;
use crate::corpus::point;
use crate::kalg::{poly_algebra, s3_mod_q8};
use crate::krull::{
    boxtimes, coinduce, regular_object, sigma as sigma_of, sigma_capped, sigma_sequence, trivial_object, unit_module,
    verify_quotient_equivalence, verify_unit, SymmetricObject,
};
use crate::sym::{fixed_dim, regular_rep, subgroups};
use crate::umod::{direct_sum, free, hom_space, present, tensor, truncate_above, PresentedModule, RealizedModule};
use crate::Result;

/// Unordered `n`-tuples of powers of two, each at least `min`, with sum `d`.
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

fn tensor_power(n: usize, top: usize) -> RealizedModule {
    let f1 = free(1, top);
    (0..n).fold(free(0, top), |acc, _| tensor(&acc, &f1))
}

pub(super) fn adjunction(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("adjunction", degree);
    let top = degree;
    for n in 1..=3 {
        let co = coinduce(&trivial_object(unit_module(top), n));
        let want: Vec<usize> = (0..=top).map(|d| power_multisets(d, n, 1)).collect();
        r.check_eq(
            format!("(F(1)^⊗{n})^Σ_{n}: dimensions count multisets of powers of two"),
            Ok(co.fixed.dims().to_vec()),
            want,
        );
        let co = coinduce(&regular_object(n, top));
        let want: Vec<usize> = (0..=top).map(|d| power_tuples(d, n)).collect();
        r.check_eq(
            format!("(GF(2)[Σ_{n}] ⊗ F(1)^⊗{n})^Σ_{n} ≅ F(1)^⊗{n}"),
            Ok(co.fixed.dims().to_vec()),
            want,
        );
    }
    for n in 1..=2 {
        for (label, nobj) in [
            ("trivial", trivial_object(unit_module(top), n)),
            ("regular", regular_object(n, top)),
        ] {
            let report = verify_quotient_equivalence(&nobj, 3);
            r.check(
                format!("counit Tbar^{n}((N ⊗ F(1)^⊗{n})^Σ_{n}) -> N is an isomorphism, N {label}"),
                report.map(|rep| rep.holds()),
            );
        }
    }
    for n in 1..=2 {
        for (label, p) in [
            (format!("F({n})"), PresentedModule::free(n)),
            (format!("F(1)^⊗{n}"), present(&tensor_power(n, top), top).expect("within the window")),
        ] {
            let report = verify_unit(&p, n, top);
            if let Ok(rep) = &report {
                r.table(format!("unit kernel of {label}"), rep.kernel_dims.clone());
                r.table(format!("unit cokernel of {label}"), rep.cokernel_dims.clone());
            }
            r.check(
                format!("unit {label} -> (Tbar^{n}{label} ⊗ F(1)^⊗{n})^Σ_{n} has kernel and cokernel in U_{}", n - 1),
                report.map(|rep| rep.holds()),
            );
        }
    }
    r
}

/// Dimensions and fixed-point dimensions of two symmetric objects agree
/// through `out` for every subgroup.
fn same_object(a: &SymmetricObject, b: &SymmetricObject, out: usize) -> bool {
    let n = a.arity();
    a.dims()[..=out] == b.dims()[..=out]
        && subgroups(n)
            .iter()
            .all(|h| (0..=out).all(|e| a.fixed_dim(h, e) == b.fixed_dim(h, e)))
}

fn regular_fixed_dims_match(s: &SymmetricObject, n: usize) -> bool {
    let size: usize = (1..=n).product();
    let rho = regular_rep(n);
    s.dims()[0] == size
        && s.dims()[1..].iter().all(|&d| d == 0)
        && subgroups(n)
            .iter()
            .all(|h| s.fixed_dim(h, 0) == fixed_dim(size, &h.generators, &rho))
}

pub(super) fn sigma(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("sigma", degree);
    if let Err(e) = sigma_into(&mut r, degree) {
        r.check("the suite ran to completion", Err(e));
    }
    r
}

fn sigma_into(r: &mut SuiteReport, degree: usize) -> Result<()> {
    let out = 4;
    let top = degree;
    for m in 0..=3 {
        let p = PresentedModule::free(m);
        for n in 0..=3 {
            let s = sigma_of(&p, n, top, None, out)?;
            let ok = if n == m {
                s.dims()[..=out] == [1, 0, 0, 0, 0] && s.validate().is_ok()
            } else {
                s.is_zero()
            };
            let want = if n == m { "ℤ/2" } else { "0" };
            r.check(format!("σ_{n} F({m}) = {want}"), Ok(ok));
        }
    }
    for m in 1..=3 {
        let f = tensor_power(m, top);
        let p = present(&f, top)?;
        for n in 0..=3 {
            let s = sigma_of(&p, n, top, None, out)?;
            if n == m {
                r.check(
                    format!("σ_{n} F(1)^⊗{m} = GF(2)[Σ_{m}] (dimension and fixed points)"),
                    Ok(regular_fixed_dims_match(&s, m) && s.validate().is_ok()),
                );
            } else {
                r.check(format!("σ_{n} F(1)^⊗{m} = 0"), Ok(s.is_zero()));
            }
        }
    }

    // σ_*(F(1) ⊗ F(2)) = σ_*F(1) ⊠ σ_*F(2)
    let ab = tensor(&free(1, top), &free(2, top));
    let pab = present(&ab, top)?;
    let sa = sigma_sequence(&PresentedModule::free(1), 3, top, None, out)?;
    let sb = sigma_sequence(&PresentedModule::free(2), 3, top, None, out)?;
    let prod = boxtimes(&sa, &sb, 3);
    for n in 0..=3 {
        let s = sigma_of(&pab, n, top, None, out)?;
        r.table(format!("σ_{n}(F(1)⊗F(2))"), s.dims().to_vec());
        r.check(
            format!("σ_{n}(F(1) ⊗ F(2)) ≅ (σ_*F(1) ⊠ σ_*F(2))_{n} in dimensions and fixed points"),
            Ok(same_object(&s, prod.get(n), out)),
        );
    }

    // dim (σ_n M)^s = dim Hom(F(1)^⊗n, R_s M) for locally finite M, where
    // R_s M is M^s placed in degree 0
    let lf_top = 16;
    let q8 = s3_mod_q8(lf_top)?;
    let locally_finite: Vec<(&str, RealizedModule)> = vec![
        ("Σℤ/2", point(1, lf_top)),
        ("F(1)/F(1)^{>2}", truncate_above(&free(1, lf_top), 2)),
        ("ℤ/2 ⊕ Σ²ℤ/2", direct_sum(&free(0, lf_top), &point(2, lf_top)).0),
        ("H*(S³/Q₈)", (**q8.module()).clone()),
    ];
    for (name, m) in &locally_finite {
        let p = present(m, lf_top)?;
        let mut ok = true;
        for n in 0..=2 {
            let s = sigma_of(&p, n, lf_top, None, out)?;
            let source = present(&tensor_power(n, lf_top), lf_top)?;
            for e in 0..=out {
                let rs = RealizedModule::build(lf_top, lf_top, {
                    let mut d = vec![0; lf_top + 1];
                    d[0] = m.dim(e);
                    d
                }, |_, _, _| unreachable!("concentrated in degree 0"));
                ok &= s.dims()[e] == hom_space(&source, &rs, 0)?.dim();
            }
        }
        r.check(format!("dim (σ_n {name})^s = dim Hom(F(1)^⊗n, R_s {name}), n <= 2, s <= {out}"), Ok(ok));
    }
    // and for H*(BV) at s = 0
    for rank in 1..=2 {
        let d = if rank == 1 { degree } else { degree.min(24) };
        let alg = poly_algebra(rank, 2 * d);
        let p = present(alg.module(), d)?;
        for n in 0..=2 {
            let s = sigma_capped(&p, n, d, 2 * d, None, out)?;
            let source = present(&tensor_power(n, 2 * d), 2 * d)?;
            let hom = hom_space(&source, alg.module(), 0)?.dim();
            r.table(format!("σ_{n} H*(BV), rank {rank}"), s.dims().to_vec());
            r.check_eq(
                format!("dim (σ_{n} H*(BV))^0 = dim Hom(F(1)^⊗{n}, H*(BV)), rank {rank}"),
                Ok(s.dims()[0]),
                hom,
            );
        }
    }
    Ok(())
}
