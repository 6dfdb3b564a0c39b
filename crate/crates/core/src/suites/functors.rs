use super::SuiteReport;
use crate::genfun::{
    delta, l_of, lambda2_tensor_splitting, nil_closure, p_n, p_n_spaces, poly_degree, standard_functor,
    tensor as tensor_functors, FiniteFunctor, PolyDegree, StandardFunctor::*,
};
use crate::gf2::{BitVec, Subspace};
use crate::krull::k_n;
use crate::lannes::tbar;
use crate::umod::{direct_sum, free, present, suspend, tensor, PresentedModule, RealizedModule};
use crate::Result;

/// Functors are evaluated on `F₂^k` for `k <= CAP`.
const CAP: usize = 4;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

pub(super) fn functors(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("functors", degree);
    degrees(&mut r);
    if let Err(e) = polynomial_parts(&mut r) {
        r.check("the polynomial-part checks ran to completion", Err(e));
    }
    if let Err(e) = bridge(&mut r) {
        r.check("the bridge checks ran to completion", Err(e));
    }
    r.check(
        "Λ² ⊗ Id ≅ Λ³ ⊕ L with L simple, split by multiplication and comultiplication",
        lambda2_tensor_splitting(3).map(|s| s.holds() && s.simple),
    );
    r
}

fn degrees(r: &mut SuiteReport) {
    let cases = [
        (Const, PolyDegree::Degree(0)),
        (Id, PolyDegree::Degree(1)),
        (Gamma(1), PolyDegree::Degree(1)),
        (Gamma(2), PolyDegree::Degree(2)),
        (Gamma(3), PolyDegree::Degree(3)),
        (Lambda(2), PolyDegree::Degree(2)),
        (TensorPower(3), PolyDegree::Degree(3)),
        (BarP(1), PolyDegree::NotPolynomialWithin(CAP)),
        (I(1), PolyDegree::NotPolynomialWithin(CAP)),
    ];
    for (which, want) in cases {
        r.check_eq(format!("degree of {which}"), Ok(poly_degree(&standard_functor(which, CAP))), want);
    }
}

fn tensor_vec(x: &BitVec, y: &BitVec) -> BitVec {
    BitVec::from_indices(
        x.len() * y.len(),
        x.iter_ones().flat_map(|i| y.iter_ones().map(move |j| i * y.len() + j)),
    )
}

/// Whether `p_n(F ⊗ G) = Σ_{l+m=n} p_l F ⊗ p_m G` at every rank where `p_n` is exact.
fn tensor_rule_holds(f: &FiniteFunctor, g: &FiniteFunctor, n: usize) -> Result<bool> {
    let fg = tensor_functors(f, g);
    let inside = p_n_spaces(&fg, n)?;
    let pf: Vec<Vec<Subspace>> = (0..=n).map(|l| p_n_spaces(f, l)).collect::<Result<_>>()?;
    let pg: Vec<Vec<Subspace>> = (0..=n).map(|l| p_n_spaces(g, l)).collect::<Result<_>>()?;
    for k in 0..CAP - n {
        let mut sum = Subspace::zero(fg.dim(k));
        for l in 0..=n {
            for x in pf[l][k].basis() {
                for y in pg[n - l][k].basis() {
                    sum.insert(tensor_vec(x, y));
                }
            }
        }
        if !(sum.is_subspace_of(&inside[k]) && inside[k].is_subspace_of(&sum)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn polynomial_parts(r: &mut SuiteReport) -> Result<()> {
    let i = standard_functor(I(1), CAP);
    for n in 0..=2 {
        let p = p_n(&i, n)?;
        r.table(format!("p_{n} I"), p.dims().to_vec());
        let want: Vec<usize> = (0..CAP - n).map(|k| (0..=n).map(|j| binom(k, j)).sum()).collect();
        r.check_eq(
            format!("dim p_{n} I(F₂^k) = Σ_{{i <= {n}}} C(k, i)"),
            Ok(p.dims()[..CAP - n].to_vec()),
            want,
        );
    }
    let family = [I(1), Sym(2), Id];
    for a in family {
        for b in family {
            let (f, g) = (standard_functor(a, CAP), standard_functor(b, CAP));
            for n in 0..=2 {
                r.check(
                    format!("p_{n}({a} ⊗ {b}) = Σ_{{l+m={n}}} p_l {a} ⊗ p_m {b}"),
                    tensor_rule_holds(&f, &g, n),
                );
            }
        }
    }
    Ok(())
}

fn bridge(r: &mut SuiteReport) -> Result<()> {
    let cap = 3;
    for n in 0..=3 {
        let l = l_of(&PresentedModule::free(n), cap)?;
        r.check_eq(
            format!("l(F({n})) ≅ H_{n} in dimensions"),
            Ok(l.dims().to_vec()),
            standard_functor(Gamma(n), cap).dims().to_vec(),
        );
    }
    let top = 10;
    let f1 = free(1, top);
    let f2 = free(2, top);
    let full = |m: &RealizedModule| present(m, m.cert());
    let (sum, _, _) = direct_sum(&suspend(&free(0, top), 1), &f1);
    let corpus = [
        ("F(2)", PresentedModule::free(2)),
        ("F(1)⊗F(1)", full(&tensor(&f1, &f1))?),
        ("F(1)⊗F(2)", full(&tensor(&f1, &f2))?),
        ("Σℤ/2⊕F(1)", full(&sum)?),
    ];
    for (name, p) in &corpus {
        let l = l_of(p, cap)?;
        let lt = l_of(&tbar(p), cap - 1)?;
        r.check_eq(format!("Δ l({name}) ≅ l(Tbar {name})"), Ok(delta(&l)?.dims().to_vec()), lt.dims().to_vec());
        for n in 0..cap {
            let (sub, _) = k_n(p, n, top)?;
            let lk = l_of(&present(&sub, sub.cert())?, cap - n - 1)?;
            r.check_eq(
                format!("l(k_{n} {name}) ≅ p_{n} l({name})"),
                Ok(lk.dims().to_vec()),
                p_n(&l, n)?.dims().to_vec(),
            );
        }
    }
    let c = nil_closure(&PresentedModule::free(1), 4, cap)?;
    r.check(
        "the Nil-closure r(l F(1)) is F(1), certified",
        Ok(c.certified && c.module.dims() == [0, 1, 1, 0, 1]),
    );
    Ok(())
}
