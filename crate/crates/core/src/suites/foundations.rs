use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::SuiteReport;
use crate::gf2::{BitVec, Subspace};
use crate::krull::nil_1;
use crate::lannes::{is_in_Un, krull_level, tbar_iter, unit_map};
use crate::steenrod::{adem_normalize, all_admissibles, compose, Monomial, SqPoly, SqWord};
use crate::sym::{fixed_dim, regular_rep, subgroups};
use crate::umod::{
    direct_sum, free, lambda_map, loops as loop_functors, phi, present, suspend, tensor, PresentedModule,
    RealizedModule,
};

/// `C(n, k) mod 2` by the subset criterion, kept apart from the engine's Lucas code.
fn odd_binomial(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

/// Brute-force normal form: rewrite the leftmost inadmissible pair until
/// nothing changes, with no memoization.
fn rewrite(w: &[u32]) -> BTreeMap<Vec<u32>, ()> {
    let mut todo: Vec<Vec<u32>> = vec![w.to_vec()];
    let mut done: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
    while let Some(w) = todo.pop() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] < 2 * w[i + 1]) else {
            if done.remove(&w).is_none() {
                done.insert(w, ());
            }
            continue;
        };
        let (a, b) = (w[i] as i64, w[i + 1] as i64);
        for j in 0..=a / 2 {
            if !odd_binomial(b - 1 - j, a - 2 * j) {
                continue;
            }
            let mut next = w[..i].to_vec();
            next.push((a + b - j) as u32);
            if j > 0 {
                next.push(j as u32);
            }
            next.extend_from_slice(&w[i + 2..]);
            todo.push(next);
        }
    }
    done
}

fn poly_of(monomials: &[&[u32]]) -> SqPoly {
    let mut p = SqPoly::zero();
    for m in monomials {
        p.toggle(Monomial::new(m.to_vec()).expect("admissible"));
    }
    p
}

/// Every word of positive exponents with the given degree.
fn words(d: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for a in 1..=d {
        for mut rest in words(d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Admissible sequences of degree `d` correspond to partitions of `d` into
/// parts `2^k - 1`.
fn admissible_counts(top: usize) -> Vec<usize> {
    let mut count = vec![0usize; top + 1];
    count[0] = 1;
    let mut part = 1;
    while part <= top {
        for d in part..=top {
            count[d] += count[d - part];
        }
        part = 2 * part + 1;
    }
    count
}

pub(super) fn adem(_degree: usize) -> SuiteReport {
    const TOP: u32 = 30;
    let mut r = SuiteReport::new("adem", TOP as usize);
    let nf = |e: &[u32]| adem_normalize(&SqWord::new(e.iter().copied()));
    r.check_eq("Sq^1 Sq^1 = 0", Ok(nf(&[1, 1])), SqPoly::zero());
    r.check_eq("Sq^2 Sq^2 = Sq^3 Sq^1", Ok(nf(&[2, 2])), poly_of(&[&[3, 1]]));
    r.check_eq("Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1", Ok(nf(&[2, 3])), poly_of(&[&[5], &[4, 1]]));

    // Normalization folds from the right, so the normal form of `Sq^a w` is
    // determined by `a` and the normal form of `w`. Closing the set of
    // normal forms under that step therefore visits every word of degree
    // <= TOP; each step is also replayed on a concrete representative word.
    let mut reps: Vec<HashMap<SqPoly, Vec<u32>>> = vec![HashMap::from([(SqPoly::one(), Vec::new())])];
    let mut all_admissible = true;
    let mut homogeneous = true;
    let mut replayed = true;
    let mut reached = Vec::new();
    for d in 1..=TOP {
        let mut level: HashMap<SqPoly, Vec<u32>> = HashMap::new();
        for a in 1..=d {
            for (p, w) in &reps[(d - a) as usize] {
                let step = compose(&SqPoly::sq(a), p);
                let mut word = vec![a];
                word.extend_from_slice(w);
                replayed &= adem_normalize(&SqWord::new(word.iter().copied())) == step;
                all_admissible &= step.terms().all(|m| m.as_word().is_admissible());
                homogeneous &= step.terms().all(|m| m.degree() == d);
                level.entry(step).or_insert(word);
            }
        }
        reached.push(level.len());
        reps.push(level);
    }
    r.table("distinct normal forms by degree", reached);
    r.check("every word of degree <= 30 normalizes to admissible monomials", Ok(all_admissible));
    r.check("normalization preserves degree", Ok(homogeneous));
    r.check("normal forms of words agree with the right-fold recursion", Ok(replayed));
    let idempotent = reps.iter().flat_map(|l| l.keys()).all(|p| {
        p.terms()
            .all(|m| adem_normalize(&m.as_word()) == SqPoly::from_monomial(m.clone()))
    });
    r.check("normalizing a normal form changes nothing (degree <= 30)", Ok(idempotent));
    let fixed = (0..=40).all(|d| {
        all_admissibles(d)
            .iter()
            .all(|m| adem_normalize(&m.as_word()) == SqPoly::from_monomial(m.clone()))
    });
    r.check("admissible monomials are normal forms (degree <= 40)", Ok(fixed));

    // rewrite-order independence against a brute-force leftmost rewriter
    let brute = (0..=12).flat_map(words).all(|w| {
        let want: Vec<Vec<u32>> = rewrite(&w).into_keys().collect();
        let got: Vec<Vec<u32>> = nf(&w).terms().map(|m| m.exponents().to_vec()).collect();
        let mut want = want;
        want.sort();
        got == want
    });
    r.check("normal form is independent of the rewriting order (all words, degree <= 12)", Ok(brute));

    // associativity on every triple of admissible monomials through degree 20,
    // and on seeded random triples through degree 30
    let basis: Vec<Vec<SqPoly>> = (0..=TOP)
        .map(|d| all_admissibles(d).iter().cloned().map(SqPoly::from_monomial).collect())
        .collect();
    let assoc = |p: &SqPoly, q: &SqPoly, s: &SqPoly| compose(&compose(p, q), s) == compose(p, &compose(q, s));
    let mut exhaustive = true;
    for a in 0..=20usize {
        for b in 0..=20 - a {
            for c in 0..=20 - a - b {
                for p in &basis[a] {
                    for q in &basis[b] {
                        for s in &basis[c] {
                            exhaustive &= assoc(p, q, s);
                        }
                    }
                }
            }
        }
    }
    r.check("(pq)s = p(qs) for admissible monomials, total degree <= 20", Ok(exhaustive));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let level: Vec<Vec<SqPoly>> = reps.iter().map(|l| l.keys().cloned().collect()).collect();
    let mut random = true;
    for _ in 0..2000 {
        let a = rng.gen_range(0..=TOP as usize);
        let b = rng.gen_range(0..=TOP as usize - a);
        let c = rng.gen_range(0..=TOP as usize - a - b);
        let pick = |rng: &mut StdRng, d: usize| level[d][rng.gen_range(0..level[d].len())].clone();
        let (p, q, s) = (pick(&mut rng, a), pick(&mut rng, b), pick(&mut rng, c));
        random &= assoc(&p, &q, &s);
    }
    r.check("(pq)s = p(qs) on random triples, total degree <= 30", Ok(random));

    let counts = admissible_counts(TOP as usize);
    let got: Vec<usize> = (0..=TOP).map(|d| all_admissibles(d).len()).collect();
    r.table("admissible monomials by degree", got.clone());
    r.check_eq("admissible counts = partitions into parts 2^k - 1", Ok(got), counts);
    r
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

pub(super) fn membership(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("membership", degree);
    for n in 0..=3 {
        let p = PresentedModule::free(n);
        r.check(format!("F({n}) ∈ U_{n}: Tbar^{} F({n}) = 0", n + 1), Ok(is_in_Un(&p, n)));
        if n > 0 {
            r.check(
                format!("F({n}) ∉ U_{}: Tbar^{n} F({n}) ≠ 0", n - 1),
                Ok(!is_in_Un(&p, n - 1)),
            );
        }
        r.check(
            format!("the unit F({n}) -> Tbar^{} F({n}) ⊗ H^(⊗{}) vanishes through degree {degree}", n + 1, n + 1),
            Ok(unit_map(&p, n, degree).is_zero()),
        );
        // Tbar F(n) = ⊕_{j<n} F(j), so Tbar^k F(n) = ⊕_j C(n-j-1, k-1) F(j)
        let out = degree.min(12);
        for k in 1..=n + 1 {
            let e = tbar_iter(&p, k, out);
            let want: Vec<usize> = (0..=out)
                .map(|d| (0..n).map(|j| binomial(n - j - 1, k - 1) * free(j, out).dim(d)).sum())
                .collect();
            r.check_eq(
                format!("dim Tbar^{k} F({n}) = Σ_j C({n}-j-1, {}) dim F(j)", k - 1),
                Ok(e.module.dims().to_vec()),
                want,
            );
        }
    }
    let top = degree;
    let f1 = free(1, top);
    let f2 = free(2, top);
    let pairs = [(&f1, 1, &f1, 1), (&f1, 1, &f2, 2)];
    for (m, a, n, b) in pairs {
        let p = present(&tensor(m, n), top).expect("within the window");
        r.check_eq(
            format!("least Krull level of F({a}) ⊗ F({b}) is {}", a + b),
            Ok(krull_level(&p, 4)),
            Some(a + b),
        );
    }
    r
}

fn tensor_power(n: usize, top: usize) -> RealizedModule {
    let f1 = free(1, top);
    (1..n).fold(f1.clone(), |acc, _| tensor(&acc, &f1))
}

pub(super) fn regular(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("regular", degree);
    for n in 1..=3usize {
        let top = 8 * n;
        let p = present(&tensor_power(n, top), top).expect("within the window");
        let out = 4;
        let e = tbar_iter(&p, n, out);
        let size: usize = (1..=n).product();
        r.table(format!("Tbar^{n} F(1)^⊗{n}"), e.module.dims().to_vec());
        r.check("the Σ_n action is a Sq-equivariant representation", Ok(e.validate().is_ok()));
        let mut want = vec![0; out + 1];
        want[0] = size;
        r.check_eq(format!("Tbar^{n} F(1)^⊗{n} is {size}-dimensional, in degree 0"), Ok(e.module.dims().to_vec()), want);
        // g ↦ g·v is an isomorphism GF(2)[Σ_n] -> Tbar^n F(1)^⊗n for some v
        let free_orbit = (0..e.module.dim(0)).any(|i| {
            let v = BitVec::unit(size, i);
            Subspace::spanned_by(size, e.group.iter().map(|g| e.matrix(g, 0).apply(&v))).dim() == size
        });
        r.check(format!("some vector of Tbar^{n} F(1)^⊗{n} has a free Σ_{n}-orbit spanning it"), Ok(free_orbit));
        let rho = regular_rep(n);
        let fixed = subgroups(n)
            .iter()
            .all(|h| e.fixed_dim(h, 0) == fixed_dim(size, &h.generators, &rho));
        r.check(format!("fixed-point dimensions match GF(2)[Σ_{n}] for every subgroup"), Ok(fixed));
    }
    r
}

pub(super) fn loops(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("loops", degree);
    let top = degree;
    let point = suspend(&free(0, top), 1);
    let corpus: Vec<(&str, RealizedModule)> = vec![
        ("F(0)", free(0, top)),
        ("Σℤ/2", point.clone()),
        ("F(1)", free(1, top)),
        ("F(2)", free(2, top)),
        ("F(3)", free(3, top)),
        ("F(1)⊗F(1)", tensor(&free(1, top), &free(1, top))),
        ("ΦF(2)", phi(&free(2, top))),
        ("ΣF(2)", suspend(&free(2, top), 1)),
        ("F(0)⊕F(0)", direct_sum(&free(0, top), &free(0, top)).0),
    ];
    for (name, m) in &corpus {
        let m = Arc::new(m.clone());
        let lam = lambda_map(&m);
        let (ker, _) = lam.kernel();
        let (coker, _) = lam.cokernel();
        // 0 -> ΣΩ^1M -> ΦM -> M -> ΣΩM -> 0
        let Ok(l) = loop_functors(&m) else {
            r.check(format!("Ω{name} and Ω^1{name} desuspend"), Ok(false));
            continue;
        };
        let so1 = suspend(&l.omega1, 1);
        let so = suspend(&l.omega, 1);
        let ph = lam.source();
        let euler = (0..top).all(|d| so1.dim(d) + m.dim(d) == ph.dim(d) + so.dim(d));
        r.check(
            format!("0 -> ΣΩ^1{name} -> Φ{name} -> {name} -> ΣΩ{name} -> 0 is exact below degree {top}"),
            Ok(euler && so1.dims()[..top] == ker.dims()[..top] && so.dims()[..top] == coker.dims()[..top]),
        );
        r.check(format!("λ: Φ{name} -> {name} commutes with the squares"), Ok(lam.is_equivariant()));
    }
    // closed forms: ΩF(n) = F(n-1), Ω^1F(n) = 0; ΩΣN = N, ΣΩ^1ΣN = ΦΣN
    for n in 1..=3 {
        let l = loop_functors(&Arc::new(free(n, top))).expect("F(n) desuspends");
        let t = top - 1;
        r.check_eq(format!("ΩF({n}) ≅ F({})", n - 1), Ok(l.omega.dims()[..t].to_vec()), free(n - 1, top).dims()[..t].to_vec());
        r.check(format!("Ω^1F({n}) = 0"), Ok(l.omega1.is_zero()));
    }
    let sf2 = suspend(&free(2, top), 1);
    let l = loop_functors(&Arc::new(sf2.clone())).expect("ΣF(2) desuspends");
    let t = top - 2;
    r.check_eq("ΩΣF(2) ≅ F(2)", Ok(l.omega.dims()[..t].to_vec()), free(2, top).dims()[..t].to_vec());
    r.check_eq(
        "ΣΩ^1ΣF(2) ≅ ΦΣF(2)",
        Ok(suspend(&l.omega1, 1).dims()[..t].to_vec()),
        phi(&sf2).dims()[..t].to_vec(),
    );

    // for reduced M: M ∈ U_n  ⇔  ΩM ∈ U_{n-1}
    let reduced: Vec<(&str, RealizedModule)> = corpus
        .iter()
        .filter(|(_, m)| nil_1(m).spaces[..=nil_1(m).certified].iter().all(|s| s.dim() == 0))
        .cloned()
        .collect();
    let names: Vec<&str> = reduced.iter().map(|(n, _)| *n).collect();
    r.check_eq(
        "reduced corpus members (nil_1 = 0 through the certified window)",
        Ok(names.clone()),
        vec!["F(0)", "F(1)", "F(2)", "F(3)", "F(1)⊗F(1)", "ΦF(2)", "F(0)⊕F(0)"],
    );
    for (name, m) in &reduced {
        let om = loop_functors(&Arc::new(m.clone())).expect("reduced modules desuspend").omega;
        let p = present(m, m.cert()).expect("within the window");
        let po = present(&om, om.cert()).expect("within the window");
        let agree = (1..=3).all(|n| is_in_Un(&p, n) == is_in_Un(&po, n - 1));
        r.check(format!("{name} ∈ U_n ⇔ Ω{name} ∈ U_(n-1), n = 1..3"), Ok(agree));
        // reduced and Tbar M = 0 forces M to be concentrated in degree 0
        let implication = !is_in_Un(&p, 0) || m.dims()[1..].iter().all(|&d| d == 0);
        r.check(format!("{name} reduced with Tbar = 0 ⇒ concentrated in degree 0"), Ok(implication));
    }
    r
}
