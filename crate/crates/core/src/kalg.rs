//! Unstable algebras.
//!
//! Every algebra here is a quotient of a graded polynomial ring
//! `GF(2)[g_1, …, g_r]` by an ideal, expanded degree by degree. The Steenrod
//! action is supplied on the generators only and extended by the Cartan
//! formula; stability of the ideal is checked, never assumed. Quotient basis
//! elements are monomials, so products are computed monomial by monomial.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::gf2::{binomial_mod2, BitVec, QuotientMap, Subspace};
use crate::krull::relative_spaces;
use crate::umod::{ModuleMap, RealizedModule};
use crate::{Error, Result};

/// Exponent vector of a monomial in the generators.
pub type Exponents = Vec<u32>;

/// A polynomial with GF(2) coefficients.
pub type Poly = BTreeSet<Exponents>;

fn toggle(p: &mut Poly, e: Exponents) {
    if !p.remove(&e) {
        p.insert(e);
    }
}

fn poly_of(monos: impl IntoIterator<Item = Exponents>) -> Poly {
    let mut p = Poly::new();
    for m in monos {
        toggle(&mut p, m);
    }
    p
}

fn mono_mul(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Generators, their Steenrod operations and the defining relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    /// `sq[i]` lists `(k, Sq^k g_i)` for the nonzero operations with `k >= 1`.
    pub sq: Vec<Vec<(usize, Poly)>>,
    pub relations: Vec<Poly>,
    /// Generators are primitive and there are no relations; the algebra is
    /// then a Hopf algebra with the induced coproduct.
    pub primitively_generated: bool,
}

impl AlgebraPresentation {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    fn mono_degree(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.degrees).map(|(&x, &d)| x as usize * d).sum()
    }

    /// The degree of a homogeneous polynomial, `None` for zero.
    pub fn poly_degree(&self, p: &Poly) -> Option<usize> {
        let mut it = p.iter().map(|m| self.mono_degree(m));
        let d = it.next()?;
        assert!(it.all(|e| e == d), "inhomogeneous polynomial");
        Some(d)
    }

    fn generator(&self, i: usize) -> Exponents {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// `A ⊗ B` on the disjoint union of generators and relations.
    pub fn tensor(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        let (r, s) = (self.rank(), other.rank());
        let widen = |p: &Poly, left: bool| -> Poly {
            p.iter()
                .map(|e| {
                    let mut out = vec![0; r + s];
                    let off = if left { 0 } else { r };
                    out[off..off + e.len()].copy_from_slice(e);
                    out
                })
                .collect()
        };
        let mut sq: Vec<Vec<(usize, Poly)>> = self
            .sq
            .iter()
            .map(|ops| ops.iter().map(|(k, p)| (*k, widen(p, true))).collect())
            .collect();
        sq.extend(other.sq.iter().map(|ops| ops.iter().map(|(k, p)| (*k, widen(p, false))).collect()));
        let mut relations: Vec<Poly> = self.relations.iter().map(|p| widen(p, true)).collect();
        relations.extend(other.relations.iter().map(|p| widen(p, false)));
        AlgebraPresentation {
            names: self.names.iter().chain(&other.names).cloned().collect(),
            degrees: self.degrees.iter().chain(&other.degrees).copied().collect(),
            sq,
            relations,
            primitively_generated: self.primitively_generated && other.primitively_generated,
        }
    }

    /// The Frobenius double `ΦK`: degrees double and `Sq^{2k}` acts as `Sq^k`.
    pub fn phi(&self) -> AlgebraPresentation {
        AlgebraPresentation {
            names: self.names.iter().map(|n| format!("φ{n}")).collect(),
            degrees: self.degrees.iter().map(|d| 2 * d).collect(),
            sq: self
                .sq
                .iter()
                .map(|ops| ops.iter().map(|(k, p)| (2 * k, p.clone())).collect())
                .collect(),
            relations: self.relations.clone(),
            primitively_generated: self.primitively_generated,
        }
    }

    /// Expands the algebra through degree `top`.
    pub fn expand(&self, top: usize) -> Result<UnstableAlgebra> {
        assert!(self.degrees.iter().all(|&d| d >= 1), "generators live in positive degrees");
        let monomials = self.monomials(top);
        let index: Vec<HashMap<Exponents, usize>> = monomials
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let vec_of = |d: usize, p: &Poly| -> BitVec {
            BitVec::from_indices(monomials[d].len(), p.iter().map(|m| index[d][m]))
        };
        let free_sq = self.free_sq(top, &monomials, &index);

        let mut ideal: Vec<Subspace> = monomials.iter().map(|ms| Subspace::zero(ms.len())).collect();
        for r in &self.relations {
            let Some(e) = self.poly_degree(r) else { continue };
            for d in e..=top {
                for m in &monomials[d - e] {
                    let v = poly_of(r.iter().map(|x| mono_mul(x, m)));
                    ideal[d].insert(vec_of(d, &v));
                }
            }
        }
        for (ri, r) in self.relations.iter().enumerate() {
            let Some(e) = self.poly_degree(r) else { continue };
            if e > top {
                continue;
            }
            let rv = vec_of(e, r);
            for k in 1..=top - e {
                let mut out = BitVec::zeros(monomials[e + k].len());
                for j in rv.iter_ones() {
                    out.xor_assign(&free_sq[e][k][j]);
                }
                if !ideal[e + k].contains(&out) {
                    return Err(Error::IdealNotStable { k: k as u32, relation: ri });
                }
            }
        }

        let quotients: Vec<QuotientMap> = ideal.into_iter().map(QuotientMap::new).collect();
        let dims: Vec<usize> = quotients.iter().map(QuotientMap::dim).collect();
        let basis: Vec<Vec<Exponents>> = quotients
            .iter()
            .zip(&monomials)
            .map(|(q, ms)| (0..q.dim()).map(|j| ms[q.lift(j).first_one().unwrap()].clone()).collect())
            .collect();
        let labels = basis.iter().map(|b| b.iter().map(|e| self.label(e)).collect()).collect();
        let module = RealizedModule::build(top, top, dims, |k, d, i| {
            let m = &basis[d][i];
            quotients[d + k].project(&free_sq[d][k][index[d][m]])
        })
        .with_labels(labels);
        Ok(UnstableAlgebra {
            presentation: self.clone(),
            module: Arc::new(module),
            monomials,
            index,
            quotients,
            basis,
        })
    }

    /// Monomials of each degree through `top`, in lexicographic order of exponents.
    fn monomials(&self, top: usize) -> Vec<Vec<Exponents>> {
        let mut out: Vec<Vec<Exponents>> = vec![Vec::new(); top + 1];
        let mut cur = vec![0u32; self.rank()];
        fn rec(p: &AlgebraPresentation, i: usize, deg: usize, top: usize, cur: &mut Exponents, out: &mut [Vec<Exponents>]) {
            if i == p.rank() {
                out[deg].push(cur.clone());
                return;
            }
            let mut e = 0;
            while deg + e * p.degrees[i] <= top {
                cur[i] = e as u32;
                rec(p, i + 1, deg + e * p.degrees[i], top, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        rec(self, 0, 0, top, &mut cur, &mut out);
        for ms in &mut out {
            ms.sort();
        }
        out
    }

    /// `free_sq[d][k][j]`: `Sq^k` of monomial `j` of degree `d` in the
    /// polynomial ring, by the Cartan formula on a leading generator.
    fn free_sq(
        &self,
        top: usize,
        monomials: &[Vec<Exponents>],
        index: &[HashMap<Exponents, usize>],
    ) -> Vec<Vec<Vec<BitVec>>> {
        let gen_sq: Vec<HashMap<usize, Poly>> = (0..self.rank())
            .map(|i| {
                let mut ops: HashMap<usize, Poly> = self.sq[i].iter().cloned().collect();
                for (k, p) in &ops {
                    if let Some(d) = self.poly_degree(p) {
                        assert_eq!(d, self.degrees[i] + k, "Sq^{k} of {} has the wrong degree", self.names[i]);
                    }
                }
                ops.insert(0, [self.generator(i)].into_iter().collect());
                ops
            })
            .collect();
        let mut table: Vec<Vec<Vec<BitVec>>> = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut by_k: Vec<Vec<BitVec>> = Vec::with_capacity(top - d + 1);
            for k in 0..=top - d {
                let col = monomials[d]
                    .iter()
                    .map(|m| {
                        let mut out = BitVec::zeros(monomials[d + k].len());
                        let Some(i) = m.iter().position(|&x| x > 0) else {
                            if k == 0 {
                                out.flip(0);
                            }
                            return out;
                        };
                        let mut rest = m.clone();
                        rest[i] -= 1;
                        let rd = d - self.degrees[i];
                        let ri = index[rd][&rest];
                        for (j, sg) in &gen_sq[i] {
                            if *j > k {
                                continue;
                            }
                            let sr = &table[rd][k - j][ri];
                            for g in sg {
                                for t in sr.iter_ones() {
                                    let prod = mono_mul(g, &monomials[rd + k - j][t]);
                                    out.flip(index[d + k][&prod]);
                                }
                            }
                        }
                        out
                    })
                    .collect();
                by_k.push(col);
            }
            table.push(by_k);
        }
        table
    }

    fn label(&self, e: &[u32]) -> String {
        if e.iter().all(|&x| x == 0) {
            return "1".to_string();
        }
        let mut s = String::new();
        for (x, name) in e.iter().zip(&self.names) {
            match x {
                0 => {}
                1 => s.push_str(name),
                _ => {
                    let _ = write!(s, "{name}^{x}");
                }
            }
        }
        s
    }
}

/// A degree-truncated unstable algebra.
#[derive(Clone, Debug)]
pub struct UnstableAlgebra {
    presentation: AlgebraPresentation,
    module: Arc<RealizedModule>,
    monomials: Vec<Vec<Exponents>>,
    index: Vec<HashMap<Exponents, usize>>,
    quotients: Vec<QuotientMap>,
    basis: Vec<Vec<Exponents>>,
}

impl UnstableAlgebra {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn module(&self) -> &Arc<RealizedModule> {
        &self.module
    }

    pub fn top(&self) -> usize {
        self.module.top()
    }

    pub fn dims(&self) -> &[usize] {
        self.module.dims()
    }

    /// The monomial representing basis element `i` of degree `d`.
    pub fn basis_monomial(&self, d: usize, i: usize) -> &Exponents {
        &self.basis[d][i]
    }

    /// The class of a monomial of degree `d`.
    pub fn class_of(&self, d: usize, m: &Exponents) -> BitVec {
        self.quotients[d].project(&BitVec::unit(self.monomials[d].len(), self.index[d][m]))
    }

    /// The unit `1 ∈ K^0`.
    pub fn unit(&self) -> BitVec {
        BitVec::unit(self.module.dim(0), 0)
    }

    /// `x·y` for `x ∈ K^a`, `y ∈ K^b`, `a + b <= top`.
    pub fn mul(&self, a: usize, x: &BitVec, b: usize, y: &BitVec) -> BitVec {
        let d = a + b;
        let mut amb = BitVec::zeros(self.monomials[d].len());
        for i in x.iter_ones() {
            for j in y.iter_ones() {
                let prod = mono_mul(&self.basis[a][i], &self.basis[b][j]);
                amb.flip(self.index[d][&prod]);
            }
        }
        self.quotients[d].project(&amb)
    }

    /// The reduced coproduct component `K^{a+b} -> K^a ⊗ K^b` for `a, b >= 1`,
    /// on basis element `i`; tensor coordinates are `p·dim(b) + q`.
    pub fn coproduct(&self, a: usize, b: usize, i: usize) -> Result<BitVec> {
        if !self.presentation.primitively_generated {
            return Err(Error::NoCoproduct);
        }
        let e = &self.basis[a + b][i];
        let (da, db) = (self.module.dim(a), self.module.dim(b));
        let mut out = BitVec::zeros(da * db);
        for (p, c) in self.basis[a].iter().enumerate() {
            if c.iter().zip(e).any(|(x, y)| x > y) {
                continue;
            }
            if !c.iter().zip(e).all(|(&x, &y)| binomial_mod2(y as u64, x as u64)) {
                continue;
            }
            let rest: Exponents = e.iter().zip(c).map(|(y, x)| y - x).collect();
            if let Some(&q) = self.basis_index(b, &rest) {
                out.flip(p * db + q);
            }
        }
        Ok(out)
    }

    fn basis_index(&self, d: usize, e: &Exponents) -> Option<&usize> {
        // with no relations the quotient basis is all monomials, in order
        self.index[d].get(e)
    }

    /// `ker(Ψ̄ⁿ: K̄ -> K̄^{⊗n+1})`, degreewise; `Ψ̄⁰` is the identity.
    pub fn primitive_spaces(&self, n: usize) -> Result<Vec<Subspace>> {
        if !self.presentation.primitively_generated {
            return Err(Error::NoCoproduct);
        }
        let top = self.top();
        let mut out = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let dim = self.module.dim(d);
            if d == 0 || n == 0 {
                out.push(Subspace::zero(dim));
                continue;
            }
            let mut kernel = Subspace::full(dim);
            for parts in compositions(d, n + 1) {
                let rows: Vec<BitVec> = (0..dim).map(|i| self.iterated(&parts, i)).collect::<Result<_>>()?;
                let map = crate::gf2::LinMap::from_columns(rows.first().map_or(0, BitVec::len), rows);
                kernel = kernel.intersect(&Subspace::spanned_by(dim, map.kernel()));
                if kernel.dim() == 0 {
                    break;
                }
            }
            out.push(kernel);
        }
        Ok(out)
    }

    /// Component of `Ψ̄` for a composition of the degree, on basis element `i`.
    fn iterated(&self, parts: &[usize], i: usize) -> Result<BitVec> {
        let d: usize = parts.iter().sum();
        if parts.len() == 1 {
            return Ok(BitVec::unit(self.module.dim(d), i));
        }
        let (a, b) = (parts[0], d - parts[0]);
        let db = self.module.dim(b);
        let rest_dim: usize = parts[1..].iter().map(|&p| self.module.dim(p)).product();
        let mut out = BitVec::zeros(self.module.dim(a) * rest_dim);
        let delta = self.coproduct(a, b, i)?;
        for pos in delta.iter_ones() {
            let (p, q) = (pos / db, pos % db);
            let tail = self.iterated(&parts[1..], q)?;
            for t in tail.iter_ones() {
                out.flip(p * rest_dim + t);
            }
        }
        Ok(out)
    }

    /// The `n`-th primitive filtration as a submodule.
    pub fn primitive_filtration(&self, n: usize) -> Result<(Arc<RealizedModule>, ModuleMap)> {
        let spaces = self.primitive_spaces(n)?;
        Ok(self.module.submodule(&spaces))
    }

    /// The span of monomials of length at most `k` in the generators.
    pub fn length_spaces(&self, k: usize) -> Vec<Subspace> {
        (0..=self.top())
            .map(|d| {
                let vs = self.monomials[d]
                    .iter()
                    .filter(|m| m.iter().sum::<u32>() as usize <= k)
                    .map(|m| self.class_of(d, m));
                Subspace::spanned_by(self.module.dim(d), vs)
            })
            .collect()
    }

    /// `U^k / U^{k-1}` for the length filtration.
    pub fn length_quotient(&self, k: usize) -> Arc<RealizedModule> {
        let uk = self.length_spaces(k);
        let (sub, _) = self.module.submodule(&uk);
        if k == 0 {
            return sub;
        }
        let lower = self.length_spaces(k - 1);
        sub.quotient(&relative_spaces(&uk, &lower)).0
    }

    /// Checks the module axioms, `Sq^{|x|}x = x²` on the basis, and the
    /// Cartan formula on pairs of basis elements, through degree `window`.
    pub fn validate_through(&self, window: usize) -> std::result::Result<(), String> {
        let m = &self.module;
        m.validate()?;
        let window = window.min(self.top());
        if m.dim(0) != 1 {
            return Err(format!("degree 0 has dimension {}", m.dim(0)));
        }
        for d in 1..=window / 2 {
            for i in 0..m.dim(d) {
                let x = BitVec::unit(m.dim(d), i);
                if m.sq(d, d, &x) != self.mul(d, &x, d, &x) {
                    return Err(format!("Sq^{d} x ≠ x² for x = {}", m.label(d, i)));
                }
            }
        }
        for a in 0..=window {
            for b in a..=window - a {
                for i in 0..m.dim(a) {
                    let x = BitVec::unit(m.dim(a), i);
                    for j in 0..m.dim(b) {
                        let y = BitVec::unit(m.dim(b), j);
                        let xy = self.mul(a, &x, b, &y);
                        if xy != self.mul(b, &y, a, &x) {
                            return Err(format!("not commutative in degrees {a}, {b}"));
                        }
                        for k in 1..=window - a - b {
                            let mut rhs = BitVec::zeros(m.dim(a + b + k));
                            for t in 0..=k {
                                let sx = m.sq(t, a, &x);
                                let sy = m.sq(k - t, b, &y);
                                if !sx.is_zero() && !sy.is_zero() {
                                    rhs.xor_assign(&self.mul(a + t, &sx, b + k - t, &sy));
                                }
                            }
                            if m.sq(k, a + b, &xy) != rhs {
                                return Err(format!("Cartan fails for Sq^{k} in degrees {a}, {b}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        self.validate_through(self.top())
    }
}

/// Ordered compositions of `d` into `n` positive parts.
fn compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return if d >= 1 { vec![vec![d]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..d {
        for mut rest in compositions(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn names(prefix: &str, r: usize) -> Vec<String> {
    if r == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=r).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// `GF(2)[x_1, …, x_r]` on degree-one generators with `Sq^1 x_i = x_i²`.
pub fn poly_presentation(r: usize) -> AlgebraPresentation {
    let mut p = AlgebraPresentation {
        names: names("x", r),
        degrees: vec![1; r],
        sq: Vec::new(),
        relations: Vec::new(),
        primitively_generated: true,
    };
    p.sq = (0..r)
        .map(|i| {
            let mut sq = p.generator(i);
            sq[i] = 2;
            vec![(1, [sq].into_iter().collect())]
        })
        .collect();
    p
}

/// `H*(BV)` for `V` of rank `r`, through degree `top`.
pub fn poly_algebra(r: usize, top: usize) -> UnstableAlgebra {
    poly_presentation(r).expand(top).expect("polynomial algebras have no relations")
}

/// `GF(2)[x, y]/(x² + xy + y², x²y + xy²)`; the generators have degree one,
/// which forces `Sq^1 x = x²` and `Sq^1 y = y²`.
pub fn s3_mod_q8_presentation() -> AlgebraPresentation {
    let mut p = poly_presentation(2);
    p.names = vec!["x".into(), "y".into()];
    p.relations = vec![
        poly_of([vec![2, 0], vec![1, 1], vec![0, 2]]),
        poly_of([vec![2, 1], vec![1, 2]]),
    ];
    p.primitively_generated = false;
    p
}

pub fn s3_mod_q8(top: usize) -> Result<UnstableAlgebra> {
    s3_mod_q8_presentation().expand(top)
}

/// The cohomology of the quaternion group: `H*(S³/Q₈) ⊗ Φ²GF(2)[x]`.
pub fn bq8_presentation() -> AlgebraPresentation {
    let mut z = poly_presentation(1).phi().phi();
    z.names = vec!["z".into()];
    s3_mod_q8_presentation().tensor(&z)
}

pub fn bq8(top: usize) -> Result<UnstableAlgebra> {
    bq8_presentation().expand(top)
}

/// `S*(M)/(Sq^{|x|}x + x²)` on a basis of `M`, for `M` zero in degree 0.
pub fn free_unstable_presentation(m: &RealizedModule) -> AlgebraPresentation {
    assert_eq!(m.dim(0), 0, "M must vanish in degree 0");
    let top = m.top();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut first = vec![0; top + 2];
    for d in 0..=top {
        first[d] = names.len();
        for i in 0..m.dim(d) {
            names.push(if m.labels().is_some() { format!("[{}]", m.label(d, i)) } else { format!("u{d}_{i}") });
            degrees.push(d);
        }
    }
    first[top + 1] = names.len();
    let r = names.len();
    let unit = |g: usize| {
        let mut e = vec![0; r];
        e[g] = 1;
        e
    };
    let mut sq = Vec::with_capacity(r);
    let mut relations = Vec::new();
    for d in 1..=top {
        for i in 0..m.dim(d) {
            let g = first[d] + i;
            let x = BitVec::unit(m.dim(d), i);
            let ops: Vec<(usize, Poly)> = (1..=d.min(top - d))
                .filter_map(|k| {
                    let v = m.sq(k, d, &x);
                    (!v.is_zero()).then(|| (k, v.iter_ones().map(|j| unit(first[d + k] + j)).collect()))
                })
                .collect();
            if 2 * d <= top {
                let mut rel: Poly = ops.iter().find(|(k, _)| *k == d).map(|(_, p)| p.clone()).unwrap_or_default();
                let mut sq_g = vec![0; r];
                sq_g[g] = 2;
                toggle(&mut rel, sq_g);
                relations.push(rel);
            }
            sq.push(ops);
        }
    }
    AlgebraPresentation {
        names,
        degrees,
        sq,
        relations,
        primitively_generated: false,
    }
}

/// The free unstable algebra `U(M)` through the window of `M`.
pub fn free_unstable_algebra(m: &RealizedModule) -> Result<UnstableAlgebra> {
    free_unstable_presentation(m).expand(m.top())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn tensor_and_phi_shift_generators() {
        let p = poly_presentation(1).phi().tensor(&poly_presentation(1));
        assert_eq!(p.degrees, vec![2, 1]);
        assert_eq!(p.sq[0][0].0, 2);
        assert_eq!(p.sq[1][0].1.iter().next().unwrap(), &vec![0, 2]);
    }
}
