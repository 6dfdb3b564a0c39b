//! Functors from finite-dimensional F₂-vector spaces to F₂-vector spaces,
//! evaluated on `F₂^k` for `k` up to a rank cap.
//!
//! A functor is its list of values together with a rule producing the matrix
//! of `F(A)` for a linear map `A`; matrices are memoized. Constructions
//! (`Δ`, `pₙ`, `qₙ`, tensor products, sub- and quotient functors) wrap the
//! rule of their input, so every value is computed on demand.

mod bridge;
mod mat;
mod standard;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::gf2::{BitVec, LinMap, QuotientMap, Subspace, SubspaceCoords};
use crate::{Error, Result};

pub use bridge::{
    cohomology_pullback, homology_functor, l_of, lambda2_tensor_splitting, nil_closure, NilClosure,
    SplittingReport,
};
pub use mat::Mat;
pub use standard::{standard_functor, StandardFunctor};

type Rule = dyn Fn(&Mat) -> LinMap + Send + Sync;

/// A functor truncated to ranks `0..=rank_cap`.
#[derive(Clone)]
pub struct FiniteFunctor {
    name: String,
    rank_cap: usize,
    dims: Vec<usize>,
    rule: Arc<Rule>,
    memo: Arc<Mutex<HashMap<Mat, Arc<LinMap>>>>,
}

impl fmt::Debug for FiniteFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteFunctor")
            .field("name", &self.name)
            .field("rank_cap", &self.rank_cap)
            .field("dims", &self.dims)
            .finish()
    }
}

impl FiniteFunctor {
    pub fn new(
        name: impl Into<String>,
        rank_cap: usize,
        dims: Vec<usize>,
        rule: impl Fn(&Mat) -> LinMap + Send + Sync + 'static,
    ) -> Self {
        assert_eq!(dims.len(), rank_cap + 1, "one value per rank");
        FiniteFunctor {
            name: name.into(),
            rank_cap,
            dims,
            rule: Arc::new(rule),
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The matrix of `F(A)`.
    pub fn apply(&self, a: &Mat) -> Arc<LinMap> {
        assert!(
            a.rows() <= self.rank_cap && a.cols() <= self.rank_cap,
            "{}: map {}x{} beyond rank cap {}",
            self.name,
            a.rows(),
            a.cols(),
            self.rank_cap
        );
        if let Some(m) = self.memo.lock().unwrap().get(a) {
            return Arc::clone(m);
        }
        let m = Arc::new((self.rule)(a));
        debug_assert_eq!((m.src_dim(), m.tgt_dim()), (self.dims[a.cols()], self.dims[a.rows()]));
        self.memo.lock().unwrap().insert(a.clone(), Arc::clone(&m));
        m
    }

    /// The same functor forgetting ranks above `cap`.
    pub fn restrict(&self, cap: usize) -> FiniteFunctor {
        assert!(cap <= self.rank_cap);
        let inner = self.clone();
        FiniteFunctor::new(self.name.clone(), cap, self.dims[..=cap].to_vec(), move |a| {
            (*inner.apply(a)).clone()
        })
    }

    /// Checks `F(1) = 1` and `F(AB) = F(A)F(B)` on `samples` random composable
    /// pairs (seeded) and on all pairs through the generators of the category.
    pub fn validate(&self, samples: usize) -> std::result::Result<(), String> {
        let k = self.rank_cap;
        for r in 0..=k {
            if *self.apply(&Mat::identity(r)) != LinMap::identity(self.dims[r]) {
                return Err(format!("{}: identity of rank {r} does not act trivially", self.name));
            }
        }
        let check = |a: &Mat, b: &Mat| -> std::result::Result<(), String> {
            let lhs = self.apply(&a.compose(b));
            let rhs = self.apply(a).compose(&self.apply(b));
            if *lhs != rhs {
                return Err(format!("{}: not functorial on {a:?} ∘ {b:?}", self.name));
            }
            Ok(())
        };
        let gens = Mat::category_generators(k);
        for a in &gens {
            for b in gens.iter().filter(|b| b.rows() == a.cols()) {
                check(a, b)?;
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..samples {
            let (i, j, l) = (rng.gen_range(0..=k), rng.gen_range(0..=k), rng.gen_range(0..=k));
            let a = random_mat(&mut rng, i, j);
            let b = random_mat(&mut rng, j, l);
            check(&a, &b)?;
        }
        Ok(())
    }
}

fn random_mat(rng: &mut StdRng, rows: usize, cols: usize) -> Mat {
    let mask = if rows == 0 { 0 } else { (1u64 << rows) - 1 };
    Mat::new(rows, cols, (0..cols).map(|_| rng.gen::<u64>() & mask).collect())
}

/// `F(A) ⊗ G(B)` with index `i·dim(G) + j`.
pub(crate) fn kron(a: &LinMap, b: &LinMap) -> LinMap {
    let (sa, ta, sb, tb) = (a.src_dim(), a.tgt_dim(), b.src_dim(), b.tgt_dim());
    let cols = (0..sa * sb)
        .map(|c| {
            let (i, j) = (c / sb, c % sb);
            let mut out = BitVec::zeros(ta * tb);
            for p in a.column(i).iter_ones() {
                for q in b.column(j).iter_ones() {
                    out.flip(p * tb + q);
                }
            }
            out
        })
        .collect();
    LinMap::from_columns(ta * tb, cols)
}

pub(crate) fn transpose(m: &LinMap) -> LinMap {
    let cols = (0..m.tgt_dim())
        .map(|r| BitVec::from_indices(m.src_dim(), (0..m.src_dim()).filter(|&c| m.column(c).get(r))))
        .collect();
    LinMap::from_columns(m.src_dim(), cols)
}

/// `F ⊗ G`, pointwise.
pub fn tensor(f: &FiniteFunctor, g: &FiniteFunctor) -> FiniteFunctor {
    let cap = f.rank_cap.min(g.rank_cap);
    let dims = (0..=cap).map(|k| f.dim(k) * g.dim(k)).collect();
    let (f2, g2) = (f.clone(), g.clone());
    FiniteFunctor::new(format!("{}⊗{}", f.name, g.name), cap, dims, move |a| {
        kron(&f2.apply(a), &g2.apply(a))
    })
}

/// The subfunctor with the given values; they must be stable under the action.
pub fn subfunctor(f: &FiniteFunctor, name: impl Into<String>, spaces: Vec<Subspace>) -> FiniteFunctor {
    assert_eq!(spaces.len(), f.rank_cap + 1);
    let coords: Arc<Vec<SubspaceCoords>> = Arc::new(
        spaces
            .iter()
            .map(|s| SubspaceCoords::new(s.ambient(), s.basis().to_vec()))
            .collect(),
    );
    let dims = spaces.iter().map(Subspace::dim).collect();
    let f2 = f.clone();
    let name = name.into();
    let label = name.clone();
    FiniteFunctor::new(name, f.rank_cap, dims, move |a| {
        let m = f2.apply(a);
        let (src, tgt) = (&coords[a.cols()], &coords[a.rows()]);
        let cols = src
            .basis()
            .iter()
            .map(|b| {
                tgt.coords(&m.apply(b))
                    .unwrap_or_else(|| panic!("{label}: values are not stable under {a:?}"))
            })
            .collect();
        LinMap::from_columns(tgt.dim(), cols)
    })
}

/// Whether pointwise subspaces are stable under the generators of the category.
pub fn is_stable(f: &FiniteFunctor, spaces: &[Subspace]) -> bool {
    Mat::category_generators(f.rank_cap).iter().all(|a| {
        let m = f.apply(a);
        spaces[a.cols()].basis().iter().all(|b| spaces[a.rows()].contains(&m.apply(b)))
    })
}

/// The quotient functor by stable pointwise subspaces.
pub fn quotient_functor(f: &FiniteFunctor, name: impl Into<String>, spaces: Vec<Subspace>) -> FiniteFunctor {
    assert_eq!(spaces.len(), f.rank_cap + 1);
    let qs: Arc<Vec<QuotientMap>> = Arc::new(spaces.into_iter().map(QuotientMap::new).collect());
    let dims = qs.iter().map(QuotientMap::dim).collect();
    let f2 = f.clone();
    FiniteFunctor::new(name, f.rank_cap, dims, move |a| {
        let m = f2.apply(a);
        let (src, tgt) = (&qs[a.cols()], &qs[a.rows()]);
        let cols = (0..src.dim()).map(|j| tgt.project(&m.apply(&src.lift(j)))).collect();
        LinMap::from_columns(tgt.dim(), cols)
    })
}

/// `ΔF(V) = F(V ⊕ F₂)/F(V)`, with rank cap one less.
pub fn delta(f: &FiniteFunctor) -> Result<FiniteFunctor> {
    if f.rank_cap == 0 {
        return Err(Error::RankExhausted { needed: 1, cap: 0 });
    }
    let cap = f.rank_cap - 1;
    let qs: Arc<Vec<QuotientMap>> = Arc::new(
        (0..=cap)
            .map(|k| QuotientMap::new(f.apply(&Mat::inclusion(k, k + 1)).image()))
            .collect(),
    );
    let dims = qs.iter().map(QuotientMap::dim).collect();
    let f2 = f.clone();
    Ok(FiniteFunctor::new(format!("Δ{}", f.name), cap, dims, move |a| {
        let m = f2.apply(&a.direct_sum_identity(1));
        let (src, tgt) = (&qs[a.cols()], &qs[a.rows()]);
        let cols = (0..src.dim()).map(|j| tgt.project(&m.apply(&src.lift(j)))).collect();
        LinMap::from_columns(tgt.dim(), cols)
    }))
}

/// `Δ^r F`, with rank cap `r` less.
pub fn delta_power(f: &FiniteFunctor, r: usize) -> Result<FiniteFunctor> {
    (0..r).try_fold(f.clone(), |g, _| delta(&g))
}

/// Outcome of the polynomial degree test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyDegree {
    Degree(usize),
    /// No `n` with `n + 1 <= K` has `Δ^{n+1}F = 0`.
    NotPolynomialWithin(usize),
}

impl PolyDegree {
    pub fn certified_below(&self, k: usize) -> bool {
        matches!(self, PolyDegree::Degree(n) if *n < k)
    }
}

impl fmt::Display for PolyDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyDegree::Degree(n) => write!(f, "{n}"),
            PolyDegree::NotPolynomialWithin(k) => write!(f, "not polynomial within rank {k}"),
        }
    }
}

/// `dim Δ^r F(F₂^k)`; the inclusions `F(V) -> F(V ⊕ F₂)` split, so the
/// dimensions are alternating sums.
pub fn delta_power_dims(f: &FiniteFunctor, r: usize) -> Option<Vec<usize>> {
    if r > f.rank_cap {
        return None;
    }
    let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1)) };
    Some(
        (0..=f.rank_cap - r)
            .map(|k| {
                let s: i64 = (0..=r)
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * binom(r, i) * f.dim(k + r - i) as i64
                    })
                    .sum();
                usize::try_from(s).expect("dimensions of a functor are split")
            })
            .collect(),
    )
}

/// The least `n` with `Δ^{n+1}F = 0`, certified when `n + 1 <= K`.
pub fn poly_degree(f: &FiniteFunctor) -> PolyDegree {
    for n in 0..f.rank_cap {
        if delta_power_dims(f, n + 1).unwrap().iter().all(|&d| d == 0) {
            return PolyDegree::Degree(n);
        }
    }
    PolyDegree::NotPolynomialWithin(f.rank_cap)
}

/// The map `(1, g_1, …, g_r): F₂^k -> F₂^{k+r}` for functionals `g_j`.
fn graph_map(k: usize, gs: &[u64]) -> Mat {
    Mat::identity(k).with_rows(gs)
}

/// Tuples of `r` elements of `F₂^k` as masks.
fn tuples(k: usize, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..1u64 << k).map(move |g| {
                    let mut t2 = t.clone();
                    t2.push(g);
                    t2
                })
            })
            .collect();
    }
    out
}

/// `pₙF`, the largest subfunctor of degree at most `n`, with rank cap `K - n - 1`:
/// `x ∈ F(V)` lies in it when every `F(1, g_1, …, g_{n+1})x` vanishes in
/// `Δ^{n+1}F(V) = F(V ⊕ F₂^{n+1}) / Σ_j F(V ⊕ F₂^{n+1} without coordinate j)`.
pub fn p_n(f: &FiniteFunctor, n: usize) -> Result<FiniteFunctor> {
    let r = n + 1;
    if r > f.rank_cap {
        return Err(Error::RankExhausted { needed: r, cap: f.rank_cap });
    }
    let cap = f.rank_cap - r;
    let spaces = p_n_spaces(f, n)?;
    let g = f.restrict(cap);
    Ok(subfunctor(&g, format!("p{n}{}", f.name), spaces))
}

/// `Σ_j F(ι_j)` in `F(F₂^{k+r})`, `ι_j` omitting the extra coordinate `j`.
fn cross_effect_denominator(f: &FiniteFunctor, k: usize, r: usize) -> Subspace {
    let total = k + r;
    let mut s = Subspace::zero(f.dim(total));
    for j in 0..r {
        let skip = k + j;
        let columns: Vec<u64> = (0..total).filter(|&c| c != skip).map(|c| 1 << c).collect();
        let iota = Mat::new(total, total - 1, columns);
        s = s.sum(&f.apply(&iota).image());
    }
    s
}

/// `qₙF`, the largest quotient of degree at most `n`, with rank cap `K - n - 1`:
/// `F(V)` modulo the images of the cross-effect `∩_j ker F(π_j) ⊆ F(V ⊕ F₂^{n+1})`
/// under every `F(1 | v_1, …, v_{n+1})`.
pub fn q_n(f: &FiniteFunctor, n: usize) -> Result<FiniteFunctor> {
    let r = n + 1;
    if r > f.rank_cap {
        return Err(Error::RankExhausted { needed: r, cap: f.rank_cap });
    }
    let cap = f.rank_cap - r;
    let spaces: Vec<Subspace> = (0..=cap)
        .map(|k| {
            let total = k + r;
            let mut cross = Subspace::full(f.dim(total));
            for j in 0..r {
                let skip = k + j;
                let columns: Vec<u64> = (0..total)
                    .map(|c| match c.cmp(&skip) {
                        std::cmp::Ordering::Less => 1 << c,
                        std::cmp::Ordering::Equal => 0,
                        std::cmp::Ordering::Greater => 1 << (c - 1),
                    })
                    .collect();
                let pi = Mat::new(total - 1, total, columns);
                cross = cross.intersect(&Subspace::spanned_by(f.dim(total), f.apply(&pi).kernel()));
            }
            let mut img = Subspace::zero(f.dim(k));
            for vs in tuples(k, r) {
                let sigma = Mat::identity(k).with_columns(&vs);
                let m = f.apply(&sigma);
                for b in cross.basis() {
                    img.insert(m.apply(b));
                }
            }
            img
        })
        .collect();
    let g = f.restrict(cap);
    Ok(quotient_functor(&g, format!("q{n}{}", f.name), spaces))
}

/// A basis of natural transformations `G -> F` at ranks `<= min cap`, each a
/// list of matrices `t_k: G(F₂^k) -> F(F₂^k)`.
pub fn nat_trans(g: &FiniteFunctor, f: &FiniteFunctor) -> Vec<Vec<LinMap>> {
    let cap = g.rank_cap.min(f.rank_cap);
    let sizes: Vec<usize> = (0..=cap).map(|k| g.dim(k) * f.dim(k)).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let unknowns: usize = sizes.iter().sum();
    // unknown (k, gi, fi) at offsets[k] + gi·dim F(k) + fi
    let gens = Mat::category_generators(cap);
    let eq_sizes: Vec<usize> = gens.iter().map(|a| f.dim(a.rows()) * g.dim(a.cols())).collect();
    let total: usize = eq_sizes.iter().sum();
    let mut cols = vec![BitVec::zeros(total); unknowns];
    let mut base = 0;
    for (a, &size) in gens.iter().zip(&eq_sizes) {
        let (j, k) = (a.cols(), a.rows());
        let fa = f.apply(a);
        let ga = g.apply(a);
        // equation (f', gi) in block: (F(A) t_j)[f', gi] + (t_k G(A))[f', gi]
        let eq = |fp: usize, gi: usize| base + gi * f.dim(k) + fp;
        for gi in 0..g.dim(j) {
            for fi in 0..f.dim(j) {
                let u = offsets[j] + gi * f.dim(j) + fi;
                for fp in fa.column(fi).iter_ones() {
                    cols[u].flip(eq(fp, gi));
                }
            }
        }
        for gp in 0..g.dim(k) {
            for fp in 0..f.dim(k) {
                let u = offsets[k] + gp * f.dim(k) + fp;
                for gi in 0..g.dim(j) {
                    if ga.column(gi).get(gp) {
                        cols[u].flip(eq(fp, gi));
                    }
                }
            }
        }
        base += size;
    }
    LinMap::from_columns(total, cols)
        .kernel()
        .into_iter()
        .map(|sol| {
            (0..=cap)
                .map(|k| {
                    let cols = (0..g.dim(k))
                        .map(|gi| sol.slice(offsets[k] + gi * f.dim(k), f.dim(k)))
                        .collect();
                    LinMap::from_columns(f.dim(k), cols)
                })
                .collect()
        })
        .collect()
}

/// The values of `pₙF` as subspaces of the values of `F`.
pub fn p_n_spaces(f: &FiniteFunctor, n: usize) -> Result<Vec<Subspace>> {
    let r = n + 1;
    if r > f.rank_cap {
        return Err(Error::RankExhausted { needed: r, cap: f.rank_cap });
    }
    Ok((0..=f.rank_cap - r).map(|k| p_n_space(f, k, r)).collect())
}

fn p_n_space(f: &FiniteFunctor, k: usize, r: usize) -> Subspace {
    let q = QuotientMap::new(cross_effect_denominator(f, k, r));
    let cols: Vec<BitVec> = (0..f.dim(k))
        .map(|i| {
            let x = BitVec::unit(f.dim(k), i);
            let mut out = BitVec::zeros(0);
            for gs in tuples(k, r) {
                out = out.concat(&q.project(&f.apply(&graph_map(k, &gs)).apply(&x)));
            }
            out
        })
        .collect();
    let len = cols.first().map_or(0, BitVec::len);
    Subspace::spanned_by(f.dim(k), LinMap::from_columns(len, cols).kernel())
}
