//! The Krull filtration `k_0M ⊆ k_1M ⊆ …`, the nilpotent filtration and the
//! symmetric-sequence invariant `σ_*`.
//!
//! `k_nM` is the kernel of `M -> H̄^{⊗n+1} ⊗ T̄^{n+1}M`. Rather than realize the
//! large iterate directly, we use that `A·x ∈ 𝒰ₙ` iff `T̄(A·x) ∈ 𝒰ₙ₋₁`, and
//! `T̄(A·x)` is generated by the components of `η(x) ∈ H̄ ⊗ T̄M`. So
//!
//! ```text
//! k_nM = { x : η(x) ∈ H̄ ⊗ k_{n-1}(T̄M) },   k_{-1} = 0,
//! ```
//!
//! and each level only needs a single `T̄` of a re-presented module.

mod adjunction;
mod symseq;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, LinMap, QuotientMap, Subspace};
use crate::lannes::{tbar_iter_presentation, TbarLayout};
use crate::umod::{
    present_with_values, realize_with_lifts, FreeElement, FreeSum, ModuleMap, PresentedModule,
    RealizedModule,
};

pub use adjunction::{
    coinduce, counit, unit_into_coinduced, verify_quotient_equivalence, verify_unit, CoBasis,
    CoinducedModule, Counit, EquivalenceReport, UnitIntoCoinduced, UnitReport,
};
pub use symseq::{
    boxtimes, induce, kron_degreewise, regular_object, sh_m, tensor_objects, trivial_object,
    unit_module, zero_object, SymmetricObject, SymmetricSequence,
};

/// Expresses elements of a realized module as free elements over a minimal
/// set of generators.
pub struct Lifter {
    pub presentation: PresentedModule,
    pub values: Vec<BitVec>,
    free: FreeSum,
    /// `sections[d][j]`: a free preimage of basis vector `j` of degree `d`.
    sections: Vec<Option<Vec<BitVec>>>,
}

impl Lifter {
    /// Presents the submodule of `m` generated through degree `g`; classes of
    /// degree `<= g` can be lifted.
    pub fn new(m: &RealizedModule, g: usize) -> Result<Self> {
        let (p, values) = present_with_values(m, g)?;
        let free = FreeSum::new(p.gens().to_vec(), m.top());
        let sections = (0..=m.top())
            .map(|d| {
                let cols = free
                    .basis(d)
                    .iter()
                    .map(|(mono, g)| m.act_monomial(mono, p.gens()[*g], &values[*g]))
                    .collect();
                let ev = LinMap::from_columns(m.dim(d), cols);
                if d > g {
                    return None;
                }
                (0..m.dim(d))
                    .map(|j| ev.solve(&BitVec::unit(m.dim(d), j)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        Ok(Lifter {
            presentation: p,
            values,
            free,
            sections,
        })
    }

    /// A free preimage of basis vector `j` in degree `d`, if `M^d` is generated.
    pub fn lift(&self, d: usize, j: usize) -> Option<FreeElement> {
        let s = self.sections[d].as_ref()?;
        Some(self.free.to_element(d, &s[j]))
    }
}

/// One level of the recursion: `T̄M` realized through `top - 1`, and the unit
/// `M^d -> ⊕_s T̄M^{d-s}` evaluated on a lift of each basis vector.
struct UnitLevel {
    tbar: Arc<RealizedModule>,
    /// `images[d][j]`: pairs `(s, vector in T̄M^{d-s})`.
    images: Vec<Vec<Vec<(usize, BitVec)>>>,
}

fn unit_level(
    m: &RealizedModule,
    p: &PresentedModule,
    lift: impl Fn(usize, usize) -> Option<FreeElement>,
) -> UnitLevel {
    let t_top = m.top().saturating_sub(1);
    let (tp, layout): (PresentedModule, TbarLayout) = tbar_iter_presentation(p, 1, Some(t_top));
    let rt = realize_with_lifts(&tp, t_top);
    let images = (0..=m.top())
        .map(|d| {
            (0..m.dim(d))
                .map(|j| match lift(d, j) {
                    None => Vec::new(),
                    Some(x) => layout
                        .apply_unit(&x)
                        .into_iter()
                        .map(|(b, y)| {
                            let s = b[0] as usize;
                            (s, rt.project(d - s, &y))
                        })
                        .filter(|(_, v)| !v.is_zero())
                        .collect(),
                })
                .collect()
        })
        .collect();
    UnitLevel {
        tbar: rt.module,
        images,
    }
}

/// `{x ∈ M^d : η(x) ∈ H̄ ⊗ K}` for subspaces `K` of `T̄M`.
fn preimage(m: &RealizedModule, level: &UnitLevel, k: &[Subspace], through: usize) -> Vec<Subspace> {
    let qs: Vec<QuotientMap> = k.iter().cloned().map(QuotientMap::new).collect();
    (0..=m.top())
        .map(|d| {
            let n = m.dim(d);
            if d > through {
                return Subspace::zero(n);
            }
            // stack the components by s
            let mut offsets = vec![0usize; d + 1];
            let mut total = 0;
            for s in 1..=d {
                offsets[s] = total;
                total += qs.get(d - s).map_or(0, QuotientMap::dim);
            }
            let cols = (0..n)
                .map(|j| {
                    let mut v = BitVec::zeros(total);
                    for (s, y) in &level.images[d][j] {
                        let q = qs[d - s].project(y);
                        for i in q.iter_ones() {
                            v.flip(offsets[*s] + i);
                        }
                    }
                    v
                })
                .collect();
            Subspace::spanned_by(n, LinMap::from_columns(total, cols).kernel())
        })
        .collect()
}

/// `k_n` of the part of `m` generated through `g`, as subspaces of `m` in
/// degrees `<= g` (zero above).
fn kn_level(m: &RealizedModule, g: usize, n: isize) -> Result<Vec<Subspace>> {
    let g = g.min(m.cert());
    if n < 0 {
        return Ok(m.zero_spaces());
    }
    if m.is_zero() {
        return Ok(m.full_spaces());
    }
    let lifter = Lifter::new(m, g)?;
    let level = unit_level(m, &lifter.presentation, |d, j| lifter.lift(d, j));
    let k = kn_level(&level.tbar, g.saturating_sub(1), n - 1)?;
    Ok(preimage(m, &level, &k, g))
}

/// `k_nM` for `M = P` through degree `top`, as subspaces of `realize(P, top)`.
///
/// Intermediate `T̄`-iterates are realized through `cap >= top` and
/// re-presented with generators in the degrees that matter and relations
/// through their windows. Relations of `P` above its window, and of the
/// iterates above `cap`, are unknown; a larger `cap` trades time for safety.
pub fn k_n_spaces_capped(
    p: &PresentedModule,
    n: usize,
    top: usize,
    cap: usize,
) -> Result<(Arc<RealizedModule>, Vec<Subspace>)> {
    let cap = cap.max(top);
    let r = realize_with_lifts(p, cap);
    let level = unit_level(&r.module, p, |d, j| Some(r.lift(d, j)));
    let k = kn_level(&level.tbar, top.saturating_sub(1), n as isize - 1)?;
    let spaces = preimage(&r.module, &level, &k, top);
    let module = Arc::new(r.module.restrict(top));
    Ok((module, spaces[..=top].to_vec()))
}

/// [`k_n_spaces_capped`] with `cap = top`.
pub fn k_n_spaces(p: &PresentedModule, n: usize, top: usize) -> Result<(Arc<RealizedModule>, Vec<Subspace>)> {
    k_n_spaces_capped(p, n, top, top)
}

/// `k_nM` for a realized module, through its cert.
pub fn k_n_of(m: &RealizedModule, n: usize) -> Result<Vec<Subspace>> {
    kn_level(m, m.cert(), n as isize)
}

/// `k_nM` with its inclusion into `realize(P, top)`.
pub fn k_n(p: &PresentedModule, n: usize, top: usize) -> Result<(Arc<RealizedModule>, ModuleMap)> {
    k_n_capped(p, n, top, top)
}

/// [`k_n`] with intermediate iterates realized through `cap`.
pub fn k_n_capped(p: &PresentedModule, n: usize, top: usize, cap: usize) -> Result<(Arc<RealizedModule>, ModuleMap)> {
    let (m, spaces) = k_n_spaces_capped(p, n, top, cap)?;
    Ok(m.submodule(&spaces))
}

/// Coordinates of the subspaces `inner ⊆ outer` with respect to the basis of
/// the submodule built from `outer`.
pub fn relative_spaces(outer: &[Subspace], inner: &[Subspace]) -> Vec<Subspace> {
    outer
        .iter()
        .zip(inner)
        .map(|(o, i)| {
            let vs = i.basis().iter().map(|w| {
                debug_assert!(o.contains(w));
                BitVec::from_indices(
                    o.dim(),
                    o.pivots().iter().enumerate().filter(|(_, &p)| w.get(p)).map(|(j, _)| j),
                )
            });
            Subspace::spanned_by(o.dim(), vs)
        })
        .collect()
}

/// The composition factor `k̄_nM = k_nM / k_{n-1}M` (`k̄_0 = k_0`).
pub fn kbar_n(p: &PresentedModule, n: usize, top: usize) -> Result<Arc<RealizedModule>> {
    kbar_n_capped(p, n, top, top)
}

pub fn kbar_n_capped(p: &PresentedModule, n: usize, top: usize, cap: usize) -> Result<Arc<RealizedModule>> {
    let (m, kn) = k_n_spaces_capped(p, n, top, cap)?;
    let (sub, _) = m.submodule(&kn);
    if n == 0 {
        return Ok(sub);
    }
    let (_, km) = k_n_spaces_capped(p, n - 1, top, cap)?;
    let (q, _) = sub.quotient(&relative_spaces(&kn, &km));
    Ok(q)
}

/// `nil_1M`: elements with nilpotent `P_0`-orbit.
#[derive(Clone, Debug)]
pub struct NilOne {
    pub spaces: Vec<Subspace>,
    /// Degrees `<= certified` are exact, on the assumption that an orbit
    /// surviving through `cert(M)` never dies. Above it an element must
    /// survive fewer than two squarings to be counted as non-nilpotent.
    pub certified: usize,
}

/// `nil_1M` computed as `ker P_0^k` for the largest `k` keeping the orbit
/// inside the window.
pub fn nil_1(m: &RealizedModule) -> NilOne {
    let cert = m.cert();
    let spaces = (0..=m.top())
        .map(|d| {
            let n = m.dim(d);
            if d == 0 {
                return Subspace::zero(n);
            }
            // P_0^k: M^d -> M^{2^k d}
            let mut map = LinMap::identity(n);
            let mut e = d;
            while 2 * e <= cert {
                map = m.sq_matrix(e, e).compose(&map);
                e *= 2;
            }
            Subspace::spanned_by(n, map.kernel())
        })
        .collect();
    NilOne {
        spaces,
        certified: cert / 2,
    }
}

/// `nil_1S = S ∩ nil_1M` for a submodule `S ⊆ M`, given by subspaces.
pub fn nil_1_within(m: &RealizedModule, sub: &[Subspace]) -> NilOne {
    let nil = nil_1(m);
    let spaces = sub.iter().zip(&nil.spaces).map(|(s, n)| s.intersect(n)).collect();
    NilOne {
        spaces,
        certified: nil.certified,
    }
}

/// `nil_1M` with a guarantee through degree `through`.
pub fn nil_1_through(m: &RealizedModule, through: usize) -> Result<NilOne> {
    let nil = nil_1(m);
    if through > nil.certified {
        return Err(Error::Window {
            degree: through,
            cert: nil.certified,
        });
    }
    Ok(nil)
}

/// `R_0M = M / nil_1M`.
pub fn r_0(m: &Arc<RealizedModule>) -> (Arc<RealizedModule>, ModuleMap) {
    m.quotient(&nil_1(m).spaces)
}

/// The nilpotent filtration of a locally finite module: `nil_sM = M^{>=s}`
/// and `R_sM = M^s`.
#[derive(Clone, Debug)]
pub struct LocallyFiniteNil {
    /// `nil[s]`: subspaces of `nil_sM`.
    pub nil: Vec<Vec<Subspace>>,
    /// `dim R_sM`.
    pub r_dims: Vec<usize>,
}

/// Local finiteness within the window: the upper half `(cert/2, cert]` is
/// empty, so every class and its whole `A`-orbit are visible and bounded.
pub fn check_locally_finite(m: &RealizedModule) -> Result<()> {
    match (m.cert() / 2 + 1..=m.cert()).find(|&d| m.dim(d) > 0) {
        Some(degree) => Err(Error::NotLocallyFinite { degree }),
        None => Ok(()),
    }
}

pub fn nil_filtration_locally_finite(m: &RealizedModule) -> Result<LocallyFiniteNil> {
    check_locally_finite(m)?;
    let top = m.top();
    let nil = (0..=top + 1)
        .map(|s| {
            (0..=top)
                .map(|d| if d >= s { Subspace::full(m.dim(d)) } else { Subspace::zero(m.dim(d)) })
                .collect()
        })
        .collect();
    Ok(LocallyFiniteNil {
        nil,
        r_dims: m.dims().to_vec(),
    })
}

/// `σ_nM = T̄ⁿk_nM` with its `Σ_n`-action, realized through `out_top`.
///
/// `k_nM` is re-presented with generators through `gen_window`; by default
/// the largest degree `<= top/2` where `k_nM` is nonzero.
pub fn sigma(
    p: &PresentedModule,
    n: usize,
    top: usize,
    gen_window: Option<usize>,
    out_top: usize,
) -> Result<SymmetricObject> {
    sigma_capped(p, n, top, top, gen_window, out_top)
}

/// [`sigma`] with `k_n` computed through `cap`.
pub fn sigma_capped(
    p: &PresentedModule,
    n: usize,
    top: usize,
    cap: usize,
    gen_window: Option<usize>,
    out_top: usize,
) -> Result<SymmetricObject> {
    let (sub, _) = k_n_capped(p, n, top, cap)?;
    let g = match gen_window {
        Some(g) => g,
        None => (0..=top / 2).rev().find(|&d| sub.dim(d) > 0).unwrap_or(0),
    };
    if g > sub.cert() {
        return Err(Error::Window { degree: g, cert: sub.cert() });
    }
    let (kp, _) = present_with_values(&sub, g)?;
    let e = crate::lannes::tbar_iter(&kp, n, out_top);
    Ok(SymmetricObject::new(e))
}

/// `σ_0, …, σ_N` as a symmetric sequence.
pub fn sigma_sequence(
    p: &PresentedModule,
    max_arity: usize,
    top: usize,
    gen_window: Option<usize>,
    out_top: usize,
) -> Result<SymmetricSequence> {
    let objects = (0..=max_arity)
        .map(|n| sigma(p, n, top, gen_window, out_top))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymmetricSequence::new(objects))
}
