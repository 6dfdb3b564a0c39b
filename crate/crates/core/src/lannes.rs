//! The reduced Lannes functor `T̄` and its iterates, computed on presentations.
//!
//! `T̄ⁿ` is left adjoint to `H̄^{⊗n} ⊗ -`, where `H̄ = x·GF(2)[x]`. By Yoneda,
//! `T̄ⁿF(g) = ⊕_a F(g - |a|)` over exponent vectors `a ∈ Z_{≥1}^n` with
//! `|a| <= g`; the summand for `a` is generated by `e_a` and the unit is
//! `ι ↦ Σ_a x^a ⊗ e_a`. For a relation `r` the element `r·u` expands by the
//! Cartan formula as `Σ_b x^b ⊗ y_b`, and the `y_b` are relations of `T̄ⁿP`.
//! Since `T̄` is exact this presents `T̄ⁿP` whenever `P` is complete.
//!
//! In particular `T̄F(n) = ⊕_{j<n} F(j)`, which is what the adjunction forces.
//!
//! All results are only as complete as the input relations: if `P` carries a
//! relation window, relations above it are unknown and can change `T̄ⁿP` in
//! any degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::gf2::{BitVec, LinMap, Subspace};
use crate::steenrod::Monomial;
use crate::sym::{all_perms, fixed_dim, Perm, Subgroup};
use crate::umod::{
    realize_with_lifts, FreeElement, FreeSum, ModuleMap, PresentedModule, Realization,
    RealizedModule,
};

/// An element of `H̄^{⊗n} ⊗ (free module)`: exponent vector ↦ coefficient.
pub type TensorElement = BTreeMap<Vec<u32>, FreeElement>;

fn toggle_into(out: &mut TensorElement, b: Vec<u32>, z: &FreeElement) {
    let slot = out.entry(b.clone()).or_insert_with(FreeElement::zero);
    slot.add_assign(z);
    if slot.is_zero() {
        out.remove(&b);
    }
}

/// Exponent vectors `c` with `c_i ⊆ b_i` bitwise (so `C(b_i, c_i)` is odd) and `|c| <= max`.
fn submask_vectors(b: &[u32], max: u32) -> Vec<(Vec<u32>, u32)> {
    let mut out = vec![(Vec::with_capacity(b.len()), 0u32)];
    for &bi in b {
        let mut next = Vec::new();
        for (c, s) in &out {
            let mut sub = bi;
            loop {
                if s + sub <= max {
                    let mut c2 = c.clone();
                    c2.push(sub);
                    next.push((c2, s + sub));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bi;
            }
        }
        out = next;
    }
    out
}

/// `Sq^j` on `H̄^{⊗n} ⊗ F` by the Cartan formula, dropping coefficients of
/// degree above `t_max`.
pub fn cartan_sq(x: &TensorElement, j: u32, gens: &[usize], t_max: usize) -> TensorElement {
    let mut out = TensorElement::new();
    for (b, z) in x {
        let mut cache: HashMap<u32, FreeElement> = HashMap::new();
        for (c, s) in submask_vectors(b, j) {
            let zz = cache.entry(j - s).or_insert_with(|| z.sq(j - s, gens));
            if zz.is_zero() || zz.degree(gens).unwrap() > t_max {
                continue;
            }
            let nb: Vec<u32> = b.iter().zip(&c).map(|(p, q)| p + q).collect();
            toggle_into(&mut out, nb, zz);
        }
    }
    out
}

/// An admissible monomial applied to a tensor element (rightmost square first).
pub fn cartan_act(x: &TensorElement, m: &Monomial, gens: &[usize], t_max: usize) -> TensorElement {
    let mut cur = x.clone();
    for &a in m.exponents().iter().rev() {
        cur = cartan_sq(&cur, a, gens, t_max);
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// Generators of `T̄ⁿ(⊕_i F(g_i))`: one `e_{i,a}` per source generator `i`
/// and exponent vector `a ∈ Z_{≥1}^n` with `|a| <= g_i`.
#[derive(Clone, Debug)]
pub struct TbarLayout {
    slots: usize,
    source: Vec<usize>,
    gens: Vec<usize>,
    keys: Vec<(usize, Vec<u32>)>,
    index: HashMap<(usize, Vec<u32>), usize>,
    t_max: usize,
}

/// Compositions of `s` into `n` positive parts, lexicographically.
fn compositions(s: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=s.saturating_sub(n as u32 - 1) {
        for mut rest in compositions(s - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl TbarLayout {
    /// Layout for `n` slots, keeping only generators of degree `<= t_max`.
    /// Within a source generator, summands are listed by increasing degree.
    pub fn new(source: &[usize], n: usize, t_max: usize) -> Self {
        let mut gens = Vec::new();
        let mut keys = Vec::new();
        for (i, &g) in source.iter().enumerate() {
            for s in (n..=g).rev() {
                if g - s > t_max {
                    continue;
                }
                for a in compositions(s as u32, n) {
                    gens.push(g - s);
                    keys.push((i, a));
                }
            }
        }
        let index = keys.iter().cloned().enumerate().map(|(j, k)| (k, j)).collect();
        TbarLayout {
            slots: n,
            source: source.to_vec(),
            gens,
            keys,
            index,
            t_max,
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    /// Degrees of the generators `e_{i,a}`.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// `(source generator, exponent vector)` of each generator.
    pub fn keys(&self) -> &[(usize, Vec<u32>)] {
        &self.keys
    }

    pub fn index_of(&self, i: usize, a: &[u32]) -> Option<usize> {
        self.index.get(&(i, a.to_vec())).copied()
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    /// The unit `Σ_a x^a ⊗ e_{i,a}` of source generator `i`.
    pub fn unit(&self, i: usize) -> TensorElement {
        self.keys
            .iter()
            .enumerate()
            .filter(|(_, (src, _))| *src == i)
            .map(|(j, (_, a))| (a.clone(), FreeElement::generator(j)))
            .collect()
    }

    /// `θ·u` for an element `θ = Σ Sq^I ι_i` of the source.
    pub fn apply_unit(&self, theta: &FreeElement) -> TensorElement {
        let mut out = TensorElement::new();
        for (m, i) in theta.terms() {
            for (b, z) in cartan_act(&self.unit(*i), m, &self.gens, self.t_max) {
                toggle_into(&mut out, b, &z);
            }
        }
        out
    }

    /// Generator permutation induced by a permutation of the slots.
    pub fn permute_generators(&self, pi: &Perm) -> Vec<usize> {
        self.keys
            .iter()
            .map(|(i, a)| self.index_of(*i, &pi.permute(a)).expect("layouts are Σ-stable"))
            .collect()
    }
}

/// `T̄F(n) = ⊕_{j<n} F(j)` with its unit `u_n = Σ_j x^{n-j} ⊗ e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbarFreeData {
    pub n: usize,
    /// Degree `j` of summand generator `e_j`, in order.
    pub summands: Vec<usize>,
    /// Terms `x^{exponent} ⊗ e_{summand}` of the unit.
    pub unit: Vec<(u32, usize)>,
}

pub fn tbar_free(n: usize) -> (PresentedModule, TbarFreeData) {
    let layout = TbarLayout::new(&[n], 1, n);
    let unit = layout
        .keys()
        .iter()
        .enumerate()
        .map(|(j, (_, a))| (a[0], j))
        .collect();
    let data = TbarFreeData {
        n,
        summands: layout.gens().to_vec(),
        unit,
    };
    (PresentedModule::new(layout.gens().to_vec(), Vec::new()), data)
}

/// `T̄ⁿ` of a map of free sums, given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct TbarMap {
    pub source: TbarLayout,
    pub target: TbarLayout,
    /// Image of each source generator `e'_{j,b}` in the target free sum.
    pub images: Vec<FreeElement>,
}

/// `T̄ⁿg` for `g: ⊕F(s_j) -> ⊕F(g_i)`, `ι_j ↦ images[j]`: the image of
/// `e'_{j,b}` is the `x^b` coefficient of `images[j]·u`.
pub fn tbar_map(
    source: &[usize],
    target: &[usize],
    images: &[FreeElement],
    n: usize,
    t_max: usize,
) -> TbarMap {
    assert_eq!(source.len(), images.len());
    let src = TbarLayout::new(source, n, t_max);
    let tgt = TbarLayout::new(target, n, t_max);
    let expanded: Vec<TensorElement> = images.iter().map(|th| tgt.apply_unit(th)).collect();
    let images = src
        .keys()
        .iter()
        .map(|(j, b)| expanded[*j].get(b).cloned().unwrap_or_else(FreeElement::zero))
        .collect();
    TbarMap {
        source: src,
        target: tgt,
        images,
    }
}

impl TbarMap {
    /// The induced map of realized free sums through degree `top`.
    pub fn realized(&self, top: usize) -> ModuleMap {
        let sf = FreeSum::new(self.source.gens().to_vec(), top);
        let tf = FreeSum::new(self.target.gens().to_vec(), top);
        let maps = (0..=top)
            .map(|d| {
                let cols = sf
                    .basis(d)
                    .iter()
                    .map(|(m, g)| tf.to_vec(d, &self.images[*g].act(m, self.target.gens())))
                    .collect();
                LinMap::from_columns(tf.dim(d), cols)
            })
            .collect();
        ModuleMap::new(Arc::new(sf.realize()), Arc::new(tf.realize()), maps, top)
    }
}

/// `T̄ⁿP` with generators `e_{i,a}`, through output degree `t_max`
/// (`None`: no truncation).
pub fn tbar_iter_presentation(
    p: &PresentedModule,
    n: usize,
    t_max: Option<usize>,
) -> (PresentedModule, TbarLayout) {
    let cap = t_max.unwrap_or(usize::MAX);
    let rel_degs: Vec<usize> = (0..p.relations().len()).map(|r| p.relation_degree(r)).collect();
    let map = tbar_map(&rel_degs, p.gens(), p.relations(), n, cap);
    let window = match (t_max, p.relation_window()) {
        (None, w) | (w, None) => w,
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    let out = PresentedModule::new(map.target.gens().to_vec(), map.images).with_relation_window(window);
    (out, map.target)
}

/// `T̄P`.
pub fn tbar(p: &PresentedModule) -> PresentedModule {
    tbar_iter_presentation(p, 1, None).0
}

/// A realized module with an action of `Σ_n`, one matrix per element and degree.
#[derive(Clone, Debug)]
pub struct EquivariantModule {
    pub module: Arc<RealizedModule>,
    pub arity: usize,
    pub group: Vec<Perm>,
    /// `action[g][d]` for `g` indexing `group`.
    pub action: Vec<Vec<LinMap>>,
}

impl EquivariantModule {
    /// The trivial action.
    pub fn trivial(module: Arc<RealizedModule>, arity: usize) -> Self {
        let group = all_perms(arity);
        let ids: Vec<LinMap> = module.dims().iter().map(|&n| LinMap::identity(n)).collect();
        let action = vec![ids; group.len()];
        EquivariantModule {
            module,
            arity,
            group,
            action,
        }
    }

    pub fn matrix(&self, g: &Perm, d: usize) -> &LinMap {
        let i = self.group.iter().position(|h| h == g).expect("element of the group");
        &self.action[i][d]
    }

    /// Group law and Sq-equivariance of every element.
    pub fn validate(&self) -> Result<(), String> {
        let m = &self.module;
        for (i, g) in self.group.iter().enumerate() {
            for d in 0..=m.top() {
                if g.is_identity() && self.action[i][d] != LinMap::identity(m.dim(d)) {
                    return Err(format!("identity acts nontrivially in degree {d}"));
                }
                for k in 1..=d.min(m.top() - d) {
                    let lhs = m.sq_matrix(k, d).compose(&self.action[i][d]);
                    let rhs = self.action[i][d + k].compose(&m.sq_matrix(k, d));
                    if lhs != rhs {
                        return Err(format!("{g:?} does not commute with Sq^{k} in degree {d}"));
                    }
                }
            }
            for (j, h) in self.group.iter().enumerate() {
                let gh = g.compose(h);
                for d in 0..=m.top() {
                    let prod = self.action[i][d].compose(&self.action[j][d]);
                    if &prod != self.matrix(&gh, d) {
                        return Err(format!("ρ({g:?})ρ({h:?}) != ρ({gh:?}) in degree {d}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension of the `H`-fixed vectors in degree `d`.
    pub fn fixed_dim(&self, h: &Subgroup, d: usize) -> usize {
        fixed_dim(self.module.dim(d), &h.generators, |g| self.matrix(g, d).clone())
    }
}

/// `T̄ⁿP` realized through `top`, with `Σ_n` permuting the adjunction slots.
pub fn tbar_iter(p: &PresentedModule, n: usize, top: usize) -> EquivariantModule {
    tbar_iter_full(p, n, top).0
}

/// [`tbar_iter`] together with the realization of the presented iterate and
/// its generator layout, for evaluating units.
pub fn tbar_iter_full(p: &PresentedModule, n: usize, top: usize) -> (EquivariantModule, Realization, TbarLayout) {
    let (tp, layout) = tbar_iter_presentation(p, n, Some(top));
    let r = realize_with_lifts(&tp, top);
    let group = all_perms(n);
    let action = group
        .iter()
        .map(|pi| {
            let relabel = layout.permute_generators(pi);
            (0..=top)
                .map(|d| {
                    let cols = (0..r.module.dim(d))
                        .map(|j| r.project(d, &r.lift(d, j).relabel(|g| relabel[g])))
                        .collect();
                    LinMap::from_columns(r.module.dim(d), cols)
                })
                .collect()
        })
        .collect();
    let e = EquivariantModule {
        module: Arc::clone(&r.module),
        arity: n,
        group,
        action,
    };
    (e, r, layout)
}

/// `η: M -> H̄^{⊗n} ⊗ T̄ⁿM`, degreewise: from `M^d` to each `T̄ⁿM^{d-|b|}`.
#[derive(Clone, Debug)]
pub struct UnitMap {
    pub slots: usize,
    pub source: Arc<RealizedModule>,
    pub target: Arc<RealizedModule>,
    /// `blocks[d]`: the nonzero components `(b, M^d -> T̄ⁿM^{d-|b|})`.
    pub blocks: Vec<Vec<(Vec<u32>, LinMap)>>,
}

impl UnitMap {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|bs| bs.iter().all(|(_, m)| m.is_zero()))
    }

    /// `ker η` in each degree.
    pub fn kernel_spaces(&self) -> Vec<Subspace> {
        (0..=self.source.top())
            .map(|d| {
                let n = self.source.dim(d);
                let mut k = Subspace::full(n);
                for (_, m) in &self.blocks[d] {
                    k = k.intersect(&Subspace::spanned_by(n, m.kernel()));
                }
                k
            })
            .collect()
    }
}

/// The unit `M -> H̄^{⊗n+1} ⊗ T̄^{n+1}M` whose kernel is `k_n M`, with `M`
/// realized through `top` and `T̄^{n+1}M` through `top - n - 1`.
pub fn unit_map(p: &PresentedModule, n: usize, top: usize) -> UnitMap {
    let n = n + 1;
    let src = realize_with_lifts(p, top);
    let t_top = top.saturating_sub(n);
    let (tp, layout) = tbar_iter_presentation(p, n, Some(t_top));
    let tgt = realize_with_lifts(&tp, t_top);
    let blocks = (0..=top)
        .map(|d| {
            let dim = src.module.dim(d);
            let mut cols: BTreeMap<Vec<u32>, Vec<BitVec>> = BTreeMap::new();
            for j in 0..dim {
                for (b, y) in layout.apply_unit(&src.lift(d, j)) {
                    let s: usize = b.iter().map(|&x| x as usize).sum();
                    let e = d - s;
                    let col = cols
                        .entry(b)
                        .or_insert_with(|| vec![BitVec::zeros(tgt.module.dim(e)); dim]);
                    col[j] = tgt.project(e, &y);
                }
            }
            cols.into_iter()
                .map(|(b, c)| {
                    let s: usize = b.iter().map(|&x| x as usize).sum();
                    let m = LinMap::from_columns(tgt.module.dim(d - s), c);
                    (b, m)
                })
                .filter(|(_, m)| !m.is_zero())
                .collect()
        })
        .collect();
    UnitMap {
        slots: n,
        source: src.module,
        target: tgt.module,
        blocks,
    }
}

/// Whether `T̄^{n+1}P = 0`: every generator of the presented iterate is
/// a combination of relations, checked through its top generator degree.
#[allow(non_snake_case)]
pub fn is_in_Un(p: &PresentedModule, n: usize) -> bool {
    let Some(g) = p.max_generator_degree() else {
        return true;
    };
    if g < n + 1 {
        return true;
    }
    let t_max = g - (n + 1);
    let (tp, _) = tbar_iter_presentation(p, n + 1, Some(t_max));
    realize_with_lifts(&tp, t_max).module.is_zero()
}

/// The least `n` with `P ∈ 𝒰ₙ`, searching up to `max`.
pub fn krull_level(p: &PresentedModule, max: usize) -> Option<usize> {
    (0..=max).find(|&n| is_in_Un(p, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_and_masks() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert!(compositions(1, 2).is_empty());
        let m = submask_vectors(&[3, 2], 10);
        assert_eq!(m.len(), 8);
        assert!(submask_vectors(&[3], 1).iter().all(|(_, s)| *s <= 1));
    }

    #[test]
    fn free_layouts() {
        let (p, d) = tbar_free(0);
        assert!(p.gens().is_empty() && d.unit.is_empty());
        let (p, d) = tbar_free(3);
        assert_eq!(p.gens(), &[0, 1, 2]);
        assert_eq!(d.unit, vec![(3, 0), (2, 1), (1, 2)]);
        assert!(d.unit.iter().all(|&(e, s)| e as usize + d.summands[s] == 3));
    }
}
