use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, LinMap, Subspace};

use super::{FreeElement, FreeSum, RealizedModule};

/// Generators with degrees plus relations in `⊕ F(g_i)`.
///
/// `relation_window` is `None` when the relation set is known to be complete;
/// otherwise minimal relations are only known through that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    gens: Vec<usize>,
    relations: Vec<FreeElement>,
    relation_window: Option<usize>,
}

impl PresentedModule {
    pub fn new(gens: Vec<usize>, relations: Vec<FreeElement>) -> Self {
        let relations: Vec<FreeElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            let deg = r.degree(&gens).unwrap();
            assert!(
                r.terms().all(|(m, g)| m.degree() as usize + gens[*g] == deg),
                "relation {r} is not homogeneous"
            );
            assert!(
                r.terms().all(|(m, g)| m.excess() as usize <= gens[*g]),
                "relation {r} has a term of excess above its generator degree"
            );
        }
        PresentedModule {
            gens,
            relations,
            relation_window: None,
        }
    }

    /// `F(n)`.
    pub fn free(n: usize) -> Self {
        Self::new(vec![n], Vec::new())
    }

    /// The zero module.
    pub fn zero() -> Self {
        Self::new(Vec::new(), Vec::new())
    }

    pub fn with_relation_window(mut self, w: Option<usize>) -> Self {
        self.relation_window = w;
        self
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn relation_window(&self) -> Option<usize> {
        self.relation_window
    }

    pub fn relation_degree(&self, r: usize) -> usize {
        self.relations[r].degree(&self.gens).unwrap()
    }

    pub fn max_generator_degree(&self) -> Option<usize> {
        self.gens.iter().copied().max()
    }

    pub fn max_relation_degree(&self) -> Option<usize> {
        (0..self.relations.len()).map(|r| self.relation_degree(r)).max()
    }

    /// `P ⊕ Q`.
    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        let shift = self.gens.len();
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.relabel(|g| g + shift)));
        let window = match (self.relation_window, other.relation_window) {
            (None, w) | (w, None) => w,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        PresentedModule::new(gens, rels).with_relation_window(window)
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        let g: Vec<String> = self.gens.iter().enumerate().map(|(i, d)| format!("ι{i}:{d}")).collect();
        write!(f, "{}", g.join(", "))?;
        if !self.relations.is_empty() {
            let r: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, " | {}", r.join(", "))?;
        }
        write!(f, "⟩")
    }
}

/// The submodule of `⊕F(g_i)` generated by the relations, degreewise.
fn relation_spaces(free: &FreeSum, fm: &RealizedModule, p: &PresentedModule) -> Vec<Subspace> {
    let top = free.top();
    let mut seeds = vec![Vec::new(); top + 1];
    for r in p.relations() {
        let d = r.degree(p.gens()).unwrap();
        if d <= top {
            seeds[d].push(free.to_vec(d, r));
        }
    }
    fm.sq_closure(&seeds)
}

/// Realizes `P` through degree `top`.
pub fn realize(p: &PresentedModule, top: usize) -> RealizedModule {
    let r = realize_with_lifts(p, top);
    Arc::try_unwrap(r.module).unwrap_or_else(|a| (*a).clone())
}

/// A realization remembering where its basis comes from in the free module.
#[derive(Clone, Debug)]
pub struct Realization {
    pub free: FreeSum,
    pub module: Arc<RealizedModule>,
    /// Projection from the free module, degreewise.
    pub proj: Vec<LinMap>,
    /// `lifts[d][j]`: index of the free basis element representing basis vector `j`.
    pub lifts: Vec<Vec<usize>>,
}

impl Realization {
    /// Basis vector `j` of degree `d` as a free element.
    pub fn lift(&self, d: usize, j: usize) -> FreeElement {
        let (m, g) = &self.free.basis(d)[self.lifts[d][j]];
        FreeElement::term(m.clone(), *g)
    }

    /// Image of a free element of degree `d` in the realized module.
    pub fn project(&self, d: usize, x: &FreeElement) -> BitVec {
        self.proj[d].apply(&self.free.to_vec(d, x))
    }
}

pub fn realize_with_lifts(p: &PresentedModule, top: usize) -> Realization {
    let free = FreeSum::new(p.gens().to_vec(), top);
    let fm = Arc::new(free.realize());
    let spaces = relation_spaces(&free, &fm, p);
    let lifts = spaces
        .iter()
        .map(|s| s.complement_coordinates())
        .collect();
    let (q, proj) = fm.quotient(&spaces);
    let cert = match p.relation_window() {
        None => top,
        Some(w) => top.min(w),
    };
    let module = Arc::new(Arc::try_unwrap(q).unwrap_or_else(|a| (*a).clone()).with_cert(cert));
    let proj = (0..=top).map(|d| proj.matrix(d).clone()).collect();
    Realization {
        free,
        module,
        proj,
        lifts,
    }
}

/// Minimal generators of `M` through degree `g`, and the values they take.
fn greedy_generators(m: &RealizedModule, g: usize) -> (Vec<usize>, Vec<BitVec>) {
    let mut gens = Vec::new();
    let mut values: Vec<BitVec> = Vec::new();
    let mut seeds: Vec<Vec<BitVec>> = vec![Vec::new(); m.top() + 1];
    for d in 0..=g.min(m.top()) {
        let span = m.sq_closure(&seeds);
        let mut cur = span[d].clone();
        for i in 0..m.dim(d) {
            let v = BitVec::unit(m.dim(d), i);
            if cur.insert(v.clone()) {
                gens.push(d);
                values.push(v.clone());
                seeds[d].push(v);
            }
        }
    }
    (gens, values)
}

/// Presents the submodule of `M` generated in degrees `<= g`.
///
/// Generators are chosen greedily, lowest degree first, in canonical basis
/// order. Relations are the minimal relations of the evaluation map through
/// `cert(M)`; the result carries that relation window.
pub fn present(m: &RealizedModule, g: usize) -> Result<PresentedModule> {
    present_with_values(m, g).map(|(p, _)| p)
}

pub fn present_with_values(m: &RealizedModule, g: usize) -> Result<(PresentedModule, Vec<BitVec>)> {
    if g > m.cert() {
        return Err(Error::Window { degree: g, cert: m.cert() });
    }
    let (gens, values) = greedy_generators(m, g);
    let window = m.cert();
    let free = FreeSum::new(gens.clone(), window);
    let fm = free.realize();
    let mut relations = Vec::new();
    let mut seeds: Vec<Vec<BitVec>> = vec![Vec::new(); window + 1];
    for d in 0..=window {
        // evaluation F^d -> M^d
        let cols: Vec<BitVec> = free
            .basis(d)
            .iter()
            .map(|(mono, i)| m.act_monomial(mono, gens[*i], &values[*i]))
            .collect();
        let ev = LinMap::from_columns(m.dim(d), cols);
        let kernel = ev.kernel();
        if kernel.is_empty() {
            continue;
        }
        let span = fm.sq_closure(&seeds);
        let mut cur = span[d].clone();
        for v in kernel {
            if cur.insert(v.clone()) {
                relations.push(free.to_element(d, &v));
                seeds[d].push(v);
            }
        }
    }
    let relation_window = Some(window);
    Ok((
        PresentedModule::new(gens, relations).with_relation_window(relation_window),
        values,
    ))
}

/// A basis of `Hom_U(P, N)` (or maps raising degree by `shift`), each map
/// given by the images of the generators.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: usize,
    pub basis: Vec<Vec<BitVec>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves for generator images in `N` killing every relation.
pub fn hom_space(p: &PresentedModule, n: &RealizedModule, shift: usize) -> Result<HomSpace> {
    for &g in p.gens() {
        if g + shift > n.cert() {
            return Err(Error::Certification {
                degree: g + shift,
                reason: format!("generator degree exceeds cert {} of the target", n.cert()),
            });
        }
    }
    for r in 0..p.relations().len() {
        let d = p.relation_degree(r) + shift;
        if d > n.cert() {
            return Err(Error::Certification {
                degree: d,
                reason: format!("relation degree exceeds cert {} of the target", n.cert()),
            });
        }
    }
    // unknown layout: generator i occupies a block of size dim N^{g_i + shift}
    let blocks: Vec<usize> = p.gens().iter().map(|&g| n.dim(g + shift)).collect();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &b| {
            let o = *acc;
            *acc += b;
            Some(o)
        })
        .collect();
    let unknowns: usize = blocks.iter().sum();
    let rel_dims: Vec<usize> = (0..p.relations().len())
        .map(|r| n.dim(p.relation_degree(r) + shift))
        .collect();
    let total: usize = rel_dims.iter().sum();
    let owner: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, &b)| std::iter::repeat_n(i, b))
        .collect();
    let cols: Vec<BitVec> = (0..unknowns)
        .map(|u| {
            let i = owner[u];
            let local = u - offsets[i];
            let gdeg = p.gens()[i] + shift;
            let v = BitVec::unit(n.dim(gdeg), local);
            let mut out = BitVec::zeros(total);
            let mut base = 0;
            for (r, rel) in p.relations().iter().enumerate() {
                for (mono, g) in rel.terms() {
                    if *g == i {
                        let img = n.act_monomial(mono, gdeg, &v);
                        for b in img.iter_ones() {
                            out.flip(base + b);
                        }
                    }
                }
                base += rel_dims[r];
            }
            out
        })
        .collect();
    let sys = LinMap::from_columns(total, cols);
    let basis = sys
        .kernel()
        .into_iter()
        .map(|sol| {
            (0..p.gens().len())
                .map(|i| sol.slice(offsets[i], blocks[i]))
                .collect()
        })
        .collect();
    Ok(HomSpace { shift, basis })
}
