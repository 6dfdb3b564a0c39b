use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::gf2::BitVec;
use crate::steenrod::{admissible_basis, sq_times, Monomial};

use super::RealizedModule;

/// An element of a finite sum of free unstable modules `⊕ F(g_i)`: a set of
/// `(admissible monomial, generator index)` pairs, each of excess at most the
/// generator's degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeElement(BTreeSet<(Monomial, usize)>);

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement(BTreeSet::new())
    }

    pub fn generator(i: usize) -> Self {
        Self::term(Monomial::unit(), i)
    }

    pub fn term(m: Monomial, gen: usize) -> Self {
        let mut s = BTreeSet::new();
        s.insert((m, gen));
        FreeElement(s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, usize)> {
        self.0.iter()
    }

    pub fn toggle(&mut self, m: Monomial, gen: usize) {
        let key = (m, gen);
        if !self.0.remove(&key) {
            self.0.insert(key);
        }
    }

    pub fn add_assign(&mut self, other: &FreeElement) {
        for (m, g) in &other.0 {
            self.toggle(m.clone(), *g);
        }
    }

    /// Degree, given generator degrees; `None` for zero.
    pub fn degree(&self, gens: &[usize]) -> Option<usize> {
        self.0.iter().next().map(|(m, g)| m.degree() as usize + gens[*g])
    }

    /// `Sq^a` applied in the free module; terms of excess above the
    /// generator degree vanish.
    pub fn sq(&self, a: u32, gens: &[usize]) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m, g) in &self.0 {
            for t in sq_times(a, m).terms() {
                if t.excess() as usize <= gens[*g] {
                    out.toggle(t.clone(), *g);
                }
            }
        }
        out
    }

    /// Applies an admissible monomial (rightmost square first).
    pub fn act(&self, m: &Monomial, gens: &[usize]) -> FreeElement {
        let mut cur = self.clone();
        for &a in m.exponents().iter().rev() {
            cur = cur.sq(a, gens);
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    /// Replaces every generator index `i` by `f(i)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m, g) in &self.0 {
            out.toggle(m.clone(), f(*g));
        }
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, g)| {
                if m.is_unit() {
                    format!("ι{g}")
                } else {
                    format!("{m} ι{g}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({self})")
    }
}

/// The sum `⊕ F(g_i)` realized through degree `top`, with basis
/// `Sq^I ι_i` ordered by generator index, then lexicographically on `I`.
#[derive(Clone, Debug)]
pub struct FreeSum {
    gens: Vec<usize>,
    top: usize,
    basis: Vec<Vec<(Monomial, usize)>>,
    index: Vec<HashMap<(Monomial, usize), usize>>,
}

impl FreeSum {
    pub fn new(gens: Vec<usize>, top: usize) -> Self {
        let mut basis = vec![Vec::new(); top + 1];
        for (i, &g) in gens.iter().enumerate() {
            for (d, slot) in basis.iter_mut().enumerate().skip(g) {
                for m in admissible_basis((d - g) as u32, g as u32) {
                    slot.push((m, i));
                }
            }
        }
        let index = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(j, k)| (k, j)).collect())
            .collect();
        FreeSum {
            gens,
            top,
            basis,
            index,
        }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, Vec::len)
    }

    pub fn basis(&self, d: usize) -> &[(Monomial, usize)] {
        &self.basis[d]
    }

    pub fn to_vec(&self, d: usize, x: &FreeElement) -> BitVec {
        let mut v = BitVec::zeros(self.dim(d));
        for key in x.terms() {
            let j = self.index[d]
                .get(key)
                .unwrap_or_else(|| panic!("term {} ι{} not in degree {d}", key.0, key.1));
            v.flip(*j);
        }
        v
    }

    pub fn to_element(&self, d: usize, v: &BitVec) -> FreeElement {
        let mut x = FreeElement::zero();
        for j in v.iter_ones() {
            let (m, g) = &self.basis[d][j];
            x.toggle(m.clone(), *g);
        }
        x
    }

    pub fn realize(&self) -> RealizedModule {
        let dims = (0..=self.top).map(|d| self.dim(d)).collect();
        let m = RealizedModule::build(self.top, self.top, dims, |k, d, i| {
            let (mono, g) = &self.basis[d][i];
            let x = FreeElement::term(mono.clone(), *g).sq(k as u32, &self.gens);
            self.to_vec(d + k, &x)
        });
        let labels = self
            .basis
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(m, g)| FreeElement::term(m.clone(), *g).to_string())
                    .collect()
            })
            .collect();
        m.with_labels(labels)
    }
}

/// `F(n)` realized through degree `top`.
pub fn free(n: usize, top: usize) -> RealizedModule {
    FreeSum::new(vec![n], top).realize()
}
