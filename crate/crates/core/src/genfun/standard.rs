use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{bridge::homology_functor, kron, FiniteFunctor, Mat};
use crate::gf2::{BitVec, LinMap};

/// The named functors available to tests and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardFunctor {
    Id,
    Const,
    TensorPower(usize),
    Lambda(usize),
    Sym(usize),
    /// `H_m(V) = H_m(BV)`, dual to degree `m` of `H*(BV)`.
    Gamma(usize),
    /// `P_W(V) = F₂[Hom(W, V)]` for `W = F₂^w`.
    P(usize),
    /// `I_W(V) = F₂^{Hom(V, W)}` for `W = F₂^w`.
    I(usize),
    /// `P̄_W`, the kernel of the augmentation of `P_W`.
    BarP(usize),
    /// `Ī_W`, the functions on `Hom(V, W)` vanishing at `0`.
    BarI(usize),
}

impl fmt::Display for StandardFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardFunctor::Id => write!(f, "id"),
            StandardFunctor::Const => write!(f, "const"),
            StandardFunctor::TensorPower(m) => write!(f, "tensor{m}"),
            StandardFunctor::Lambda(m) => write!(f, "lambda{m}"),
            StandardFunctor::Sym(m) => write!(f, "sym{m}"),
            StandardFunctor::Gamma(m) => write!(f, "gamma{m}"),
            StandardFunctor::P(w) => write!(f, "P{w}"),
            StandardFunctor::I(w) => write!(f, "I{w}"),
            StandardFunctor::BarP(w) => write!(f, "barP{w}"),
            StandardFunctor::BarI(w) => write!(f, "barI{w}"),
        }
    }
}

impl FromStr for StandardFunctor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, tail) = s.split_at(split);
        let arg = || tail.parse::<usize>().map_err(|_| format!("`{s}` needs a numeric argument"));
        Ok(match head {
            "id" if tail.is_empty() => StandardFunctor::Id,
            "const" if tail.is_empty() => StandardFunctor::Const,
            "tensor" => StandardFunctor::TensorPower(arg()?),
            "lambda" => StandardFunctor::Lambda(arg()?),
            "sym" => StandardFunctor::Sym(arg()?),
            "gamma" => StandardFunctor::Gamma(arg()?),
            "P" => StandardFunctor::P(arg()?),
            "I" => StandardFunctor::I(arg()?),
            "barP" => StandardFunctor::BarP(arg()?),
            "barI" => StandardFunctor::BarI(arg()?),
            _ => return Err(format!("unknown functor `{s}`")),
        })
    }
}

/// `m`-element subsets of `{0, …, k-1}` as masks, in increasing order.
pub(crate) fn subsets(k: usize, m: usize) -> Vec<u64> {
    (0u64..1 << k).filter(|s| s.count_ones() as usize == m).collect()
}

/// Exponent vectors of degree `m` in `k` variables, lexicographically.
pub(crate) fn monomials(k: usize, m: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, m: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == k {
            cur.push(m as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=m {
            cur.push(e as u32);
            rec(k, m - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(k, m, &mut Vec::new(), &mut out);
    out
}

fn indexer<T: std::hash::Hash + Eq + Clone>(items: &[T]) -> HashMap<T, usize> {
    items.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}

/// `Λ^m(A)`: the wedge of the images, expanded; repeated vectors vanish.
fn lambda_matrix(a: &Mat, m: usize) -> LinMap {
    let src = subsets(a.cols(), m);
    let tgt = subsets(a.rows(), m);
    let idx = indexer(&tgt);
    let cols = src
        .iter()
        .map(|&s| {
            let images: Vec<u64> = (0..a.cols()).filter(|c| s >> c & 1 == 1).map(|c| a.column(c)).collect();
            let mut out = BitVec::zeros(tgt.len());
            fn rec(images: &[u64], acc: u64, out: &mut BitVec, idx: &HashMap<u64, usize>) {
                let Some((first, rest)) = images.split_first() else {
                    out.flip(idx[&acc]);
                    return;
                };
                let mut bits = *first & !acc;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    rec(rest, acc | b, out, idx);
                    bits ^= b;
                }
            }
            rec(&images, 0, &mut out, &idx);
            out
        })
        .collect();
    LinMap::from_columns(tgt.len(), cols)
}

/// `S^m(A)` on monomial bases: substitute the images of the variables.
pub(crate) fn sym_matrix(a: &Mat, m: usize) -> LinMap {
    let src = monomials(a.cols(), m);
    let tgt = monomials(a.rows(), m);
    let idx = indexer(&tgt);
    let cols = src
        .iter()
        .map(|e| {
            let factors: Vec<u64> = e
                .iter()
                .enumerate()
                .flat_map(|(c, &x)| std::iter::repeat_n(a.column(c), x as usize))
                .collect();
            let mut out = BitVec::zeros(tgt.len());
            fn rec(factors: &[u64], acc: &mut Vec<u32>, out: &mut BitVec, idx: &HashMap<Vec<u32>, usize>) {
                let Some((first, rest)) = factors.split_first() else {
                    out.flip(idx[acc]);
                    return;
                };
                let mut bits = *first;
                while bits != 0 {
                    let r = bits.trailing_zeros() as usize;
                    acc[r] += 1;
                    rec(rest, acc, out, idx);
                    acc[r] -= 1;
                    bits &= bits - 1;
                }
            }
            rec(&factors, &mut vec![0; a.rows()], &mut out, &idx);
            out
        })
        .collect();
    LinMap::from_columns(tgt.len(), cols)
}

/// Code of a `rows × cols` matrix, matching [`Mat::all`].
fn code(m: &Mat) -> usize {
    m.columns()
        .iter()
        .enumerate()
        .map(|(c, &col)| (col as usize) << (c * m.rows()))
        .sum()
}

fn decode(rows: usize, cols: usize, code: usize) -> Mat {
    let mask = (1usize << rows) - 1;
    Mat::new(rows, cols, (0..cols).map(|c| ((code >> (c * rows)) & mask) as u64).collect())
}

/// A standard functor through rank `cap`.
pub fn standard_functor(which: StandardFunctor, cap: usize) -> FiniteFunctor {
    use StandardFunctor::*;
    let name = which.to_string();
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            0
        } else {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
    };
    match which {
        Id => FiniteFunctor::new(name, cap, (0..=cap).collect(), |a| a.to_linmap()),
        Const => FiniteFunctor::new(name, cap, vec![1; cap + 1], |_| LinMap::identity(1)),
        TensorPower(m) => FiniteFunctor::new(name, cap, (0..=cap).map(|k| k.pow(m as u32)).collect(), move |a| {
            let base = a.to_linmap();
            (0..m).fold(LinMap::identity(1), |acc, _| kron(&acc, &base))
        }),
        Lambda(m) => FiniteFunctor::new(name, cap, (0..=cap).map(|k| binom(k, m)).collect(), move |a| {
            lambda_matrix(a, m)
        }),
        Sym(m) => FiniteFunctor::new(
            name,
            cap,
            (0..=cap).map(|k| monomials(k, m).len()).collect(),
            move |a| sym_matrix(a, m),
        ),
        Gamma(m) => homology_functor(m, cap).renamed(name),
        P(w) => FiniteFunctor::new(name, cap, (0..=cap).map(|k| 1 << (k * w)).collect(), move |a| {
            let n = 1 << (a.cols() * w);
            let cols = (0..n)
                .map(|c| BitVec::unit(1 << (a.rows() * w), code(&a.compose(&decode(a.cols(), w, c)))))
                .collect();
            LinMap::from_columns(1 << (a.rows() * w), cols)
        }),
        BarP(w) => FiniteFunctor::new(name, cap, (0..=cap).map(|k| (1 << (k * w)) - 1).collect(), move |a| {
            let n = (1 << (a.cols() * w)) - 1;
            let t = (1 << (a.rows() * w)) - 1;
            let cols = (1..=n)
                .map(|c| {
                    let img = code(&a.compose(&decode(a.cols(), w, c)));
                    if img == 0 {
                        BitVec::zeros(t)
                    } else {
                        BitVec::unit(t, img - 1)
                    }
                })
                .collect();
            LinMap::from_columns(t, cols)
        }),
        I(w) | BarI(w) => {
            let reduced = matches!(which, BarI(_));
            let skip = usize::from(reduced);
            FiniteFunctor::new(
                name,
                cap,
                (0..=cap).map(|k| (1 << (k * w)) - skip).collect(),
                move |a| {
                    // δ_g ↦ Σ_{g' ∘ A = g} δ_{g'}
                    let (j, k) = (a.cols(), a.rows());
                    let n = (1 << (j * w)) - skip;
                    let t = (1 << (k * w)) - skip;
                    let mut cols = vec![BitVec::zeros(t); n];
                    for gp in skip..1 << (k * w) {
                        let g = code(&decode(w, k, gp).compose(a));
                        if g >= skip {
                            cols[g - skip].flip(gp - skip);
                        }
                    }
                    LinMap::from_columns(t, cols)
                },
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in [
            StandardFunctor::Id,
            StandardFunctor::Const,
            StandardFunctor::Lambda(2),
            StandardFunctor::BarI(1),
            StandardFunctor::Gamma(3),
        ] {
            assert_eq!(f.to_string().parse::<StandardFunctor>().unwrap(), f);
        }
        assert!("lambda".parse::<StandardFunctor>().is_err());
        assert!("foo2".parse::<StandardFunctor>().is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(0, 0).len(), 1);
        assert_eq!(monomials(0, 2).len(), 0);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
