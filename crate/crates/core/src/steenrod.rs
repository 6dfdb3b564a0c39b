//! The mod 2 Steenrod algebra as a rewriting system on admissible monomials.
//!
//! Words `Sq^{a1} ... Sq^{ak}` are rewritten with the Adem relation
//!
//! ```text
//! Sq^a Sq^b = sum_{j=0}^{a/2} C(b-1-j, a-2j) Sq^{a+b-j} Sq^j      (a < 2b)
//! ```
//!
//! until every adjacent pair satisfies `a_i >= 2 a_{i+1}`. Normalization folds
//! from the right: the tail is normalized first and the head square is then
//! multiplied into an admissible monomial, which is memoized.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::ParseError;
use crate::gf2::binomial_mod2;

/// A word in the squares, `Sq^{a1} ... Sq^{ak}` with all `ai >= 1`.
/// The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SqWord(Vec<u32>);

impl SqWord {
    /// Builds a word, dropping `Sq^0` factors.
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        SqWord(exponents.into_iter().filter(|&a| a > 0).collect())
    }

    pub fn unit() -> Self {
        SqWord(Vec::new())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }
}

/// An admissible monomial `Sq^{a1} ... Sq^{ak}` with `ai >= 2 a_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// Returns `None` unless the exponents are positive and admissible.
    pub fn new(exponents: Vec<u32>) -> Option<Self> {
        let w = SqWord(exponents);
        (w.0.iter().all(|&a| a > 0) && w.is_admissible()).then_some(Monomial(w.0))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a1 - (a2 + ... + ak)`; zero for the unit.
    pub fn excess(&self) -> u32 {
        match self.0.split_first() {
            None => 0,
            Some((a, rest)) => a - rest.iter().sum::<u32>(),
        }
    }

    pub fn as_word(&self) -> SqWord {
        SqWord(self.0.clone())
    }
}

/// A homogeneous GF(2) sum of admissible monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SqPoly(BTreeSet<Monomial>);

impl SqPoly {
    pub fn zero() -> Self {
        SqPoly(BTreeSet::new())
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut s = BTreeSet::new();
        s.insert(m);
        SqPoly(s)
    }

    /// `Sq^a` (the unit when `a = 0`).
    pub fn sq(a: u32) -> Self {
        if a == 0 {
            Self::one()
        } else {
            Self::from_monomial(Monomial(vec![a]))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.contains(m)
    }

    /// Adds a monomial with GF(2) cancellation.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &SqPoly) {
        for m in &other.0 {
            self.toggle(m.clone());
        }
    }

    /// Degree of the terms; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.0.iter().next().map(Monomial::degree)
    }
}

type MulCache = RwLock<HashMap<(u32, Monomial), Arc<SqPoly>>>;

fn cache() -> &'static MulCache {
    static CACHE: OnceLock<MulCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Sq^a * m` in admissible form, with `m` admissible.
pub fn sq_times(a: u32, m: &Monomial) -> Arc<SqPoly> {
    if a == 0 {
        return Arc::new(SqPoly::from_monomial(m.clone()));
    }
    match m.0.first() {
        None => return Arc::new(SqPoly::sq(a)),
        Some(&b) if a >= 2 * b => {
            let mut e = Vec::with_capacity(m.len() + 1);
            e.push(a);
            e.extend_from_slice(&m.0);
            return Arc::new(SqPoly::from_monomial(Monomial(e)));
        }
        _ => {}
    }
    let key = (a, m.clone());
    if let Some(hit) = cache().read().expect("cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let b = m.0[0];
    let tail = Monomial(m.0[1..].to_vec());
    let mut out = SqPoly::zero();
    for j in 0..=a / 2 {
        if !binomial_mod2((b - 1 - j) as u64, (a - 2 * j) as u64) {
            continue;
        }
        let inner = sq_times(j, &tail);
        for k in inner.terms() {
            out.add_assign(&sq_times(a + b - j, k));
        }
    }
    let out = Arc::new(out);
    cache()
        .write()
        .expect("cache poisoned")
        .insert(key, Arc::clone(&out));
    out
}

/// The admissible normal form of a word.
pub fn adem_normalize(w: &SqWord) -> SqPoly {
    let mut acc = SqPoly::one();
    for &a in w.0.iter().rev() {
        let mut next = SqPoly::zero();
        for m in acc.terms() {
            next.add_assign(&sq_times(a, m));
        }
        acc = next;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// The normalized product `p * q`.
pub fn compose(p: &SqPoly, q: &SqPoly) -> SqPoly {
    let mut out = SqPoly::zero();
    for m in p.terms() {
        for n in q.terms() {
            let mut acc = SqPoly::from_monomial(n.clone());
            for &a in m.0.iter().rev() {
                let mut next = SqPoly::zero();
                for t in acc.terms() {
                    next.add_assign(&sq_times(a, t));
                }
                acc = next;
            }
            out.add_assign(&acc);
        }
    }
    out
}

/// All admissible monomials of degree `d`, in lexicographic order.
pub fn all_admissibles(d: u32) -> Arc<Vec<Monomial>> {
    type BasisCache = RwLock<HashMap<u32, Arc<Vec<Monomial>>>>;
    static BASES: OnceLock<BasisCache> = OnceLock::new();
    let bases = BASES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = bases.read().expect("cache poisoned").get(&d) {
        return Arc::clone(hit);
    }
    fn go(rem: u32, max_first: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rem == 0 {
            out.push(Monomial(prefix.clone()));
            return;
        }
        // a is the next exponent; the remainder after it must fit an
        // admissible tail, whose degree is at most a - 1.
        for a in 1..=max_first.min(rem) {
            if rem - a > a.saturating_sub(1) {
                continue;
            }
            prefix.push(a);
            go(rem - a, a / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out.sort();
    let out = Arc::new(out);
    bases
        .write()
        .expect("cache poisoned")
        .insert(d, Arc::clone(&out));
    out
}

/// Admissible monomials of degree `d` and excess at most `e_max`, in
/// lexicographic order.
pub fn admissible_basis(d: u32, e_max: u32) -> Vec<Monomial> {
    all_admissibles(d)
        .iter()
        .filter(|m| m.excess() <= e_max)
        .cloned()
        .collect()
}

impl fmt::Display for SqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| format!("Sq^{a}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

impl fmt::Display for SqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqPoly({self})")
    }
}

impl FromStr for SqWord {
    type Err = ParseError;

    /// Parses `"Sq^3 Sq^1"`, `"Sq3 Sq1"` or `"1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "1" {
            return Ok(SqWord::unit());
        }
        let mut exps = Vec::new();
        let mut offset = s.len() - s.trim_start().len();
        for tok in t.split_whitespace() {
            let body = tok
                .strip_prefix("Sq")
                .ok_or_else(|| ParseError::new(offset, &["Sq"]))?;
            let body = body.strip_prefix('^').unwrap_or(body);
            let a: u32 = body
                .parse()
                .map_err(|_| ParseError::new(offset + 2, &["integer"]))?;
            exps.push(a);
            offset += tok.len() + 1;
        }
        if exps.is_empty() {
            return Err(ParseError::new(0, &["Sq", "1"]));
        }
        Ok(SqWord::new(exps))
    }
}

impl FromStr for SqPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(SqPoly::zero());
        }
        let mut out = SqPoly::zero();
        let mut offset = 0;
        for part in s.split('+') {
            let w: SqWord = part
                .parse()
                .map_err(|e: ParseError| ParseError::new(offset + e.offset, &e.expected_refs()))?;
            out.add_assign(&adem_normalize(&w));
            offset += part.len() + 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> String {
        adem_normalize(&s.parse().unwrap()).to_string()
    }

    #[test]
    fn adem_examples() {
        assert_eq!(nf("Sq^1 Sq^1"), "0");
        assert_eq!(nf("Sq^1 Sq^2"), "Sq^3");
        assert_eq!(nf("Sq^3"), "Sq^3");
        assert_eq!(nf("Sq^2 Sq^2"), "Sq^3 Sq^1");
        assert_eq!(nf("Sq^2 Sq^3"), "Sq^4 Sq^1 + Sq^5");
    }

    #[test]
    fn compose_examples() {
        let p = |s: &str| s.parse::<SqPoly>().unwrap();
        assert_eq!(compose(&p("Sq^2"), &p("Sq^2")), p("Sq^3 Sq^1"));
        assert_eq!(compose(&SqPoly::one(), &p("Sq^5")), p("Sq^5"));
        assert_eq!(compose(&p("Sq^2"), &p("Sq^3")), p("Sq^5 + Sq^4 Sq^1"));
    }

    #[test]
    fn basis_examples() {
        assert_eq!(admissible_basis(0, 0), vec![Monomial::unit()]);
        let b: Vec<String> = admissible_basis(3, 3).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, vec!["Sq^2 Sq^1", "Sq^3"]);
        let b: Vec<String> = admissible_basis(3, 1).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, vec!["Sq^2 Sq^1"]);
    }

    #[test]
    fn excess_values() {
        assert_eq!(Monomial::new(vec![3]).unwrap().excess(), 3);
        assert_eq!(Monomial::new(vec![2, 1]).unwrap().excess(), 1);
        assert_eq!(Monomial::new(vec![4, 2, 1]).unwrap().excess(), 1);
        assert!(Monomial::new(vec![2, 2]).is_none());
    }

    #[test]
    fn parse_render() {
        let w: SqWord = "Sq^4 Sq^2 Sq^1".parse().unwrap();
        assert_eq!(w.to_string(), "Sq^4 Sq^2 Sq^1");
        assert!("Sx^2".parse::<SqWord>().is_err());
        let e = "Sq^2 Sqx".parse::<SqWord>().unwrap_err();
        assert_eq!(e.offset, 7);
    }
}
