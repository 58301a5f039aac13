//! The semidirect product of S_n with a direct power of a free group, and the map Φ.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::TorusGraphData;
use crate::word::{cyclic_reduce, GeneratorSymbol, Letter, SymbolSet, Word};

/// Number of planes, and the default permutation degree.
pub const DEGREE: usize = 18;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemiError {
    #[error("permutation degrees differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("symbol `{0}` is not an edge of the graph")]
    UnknownSymbol(String),
    #[error("relator has nontrivial permutation part {0}")]
    NontrivialPermutation(String),
    #[error("bad fiber term `{0}`")]
    Parse(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Permutation of `1..=n`; `a · b` applies `b` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// From the list of images of `1..=n`; `None` unless bijective.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, SemiError> {
        if self.degree() != other.degree() {
            return Err(SemiError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(Self { images: other.images.iter().map(|&x| self.apply(x)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self { images: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Element of the direct power: one freely reduced word per index, identity entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberElement {
    entries: BTreeMap<usize, Word>,
}

impl FiberElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The single term `ω_index^sign`.
    pub fn term(omega: &GeneratorSymbol, index: usize, sign: i8) -> Self {
        Self::single(index, Word::from_letters([omega.letter(sign)]))
    }

    pub fn single(index: usize, w: Word) -> Self {
        let mut f = Self::default();
        f.set(index, w);
        f
    }

    pub fn get(&self, index: usize) -> Word {
        self.entries.get(&index).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, index: usize, w: Word) {
        if w.is_identity() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, w);
        }
    }

    pub fn entries(&self) -> &BTreeMap<usize, Word> {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Word::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiply(&self, other: &FiberElement) -> FiberElement {
        let mut out = self.clone();
        for (&i, w) in &other.entries {
            let prod = out.get(i).multiply(w);
            out.set(i, prod);
        }
        out
    }

    pub fn invert(&self) -> FiberElement {
        Self { entries: self.entries.iter().map(|(&i, w)| (i, w.invert())).collect() }
    }

    /// Moves the entry at `α` to `σ(α)`.
    pub fn act(&self, sigma: &Permutation) -> FiberElement {
        Self { entries: self.entries.iter().map(|(&i, w)| (sigma.apply(i), w.clone())).collect() }
    }

    /// Appends `ω_index^sign` on the right, cancelling freely.
    pub fn push(&mut self, omega: &GeneratorSymbol, index: usize, sign: i8) {
        let w = self.entries.remove(&index).unwrap_or_default();
        let next = w.multiply(&Word::from_letters([omega.letter(sign)]));
        self.set(index, next);
    }

    /// Parses whitespace-separated terms `<omega>_<index>[-]`.
    pub fn parse(text: &str) -> Result<Self, SemiError> {
        let mut f = Self::default();
        for tok in text.split_whitespace() {
            let (omega, rest) = tok.split_once('_').ok_or_else(|| SemiError::Parse(tok.into()))?;
            let (idx, sign) = match rest.strip_suffix('-') {
                Some(r) => (r, -1),
                None => (rest, 1),
            };
            let index: usize = idx.parse().map_err(|_| SemiError::Parse(tok.into()))?;
            if index == 0 {
                return Err(SemiError::IndexOutOfRange(index));
            }
            let sym = GeneratorSymbol::parse(omega).map_err(|_| SemiError::Parse(tok.into()))?;
            f.push(&sym, index, sign);
        }
        Ok(f)
    }
}

impl fmt::Display for FiberElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, w) in &self.entries {
            for l in w.letters() {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}_{}{}", l.symbol, i, if l.sign < 0 { "-" } else { "" })?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub perm: Permutation,
    pub fiber: FiberElement,
}

impl SemidirectElement {
    pub fn identity(n: usize) -> Self {
        Self { perm: Permutation::identity(n), fiber: FiberElement::identity() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.fiber.is_identity()
    }

    pub fn invert(&self) -> Self {
        Self { perm: self.perm.inverse(), fiber: self.fiber.act(&self.perm).invert() }
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fiber.is_identity() {
            write!(f, "{}", self.perm)
        } else {
            write!(f, "{} {}", self.perm, self.fiber)
        }
    }
}

/// `(σ, f)(τ, g) = (στ, τ⁻¹(f)·g)`.
pub fn semi_multiply(x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement, SemiError> {
    let perm = x.perm.compose(&y.perm)?;
    let fiber = x.fiber.act(&y.perm.inverse()).multiply(&y.fiber);
    Ok(SemidirectElement { perm, fiber })
}

/// Integer exponent sums per free generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbVector(pub BTreeMap<GeneratorSymbol, i64>);

impl AbVector {
    pub fn add(&mut self, s: &GeneratorSymbol, k: i64) {
        let e = self.0.entry(s.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(s);
        }
    }

    pub fn get(&self, s: &GeneratorSymbol) -> i64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, k)| format!("{k}e{s}")).collect();
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

pub fn ab(f: &FiberElement) -> AbVector {
    let mut v = AbVector::default();
    for w in f.entries.values() {
        for l in w.letters() {
            v.add(&l.symbol, l.sign as i64);
        }
    }
    v
}

/// Membership in the kernel of `ab`.
pub fn in_f(f: &FiberElement) -> bool {
    ab(f).is_zero()
}

/// Image of one edge generator: `(αβ)` for tree edges, `(αβ) ω_β⁻¹ ω_α` for cycle edges.
pub fn phi_generator(s: &GeneratorSymbol, data: &TorusGraphData) -> Result<SemidirectElement, SemiError> {
    let e = data.edge_for(s).ok_or_else(|| SemiError::UnknownSymbol(s.to_string()))?;
    let n = data.t.vertex_count();
    let mut fiber = FiberElement::identity();
    if let Some((a, b)) = data.spanning.orientation(&e.id) {
        fiber.push(&e.id, b, -1);
        fiber.push(&e.id, a, 1);
    }
    Ok(SemidirectElement { perm: Permutation::transposition(n, e.u, e.v), fiber })
}

/// Evaluates Φ on a word over the edges of T; primed symbols use the underlying edge.
pub fn phi_eval(w: &Word, data: &TorusGraphData) -> Result<SemidirectElement, SemiError> {
    let n = data.t.vertex_count();
    let mut images = Permutation::identity(n).images;
    let mut fiber = FiberElement::identity();
    for l in w.letters() {
        let e = data.edge_for(&l.symbol).ok_or_else(|| SemiError::UnknownSymbol(l.symbol.to_string()))?;
        let (u, v) = (e.u, e.v);
        // Right multiplication by an involution (t, g): move entries u and v, then append g.
        let a = fiber.entries.remove(&u);
        let b = fiber.entries.remove(&v);
        if let Some(a) = a {
            fiber.entries.insert(v, a);
        }
        if let Some(b) = b {
            fiber.entries.insert(u, b);
        }
        if let Some((alpha, beta)) = data.spanning.orientation(&e.id) {
            fiber.push(&e.id, beta, -1);
            fiber.push(&e.id, alpha, 1);
        }
        images.swap(u - 1, v - 1);
    }
    Ok(SemidirectElement { perm: Permutation { images }, fiber })
}

/// Fiber part of Φ(r), provided its permutation part is trivial.
pub fn relator_to_fiber(r: &Word, data: &TorusGraphData) -> Result<FiberElement, SemiError> {
    let x = phi_eval(r, data)?;
    if !x.perm.is_identity() {
        return Err(SemiError::NontrivialPermutation(x.perm.to_string()));
    }
    Ok(x.fiber)
}

/// Cyclically reduces every section.
pub fn strip_conjugation(f: &FiberElement) -> FiberElement {
    let none = SymbolSet::new();
    let mut out = FiberElement::identity();
    for (&i, w) in &f.entries {
        out.set(i, cyclic_reduce(w, &none));
    }
    out
}

/// One single-index element per nontrivial index, ascending.
pub fn sections(f: &FiberElement) -> Vec<FiberElement> {
    f.entries.iter().map(|(&i, w)| FiberElement::single(i, w.clone())).collect()
}

/// Renames nontrivial indices to `1, 2, …` with sections sorted by content.
pub fn genericize(f: &FiberElement) -> FiberElement {
    let mut words: Vec<&Word> = f.entries.values().collect();
    words.sort();
    let mut out = FiberElement::identity();
    for (k, w) in words.into_iter().enumerate() {
        out.set(k + 1, w.clone());
    }
    out
}

/// Substitutes each free generator letter by a word, per index.
pub fn map_letters(f: &FiberElement, image: impl Fn(&Letter) -> Word) -> FiberElement {
    let mut out = FiberElement::identity();
    for (&i, w) in &f.entries {
        let mut acc = Word::identity();
        for l in w.letters() {
            acc = acc.multiply(&image(l));
        }
        out.set(i, acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> TorusGraphData {
        TorusGraphData::bundled()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn phi_anchor_values() {
        let d = data();
        assert_eq!(phi_eval(&w("6"), &d).unwrap().to_string(), "(2 3)");
        assert_eq!(phi_eval(&w("1"), &d).unwrap().to_string(), "(2 7) 1_2 1_7-");
        let g7 = phi_eval(&w("7"), &d).unwrap();
        assert_eq!(g7.perm.to_string(), "(2 6)");
        assert_eq!(g7.fiber, FiberElement::parse("7_6- 7_2").unwrap());
        assert_eq!(phi_eval(&w("4'"), &d).unwrap(), phi_eval(&w("4"), &d).unwrap());
        assert!(phi_eval(&w("99"), &d).is_err());
    }

    #[test]
    fn product_rule() {
        let n = 4;
        let f = FiberElement::parse("1_1 2_2").unwrap();
        let g = FiberElement::parse("2_2- 1_3").unwrap();
        let id = Permutation::identity(n);
        let x = SemidirectElement { perm: id.clone(), fiber: f.clone() };
        let y = SemidirectElement { perm: id, fiber: g.clone() };
        assert_eq!(semi_multiply(&x, &y).unwrap().fiber, f.multiply(&g));
        let t = SemidirectElement { perm: Permutation::transposition(n, 1, 2), fiber: FiberElement::identity() };
        assert!(semi_multiply(&t, &t).unwrap().is_identity());
        let bad = SemidirectElement::identity(5);
        assert!(semi_multiply(&t, &bad).is_err());
    }

    #[test]
    fn worked_relator_is_trivial() {
        let d = data();
        let r = w("6 7 6 1").power(2);
        assert!(relator_to_fiber(&r, &d).unwrap().is_identity());
        assert!(relator_to_fiber(&w("6 6"), &d).unwrap().is_identity());
        assert_eq!(relator_to_fiber(&w("6"), &d), Err(SemiError::NontrivialPermutation("(2 3)".into())));
    }

    #[test]
    fn ab_examples() {
        assert!(in_f(&FiberElement::parse("1_7- 1_2").unwrap()));
        let v = ab(&FiberElement::parse("7_2").unwrap());
        assert_eq!(v.get(&GeneratorSymbol::parse("7").unwrap()), 1);
        assert!(!in_f(&FiberElement::parse("7_2").unwrap()));
        assert!(ab(&FiberElement::identity()).is_zero());
    }

    #[test]
    fn stripping_sections_genericizing() {
        let f = FiberElement::parse("7_3 1_3 2_3 7_3- 4_5").unwrap();
        assert_eq!(strip_conjugation(&f), FiberElement::parse("1_3 2_3 4_5").unwrap());
        let g = FiberElement::parse("1_2 4_2").unwrap();
        assert_eq!(strip_conjugation(&g), g);
        let s = sections(&FiberElement::parse("1_1 2_4 3_9").unwrap());
        assert_eq!(s.len(), 3);
        assert_eq!(s[1], FiberElement::parse("2_4").unwrap());
        assert!(sections(&FiberElement::identity()).is_empty());
        let a = FiberElement::parse("1_5 2_5 3_9").unwrap();
        let b = FiberElement::parse("3_2 1_7 2_7").unwrap();
        assert_eq!(genericize(&a), genericize(&b));
        assert_eq!(genericize(&FiberElement::parse("4_12").unwrap()), FiberElement::parse("4_1").unwrap());
        assert!(genericize(&FiberElement::identity()).is_identity());
    }

    #[test]
    fn fiber_text_round_trip() {
        let f = FiberElement::parse("7_3- 7_6 1_2- 1_7").unwrap();
        assert_eq!(f.to_string(), "1_2- 7_3- 7_6 1_7");
        assert_eq!(FiberElement::parse(&f.to_string()).unwrap(), f);
        assert!(FiberElement::parse("7_0").is_err());
        assert!(FiberElement::parse("x3").is_err());
    }
}
