//! Free-group words over named generators.
//!
//! Words are kept freely reduced. Collapses that depend on extra relations
//! (involutions, commuting pairs) are explicit functions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("symbol `{0}` is not in the alphabet")]
    AlphabetMismatch(String),
}

/// A generator name with an optional prime, e.g. `7`, `17'`, `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    name: Arc<str>,
    primed: bool,
}

impl GeneratorSymbol {
    pub fn new(name: &str, primed: bool) -> Result<Self, WordError> {
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(WordError::InvalidToken(name.to_string()));
        }
        Ok(Self { name: Arc::from(name), primed })
    }

    /// Parses `name` or `name'`.
    pub fn parse(token: &str) -> Result<Self, WordError> {
        match token.strip_suffix('\'') {
            Some(base) => Self::new(base, true),
            None => Self::new(token, false),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn primed(&self) -> bool {
        self.primed
    }

    /// The same name without the prime.
    pub fn unprimed(&self) -> Self {
        Self { name: self.name.clone(), primed: false }
    }

    pub fn letter(&self, sign: i8) -> Letter {
        Letter::new(self.clone(), sign)
    }
}

impl Ord for GeneratorSymbol {
    /// Numeric names first in numeric order, then other names lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        let num = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        let key = |s: &str| (!num(s), if num(s) { s.len() } else { 0 });
        key(&self.name)
            .cmp(&key(&other.name))
            .then_with(|| self.name.cmp(&other.name))
            .then(self.primed.cmp(&other.primed))
    }
}

impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.primed { "'" } else { "" })
    }
}

impl fmt::Debug for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GeneratorSymbol {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

pub type SymbolSet = BTreeSet<GeneratorSymbol>;

/// A generator raised to `+1` or `-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub sign: i8,
}

impl Letter {
    pub fn new(symbol: GeneratorSymbol, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Self { symbol, sign }
    }

    pub fn inverse(&self) -> Self {
        Self { symbol: self.symbol.clone(), sign: -self.sign }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.sign == -other.sign
    }

    /// Parses the token grammar `name['][-]`.
    pub fn parse(token: &str) -> Result<Self, WordError> {
        let (body, sign) = match token.strip_suffix('-') {
            Some(b) => (b, -1),
            None => (token, 1),
        };
        let symbol = GeneratorSymbol::parse(body).map_err(|_| WordError::InvalidToken(token.to_string()))?;
        Ok(Self { symbol, sign })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.symbol, if self.sign < 0 { "-" } else { "" })
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduces a letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last().is_some_and(|t| t.is_inverse_of(&l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        reduce(raw)
    }

    pub fn generator(symbol: &GeneratorSymbol) -> Self {
        Self { letters: vec![symbol.letter(1)] }
    }

    /// Parses whitespace-separated tokens.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let letters: Result<Vec<_>, _> = text.split_whitespace().map(Letter::parse).collect();
        Ok(reduce(letters?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        reduce(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    /// `g u g⁻¹`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.multiply(b).multiply(&a.invert()).multiply(&b.invert())
    }

    pub fn symbols(&self) -> SymbolSet {
        self.letters.iter().map(|l| l.symbol.clone()).collect()
    }

    pub fn contains_symbol(&self, s: &GeneratorSymbol) -> bool {
        self.letters.iter().any(|l| &l.symbol == s)
    }

    /// Checks that every symbol belongs to `alphabet`.
    pub fn check_alphabet(&self, alphabet: &SymbolSet) -> Result<(), WordError> {
        match self.letters.iter().find(|l| !alphabet.contains(&l.symbol)) {
            Some(l) => Err(WordError::AlphabetMismatch(l.symbol.to_string())),
            None => Ok(()),
        }
    }

    /// Subword `[from, to)`, reduced.
    pub fn slice(&self, from: usize, to: usize) -> Word {
        reduce(self.letters[from..to].iter().cloned())
    }

    /// Rotation starting at position `k`, reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        reduce(self.letters[k..].iter().chain(self.letters[..k].iter()).cloned())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// Multiplies two words after checking that both use only `alphabet`.
pub fn multiply_in(alphabet: &SymbolSet, u: &Word, v: &Word) -> Result<Word, WordError> {
    u.check_alphabet(alphabet)?;
    v.check_alphabet(alphabet)?;
    Ok(u.multiply(v))
}

fn normalize(l: &Letter, involutory: &SymbolSet) -> Letter {
    if l.sign < 0 && involutory.contains(&l.symbol) {
        l.inverse()
    } else {
        l.clone()
    }
}

fn cancels(a: &Letter, b: &Letter, involutory: &SymbolSet) -> bool {
    a.symbol == b.symbol && (a.sign == -b.sign || involutory.contains(&a.symbol))
}

/// Reduces modulo `s² = 1` for every `s` in `involutory`; such letters end positive.
pub fn involutory_collapse(w: &Word, involutory: &SymbolSet) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in &w.letters {
        let l = normalize(l, involutory);
        if out.last().is_some_and(|t| cancels(t, &l, involutory)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

/// Replaces `g v g⁻¹` by `v` whenever every symbol of `v` commutes with `g`.
///
/// For involutory `g` the closing letter is `g` itself. Iterates to a fixed point.
pub fn sandwich_collapse<F>(w: &Word, commutes: F, involutory: &SymbolSet) -> Word
where
    F: Fn(&GeneratorSymbol, &GeneratorSymbol) -> bool,
{
    let mut cur = involutory_collapse(w, involutory);
    loop {
        let letters = &cur.letters;
        let mut hit = None;
        'outer: for i in 0..letters.len() {
            let g = &letters[i];
            for (j, l) in letters.iter().enumerate().skip(i + 1) {
                if cancels(g, l, involutory) {
                    hit = Some((i, j));
                    break 'outer;
                }
                if l.symbol != g.symbol && !commutes(&g.symbol, &l.symbol) {
                    break;
                }
            }
        }
        match hit {
            None => return cur,
            Some((i, j)) => {
                let raw: Vec<Letter> =
                    letters.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, l)| l.clone()).collect();
                cur = involutory_collapse(&Word { letters: raw }, involutory);
            }
        }
    }
}

/// All cyclic rotations, each freely reduced.
pub fn rotations(w: &Word) -> BTreeSet<Word> {
    if w.is_empty() {
        return BTreeSet::from([Word::identity()]);
    }
    (0..w.len()).map(|k| w.rotate(k)).collect()
}

/// Removes conjugating prefixes, modulo the given involutions.
pub fn cyclic_reduce(w: &Word, involutory: &SymbolSet) -> Word {
    let w = involutory_collapse(w, involutory);
    let l = &w.letters;
    let (mut a, mut b) = (0usize, l.len());
    while b >= a + 2 && cancels(&l[a], &l[b - 1], involutory) {
        a += 1;
        b -= 1;
    }
    Word { letters: l[a..b].to_vec() }
}

/// Inverse modulo the given involutions.
pub fn invert_collapsed(w: &Word, involutory: &SymbolSet) -> Word {
    involutory_collapse(&w.invert(), involutory)
}

/// Least representative of the class of `w` under rotation and inversion.
pub fn cyclic_canonical(w: &Word, involutory: &SymbolSet) -> Word {
    let w = cyclic_reduce(w, involutory);
    let winv = invert_collapsed(&w, involutory);
    let n = w.len();
    let mut best: Option<Vec<Letter>> = None;
    for base in [&w, &winv] {
        for k in 0..n.max(1) {
            let rot: Vec<Letter> = base.letters[k..].iter().chain(base.letters[..k].iter()).cloned().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    Word { letters: best.unwrap_or_default() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn set(s: &str) -> SymbolSet {
        s.split_whitespace().map(|t| GeneratorSymbol::parse(t).unwrap()).collect()
    }

    #[test]
    fn token_grammar() {
        let l = Letter::parse("19'-").unwrap();
        assert_eq!(l.symbol.name(), "19");
        assert!(l.symbol.primed());
        assert_eq!(l.sign, -1);
        assert_eq!(l.to_string(), "19'-");
        assert!(Letter::parse("-").is_err());
        assert!(Letter::parse("'").is_err());
        assert_eq!(w("7 17' 13- 19'-").to_string(), "7 17' 13- 19'-");
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("a a- b"), w("b"));
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("a b b- a").to_string(), "a a");
    }

    #[test]
    fn group_ops() {
        assert!(w("a").multiply(&w("a-")).is_identity());
        assert_eq!(w("a b").invert().to_string(), "b- a-");
        assert_eq!(w("b").conjugate(&w("a")).to_string(), "a b a-");
        let alpha = set("a b");
        assert!(multiply_in(&alpha, &w("a"), &w("c")).is_err());
    }

    #[test]
    fn involutory_examples() {
        let inv = set("g");
        assert_eq!(involutory_collapse(&w("g g d"), &inv), w("d"));
        assert_eq!(involutory_collapse(&w("g- d"), &inv), w("g d"));
        assert_eq!(involutory_collapse(&w("d"), &inv), w("d"));
    }

    #[test]
    fn sandwich_examples() {
        let none = SymbolSet::new();
        let gd = |a: &GeneratorSymbol, b: &GeneratorSymbol| {
            let mut p = [a.name(), b.name()];
            p.sort();
            p == ["d", "g"] || p == ["a", "g"] || p == ["b", "g"]
        };
        assert_eq!(sandwich_collapse(&w("g d g-"), gd, &none), w("d"));
        assert_eq!(sandwich_collapse(&w("g d g-"), |_, _| false, &none), w("g d g-"));
        assert_eq!(sandwich_collapse(&w("g a b g-"), gd, &none), w("a b"));
        let inv = set("g d");
        assert_eq!(sandwich_collapse(&w("g d g d"), gd, &inv), Word::identity());
    }

    #[test]
    fn rotation_examples() {
        let r = rotations(&w("a b c"));
        assert_eq!(r, [w("a b c"), w("b c a"), w("c a b")].into_iter().collect());
        assert_eq!(rotations(&Word::identity()), BTreeSet::from([Word::identity()]));
        let r = rotations(&w("a b a-"));
        assert_eq!(r, [w("a b a-"), w("b")].into_iter().collect());
    }

    #[test]
    fn canonical_up_to_rotation_and_inversion() {
        let none = SymbolSet::new();
        let c = cyclic_canonical(&w("a b c"), &none);
        assert_eq!(c, cyclic_canonical(&w("b c a"), &none));
        assert_eq!(c, cyclic_canonical(&w("c- b- a-"), &none));
        assert_eq!(cyclic_reduce(&w("x a b x-"), &none), w("a b"));
    }

    #[test]
    fn symbol_order_is_numeric() {
        let mut v: Vec<_> = ["10", "9", "2'", "2", "c"].iter().map(|s| GeneratorSymbol::parse(s).unwrap()).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["2", "2'", "9", "10", "c"]);
    }
}
