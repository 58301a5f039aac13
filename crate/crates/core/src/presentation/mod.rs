//! Finite presentations, their simplification, and a coset enumerator.

mod classify;
mod coset;
mod eliminate;
mod simplify;

pub use classify::{classify_relator, is_generator_conjugate, RelatorClass};
pub use coset::{coset_enumerate, CosetResult};
pub use eliminate::{apply_substitution_table, eliminate_generator, parse_substitution_table, SubstitutionTable};
pub use simplify::{
    overlap_shorten, overlap_shorten_with, replay, total_length, trivial_simplify, Rewrite, RewriteLog, Rule,
    ShortenConfig, DEFAULT_SANDWICH_PERIOD, DEFAULT_SEED,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{involutory_collapse, GeneratorSymbol, SymbolSet, Word, WordError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("commuting pair must name two distinct generators, got `{0}`")]
    BadPair(String),
    #[error("expression for `{0}` contains `{0}`")]
    SelfReference(String),
    #[error("generator `{0}` not in alphabet")]
    UnknownGenerator(String),
    #[error("substitution table does not reach a fixed point; chain: {0}")]
    CyclicTable(String),
    #[error("log replay mismatch at step {0}")]
    ReplayMismatch(usize),
}

/// Unordered pair of distinct symbols, stored sorted.
pub type SymbolPair = (GeneratorSymbol, GeneratorSymbol);

fn pair(a: &GeneratorSymbol, b: &GeneratorSymbol) -> SymbolPair {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Alphabet, relators, declared involutions, and the commuting-pair cache.
///
/// Involutions and commuting pairs are defining relations: coset enumeration
/// adds `s²` and `[a, b]` for them.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    alphabet: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
    involutory: SymbolSet,
    commuting: BTreeSet<SymbolPair>,
}

impl Presentation {
    pub fn new(
        alphabet: Vec<GeneratorSymbol>,
        relators: Vec<Word>,
        involutory: SymbolSet,
        commuting: impl IntoIterator<Item = (GeneratorSymbol, GeneratorSymbol)>,
    ) -> Result<Self, PresentationError> {
        let set: SymbolSet = alphabet.iter().cloned().collect();
        if set.len() != alphabet.len() {
            let mut seen = SymbolSet::new();
            let dup = alphabet.iter().find(|s| !seen.insert((*s).clone())).unwrap();
            return Err(PresentationError::DuplicateGenerator(dup.to_string()));
        }
        for s in &involutory {
            if !set.contains(s) {
                return Err(PresentationError::UnknownGenerator(s.to_string()));
            }
        }
        let mut comm = BTreeSet::new();
        for (a, b) in commuting {
            if a == b {
                return Err(PresentationError::BadPair(a.to_string()));
            }
            for s in [&a, &b] {
                if !set.contains(s) {
                    return Err(PresentationError::UnknownGenerator(s.to_string()));
                }
            }
            comm.insert(pair(&a, &b));
        }
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            r.check_alphabet(&set)?;
            rels.push(involutory_collapse(&r, &involutory));
        }
        Ok(Self { alphabet, relators: rels, involutory, commuting: comm })
    }

    pub fn alphabet(&self) -> &[GeneratorSymbol] {
        &self.alphabet
    }

    pub fn alphabet_set(&self) -> SymbolSet {
        self.alphabet.iter().cloned().collect()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn involutory(&self) -> &SymbolSet {
        &self.involutory
    }

    pub fn commuting(&self) -> &BTreeSet<SymbolPair> {
        &self.commuting
    }

    pub fn commutes(&self, a: &GeneratorSymbol, b: &GeneratorSymbol) -> bool {
        a == b || self.commuting.contains(&pair(a, b))
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub(crate) fn with_relators(&self, relators: Vec<Word>) -> Self {
        Self { relators, ..self.clone() }
    }

    pub(crate) fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    pub(crate) fn remove_generator(&mut self, g: &GeneratorSymbol) {
        self.alphabet.retain(|s| s != g);
        self.involutory.remove(g);
        self.commuting.retain(|(a, b)| a != g && b != g);
    }

    /// All defining relators including `s²` for involutions and `[a, b]` for cached pairs.
    pub fn defining_relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for s in &self.involutory {
            out.push(Word::from_letters([s.letter(1), s.letter(1)]));
        }
        for (a, b) in &self.commuting {
            out.push(Word::commutator(&Word::generator(a), &Word::generator(b)));
        }
        out.extend(self.relators.iter().cloned());
        out
    }

    /// Parses the line-based presentation format.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut alphabet = Vec::new();
        let mut invol_all = false;
        let mut invol = Vec::new();
        let mut comm = Vec::new();
        let mut rels = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let perr = |msg: String| PresentationError::Parse { line, msg };
            let (key, rest) =
                content.split_once(':').ok_or_else(|| perr(format!("expected `key: value`, got `{content}`")))?;
            let sym = |t: &str| GeneratorSymbol::parse(t).map_err(|e| perr(e.to_string()));
            match key.trim() {
                "gens" => {
                    for t in rest.split_whitespace() {
                        alphabet.push(sym(t)?);
                    }
                }
                "invol" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks == ["all"] {
                        invol_all = true;
                    } else {
                        for t in toks {
                            invol.push(sym(t)?);
                        }
                    }
                }
                "comm" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err(perr("`comm:` takes exactly two generators".into()));
                    }
                    comm.push((sym(toks[0])?, sym(toks[1])?));
                }
                "rel" => rels.push(Word::parse(rest).map_err(|e| perr(e.to_string()))?),
                other => return Err(perr(format!("unknown key `{other}`"))),
            }
        }
        let involutory: SymbolSet =
            if invol_all { alphabet.iter().cloned().collect() } else { invol.into_iter().collect() };
        Self::new(alphabet, rels, involutory, comm)
    }

    /// Serializes: `gens`, `invol`, `comm` (sorted), `rel` (stored order); LF endings.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let gens: Vec<String> = self.alphabet.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!("gens: {}\n", gens.join(" ")).replace(": \n", ":\n"));
        if !self.involutory.is_empty() {
            if self.involutory.len() == self.alphabet.len() {
                out.push_str("invol: all\n");
            } else {
                let inv: Vec<String> = self.involutory.iter().map(|s| s.to_string()).collect();
                out.push_str(&format!("invol: {}\n", inv.join(" ")));
            }
        }
        for (a, b) in &self.commuting {
            out.push_str(&format!("comm: {a} {b}\n"));
        }
        for r in &self.relators {
            if r.is_empty() {
                out.push_str("rel:\n");
            } else {
                out.push_str(&format!("rel: {r}\n"));
            }
        }
        out
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "# symmetric group\ngens: u v\ninvol: all\nrel: u v u v u v\n";

    #[test]
    fn parse_and_round_trip() {
        let p = Presentation::parse(S3).unwrap();
        assert_eq!(p.alphabet().len(), 2);
        assert_eq!(p.involutory().len(), 2);
        let s = p.serialize();
        assert_eq!(s, "gens: u v\ninvol: all\nrel: u v u v u v\n");
        assert_eq!(Presentation::parse(&s).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Presentation::parse("gens: a\nrel: a b\n").unwrap_err();
        assert!(matches!(e, PresentationError::Word(_)));
        let e = Presentation::parse("gens: a b\n\nbogus\n").unwrap_err();
        assert_eq!(e, PresentationError::Parse { line: 3, msg: "expected `key: value`, got `bogus`".into() });
        let e = Presentation::parse("gens: a\ncomm: a a\n").unwrap_err();
        assert!(matches!(e, PresentationError::BadPair(_)));
    }

    #[test]
    fn relators_are_involution_collapsed() {
        let p = Presentation::parse("gens: g d\ninvol: g\nrel: g g d\nrel: g- d\n").unwrap();
        assert_eq!(p.relators()[0].to_string(), "d");
        assert_eq!(p.relators()[1].to_string(), "g d");
    }

    #[test]
    fn commuting_pairs_sorted_in_output() {
        let p = Presentation::parse("gens: a b c\ncomm: c a\ncomm: b a\n").unwrap();
        assert_eq!(p.serialize(), "gens: a b c\ncomm: a b\ncomm: a c\n");
    }
}
