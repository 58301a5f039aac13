//! Normal-form arithmetic in the nilpotent groups K*, H and K.

pub mod analysis;
pub mod collect;
pub mod projective;
pub mod theta;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use collect::{Local, RuleSet};
pub use collect::{C, FOUR, GEN_NAMES, ONE, SEVEN, TEN};
use theta::{ThetaLattice, ThetaVector, T15, T17, T2, T23, T3, THETA_COUNT};

/// Number of indices.
pub const N: usize = 18;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KStarError {
    #[error("exponent overflow during collection")]
    Overflow,
    #[error("index {0} out of range 1..=18")]
    IndexOutOfRange(usize),
    #[error("no commutator rule for generators {0} and {1}")]
    MissingRule(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Letters available in K*: the five basic generators and the derived ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega {
    C,
    Seven,
    One,
    Ten,
    Four,
    Thirteen,
    Fifteen,
    Seventeen,
    TwentyThree,
    Two,
    Three,
}

impl Omega {
    pub const BASIC: [Omega; 5] = [Omega::C, Omega::Seven, Omega::One, Omega::Ten, Omega::Four];

    pub fn name(self) -> &'static str {
        match self {
            Omega::C => "c",
            Omega::Seven => "7",
            Omega::One => "1",
            Omega::Ten => "10",
            Omega::Four => "4",
            Omega::Thirteen => "13",
            Omega::Fifteen => "15",
            Omega::Seventeen => "17",
            Omega::TwentyThree => "23",
            Omega::Two => "2",
            Omega::Three => "3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Omega::C,
            Omega::Seven,
            Omega::One,
            Omega::Ten,
            Omega::Four,
            Omega::Thirteen,
            Omega::Fifteen,
            Omega::Seventeen,
            Omega::TwentyThree,
            Omega::Two,
            Omega::Three,
        ]
        .into_iter()
        .find(|o| o.name() == s)
    }

    /// Position in the normal-form order, for basic generators.
    pub fn basic_index(self) -> Option<usize> {
        Omega::BASIC.iter().position(|&o| o == self)
    }
}

/// `ω_index^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorRef {
    pub symbol: Omega,
    pub index: usize,
    pub sign: i8,
}

impl GeneratorRef {
    pub fn new(symbol: Omega, index: usize, sign: i8) -> Self {
        Self { symbol, index, sign }
    }
}

/// θ part plus one row of normal-form exponents `(c, 7, 1, 10, 4)` per index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KStarElement {
    pub theta: ThetaVector,
    pub exps: Vec<[i64; 5]>,
}

impl KStarElement {
    /// Indices with a nonzero exponent row.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, r)| r.iter().any(|&x| x != 0)).map(|(i, _)| i + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.theta.is_zero() && self.support().next().is_none()
    }

    /// Lies in the abelian subgroup generated by Θ and the c_i, 7_i.
    pub fn in_abelian_part(&self) -> bool {
        self.exps.iter().all(|r| r[ONE] == 0 && r[TEN] == 0 && r[FOUR] == 0)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("theta: {}\n", self.theta);
        for (i, r) in self.exps.iter().enumerate() {
            out.push_str(&format!("{}: c^{} 7^{} 1^{} 10^{} 4^{}\n", i + 1, r[0], r[1], r[2], r[3], r[4]));
        }
        out
    }

    /// Parses the format written by `serialize`.
    pub fn parse(text: &str) -> Result<Self, KStarError> {
        let perr = |m: &str| KStarError::Parse(m.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| perr("missing theta line"))?;
        let body = head.strip_prefix("theta:").ok_or_else(|| perr("expected `theta:`"))?;
        let (free, tor) = body.split_once('|').ok_or_else(|| perr("expected `|` in theta line"))?;
        let ints = |s: &str| -> Result<Vec<i64>, KStarError> {
            s.split_whitespace().map(|t| t.parse().map_err(|_| perr("bad integer"))).collect()
        };
        let theta = ThetaVector { free: ints(free)?, torsion: ints(tor)? };
        let mut exps = vec![[0i64; 5]; N];
        for line in lines {
            let (idx, rest) = line.split_once(':').ok_or_else(|| perr("expected `i: ...`"))?;
            let i: usize = idx.trim().parse().map_err(|_| perr("bad index"))?;
            if i == 0 || i > N {
                return Err(KStarError::IndexOutOfRange(i));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 5 {
                return Err(perr("expected five powers"));
            }
            for (g, t) in toks.iter().enumerate() {
                let want = format!("{}^", GEN_NAMES[g]);
                let k = t.strip_prefix(&want).ok_or_else(|| perr("powers must be in order c 7 1 10 4"))?;
                exps[i - 1][g] = k.parse().map_err(|_| perr("bad exponent"))?;
            }
        }
        Ok(Self { theta, exps })
    }
}

impl fmt::Display for KStarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Element of H, the single-index group modulo Θ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElement(pub [i64; 5]);

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..5).filter(|&g| self.0[g] != 0).map(|g| format!("{}^{}", GEN_NAMES[g], self.0[g])).collect();
        if parts.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for HElement {
    type Err = KStarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut e = [0; 5];
        for t in s.split_whitespace().filter(|t| *t != "e") {
            let (g, k) = t.split_once('^').ok_or_else(|| KStarError::Parse(t.into()))?;
            let g = GEN_NAMES.iter().position(|n| *n == g).ok_or_else(|| KStarError::UnknownGenerator(g.into()))?;
            e[g] = k.parse().map_err(|_| KStarError::Parse(t.into()))?;
        }
        Ok(HElement(e))
    }
}

/// Collector for K* with a fixed rule set and Θ lattice.
#[derive(Clone, Debug)]
pub struct Engine {
    pub rules: RuleSet,
    pub lattice: ThetaLattice,
}

impl Default for Engine {
    fn default() -> Self {
        Self::standard()
    }
}

impl Engine {
    pub fn standard() -> Self {
        Self { rules: RuleSet::standard(), lattice: ThetaLattice::standard() }
    }

    pub fn with_lattice(lattice: ThetaLattice) -> Self {
        Self { rules: RuleSet::standard(), lattice }
    }

    pub fn identity(&self) -> KStarElement {
        KStarElement { theta: self.lattice.zero(), exps: vec![[0; 5]; N] }
    }

    /// `g^k` at `index` for a basic generator position `g`.
    pub fn gen(&self, g: usize, index: usize, k: i64) -> Result<KStarElement, KStarError> {
        if index == 0 || index > N {
            return Err(KStarError::IndexOutOfRange(index));
        }
        let mut x = self.identity();
        x.exps[index - 1][g] = k;
        Ok(x)
    }

    pub fn theta(&self, j: usize, k: i64) -> KStarElement {
        KStarElement { theta: self.lattice.scale(&self.lattice.unit(j), k), ..self.identity() }
    }

    pub fn theta_vector(&self, t: ThetaVector) -> KStarElement {
        KStarElement { theta: t, ..self.identity() }
    }

    /// Combines per-index local results with already reduced θ parts.
    fn assemble(&self, theta: ThetaVector, raw: theta::RawTheta, exps: Vec<[i64; 5]>) -> KStarElement {
        let theta = self.lattice.add(&theta, &self.lattice.reduce(&raw));
        KStarElement { theta, exps }
    }

    pub fn multiply(&self, x: &KStarElement, y: &KStarElement) -> Result<KStarElement, KStarError> {
        let mut raw = [0i64; THETA_COUNT];
        let mut exps = x.exps.clone();
        for i in 0..N {
            if y.exps[i] == [0; 5] {
                continue;
            }
            if x.exps[i] == [0; 5] {
                exps[i] = y.exps[i];
                continue;
            }
            let r = self
                .rules
                .mul(&Local { e: x.exps[i], ..Local::default() }, &Local { e: y.exps[i], ..Local::default() })?;
            exps[i] = r.e;
            for j in 0..THETA_COUNT {
                raw[j] = raw[j].checked_add(r.t[j]).ok_or(KStarError::Overflow)?;
            }
        }
        Ok(self.assemble(self.lattice.add(&x.theta, &y.theta), raw, exps))
    }

    pub fn invert(&self, x: &KStarElement) -> Result<KStarElement, KStarError> {
        let mut raw = [0i64; THETA_COUNT];
        let mut exps = vec![[0; 5]; N];
        for i in 0..N {
            if x.exps[i] == [0; 5] {
                continue;
            }
            let r = self.rules.inverse(&Local { e: x.exps[i], ..Local::default() })?;
            exps[i] = r.e;
            for j in 0..THETA_COUNT {
                raw[j] = raw[j].checked_add(r.t[j]).ok_or(KStarError::Overflow)?;
            }
        }
        Ok(self.assemble(self.lattice.neg(&x.theta), raw, exps))
    }

    pub fn power(&self, x: &KStarElement, k: i64) -> Result<KStarElement, KStarError> {
        let (mut base, mut k) = if k < 0 { (self.invert(x)?, k.unsigned_abs()) } else { (x.clone(), k as u64) };
        let mut r = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                r = self.multiply(&r, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(r)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &KStarElement, b: &KStarElement) -> Result<KStarElement, KStarError> {
        if a.support().all(|i| b.exps[i - 1] == [0; 5]) {
            return Ok(self.identity());
        }
        let ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        self.multiply(&ab, &self.invert(&ba)?)
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, x: &KStarElement, g: &KStarElement) -> Result<KStarElement, KStarError> {
        self.multiply(&self.multiply(g, x)?, &self.invert(g)?)
    }

    /// Image of one letter, expanding derived generators.
    pub fn embed(&self, r: &GeneratorRef) -> Result<KStarElement, KStarError> {
        let i = r.index;
        let seq: (Option<usize>, &[(usize, i64)]) = match r.symbol {
            Omega::C => (None, &[(C, 1)]),
            Omega::Seven => (None, &[(SEVEN, 1)]),
            Omega::One => (None, &[(ONE, 1)]),
            Omega::Ten => (None, &[(TEN, 1)]),
            Omega::Four => (None, &[(FOUR, 1)]),
            Omega::Thirteen => (None, &[(C, 1), (FOUR, -1)]),
            Omega::Fifteen => (Some(T15), &[(SEVEN, -1), (FOUR, 1)]),
            Omega::Seventeen => (Some(T17), &[(TEN, 1), (SEVEN, 1)]),
            Omega::TwentyThree => (Some(T23), &[(C, 1), (SEVEN, -1)]),
            Omega::Two => (Some(T2), &[(C, 2), (SEVEN, -1), (TEN, -1), (ONE, 1)]),
            Omega::Three => (Some(T3), &[(C, 1), (SEVEN, -1), (TEN, -1), (ONE, 1)]),
        };
        let mut x = match seq.0 {
            Some(j) => self.theta(j, 1),
            None => self.identity(),
        };
        for &(g, k) in seq.1 {
            x = self.multiply(&x, &self.gen(g, i, k)?)?;
        }
        if r.sign < 0 {
            x = self.invert(&x)?;
        }
        Ok(x)
    }

    /// Collects a word of letters, left to right.
    pub fn collect(&self, word: &[GeneratorRef], theta: Option<&ThetaVector>) -> Result<KStarElement, KStarError> {
        let mut x = match theta {
            Some(t) => self.theta_vector(t.clone()),
            None => self.identity(),
        };
        for r in word {
            x = self.multiply(&x, &self.embed(r)?)?;
        }
        Ok(x)
    }

    /// Collection in H: one index, θ's dropped.
    pub fn h_collect(&self, word: &[(usize, i64)]) -> Result<HElement, KStarError> {
        let mut x = Local::default();
        for &(g, k) in word {
            x = self.rules.mul(&x, &Local::gen(g, k))?;
        }
        Ok(HElement(x.e))
    }

    pub fn h_multiply(&self, a: &HElement, b: &HElement) -> Result<HElement, KStarError> {
        Ok(HElement(self.rules.mul(&Local { e: a.0, ..Local::default() }, &Local { e: b.0, ..Local::default() })?.e))
    }

    pub fn h_invert(&self, a: &HElement) -> Result<HElement, KStarError> {
        Ok(HElement(self.rules.inverse(&Local { e: a.0, ..Local::default() })?.e))
    }

    pub fn h_commutator(&self, a: &HElement, b: &HElement) -> Result<HElement, KStarError> {
        let ab = self.h_multiply(a, b)?;
        let ba = self.h_multiply(b, a)?;
        self.h_multiply(&ab, &self.h_invert(&ba)?)
    }
}

/// Parses letters `ω_i[-]`, e.g. `1_3 c_3-`.
pub fn parse_letters(text: &str) -> Result<Vec<GeneratorRef>, KStarError> {
    text.split_whitespace()
        .map(|tok| {
            let (o, rest) = tok.split_once('_').ok_or_else(|| KStarError::Parse(tok.into()))?;
            let (idx, sign) = match rest.strip_suffix('-') {
                Some(r) => (r, -1),
                None => (rest, 1),
            };
            let symbol = Omega::parse(o).ok_or_else(|| KStarError::UnknownGenerator(o.into()))?;
            let index: usize = idx.parse().map_err(|_| KStarError::Parse(tok.into()))?;
            if index == 0 || index > N {
                return Err(KStarError::IndexOutOfRange(index));
            }
            Ok(GeneratorRef { symbol, index, sign })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::theta::{T1C, T1_7, T4_10};
    use super::*;

    fn e() -> Engine {
        Engine::standard()
    }

    #[test]
    fn spec_examples() {
        let en = e();
        let one = en.gen(ONE, 3, 1).unwrap();
        let seven = en.gen(SEVEN, 3, 1).unwrap();
        let c = en.commutator(&one, &seven).unwrap();
        let want = en.multiply(&en.theta(T1_7, 1), &en.gen(C, 3, -3).unwrap()).unwrap();
        assert_eq!(c, want);
        let prod = en.collect(&parse_letters("4_2 10_2").unwrap(), None).unwrap();
        assert_eq!(prod.exps[1], [3, 0, 0, 1, 1]);
        assert_eq!(prod.theta, en.lattice.unit(T4_10));
        assert!(en.collect(&[], None).unwrap().is_identity());
        let cc = en.commutator(&en.gen(ONE, 5, 1).unwrap(), &en.gen(C, 5, 1).unwrap()).unwrap();
        assert_eq!(cc, en.theta(T1C, 1));
    }

    #[test]
    fn inverse_and_text_format() {
        let en = e();
        let x = en.collect(&parse_letters("2_4 15_4- 4_9 17_1").unwrap(), None).unwrap();
        assert!(en.multiply(&x, &en.invert(&x).unwrap()).unwrap().is_identity());
        let s = x.serialize();
        assert!(s.starts_with("theta: "));
        assert_eq!(s.lines().count(), 19);
        assert_eq!(KStarElement::parse(&s).unwrap(), x);
        assert!(KStarElement::parse("theta: 0 | 0\n19: c^0 7^0 1^0 10^0 4^0\n").is_err());
        assert!(parse_letters("9_1").is_err());
        assert!(parse_letters("c_19").is_err());
    }

    #[test]
    fn h_examples() {
        let en = e();
        let c = en.h_commutator(&HElement([0, 0, 1, 0, 0]), &HElement([0, 1, 0, 0, 0])).unwrap();
        assert_eq!(c.to_string(), "c^-3");
        assert_eq!("c^-3".parse::<HElement>().unwrap(), c);
    }
}
