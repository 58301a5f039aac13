//! Trivial simplification and randomized overlap shortening with a replayable log.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use rayon::prelude::*;

use super::{Presentation, PresentationError};
use crate::word::{
    cyclic_canonical, cyclic_reduce, involutory_collapse, sandwich_collapse, GeneratorSymbol, Letter, Word,
};

/// Default seed of the coin-toss generator.
pub const DEFAULT_SEED: u64 = 0x5EED;
/// Default number of rounds between commuting-subword passes.
pub const DEFAULT_SANDWICH_PERIOD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Sandwich,
    DeleteEmpty,
    DeleteDuplicate,
    Overlap,
    Substitute(GeneratorSymbol),
    /// Appends `after` as a new relator.
    AddRelator(GeneratorSymbol),
    RemoveGenerator(GeneratorSymbol),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Sandwich => f.write_str("sandwich"),
            Rule::DeleteEmpty => f.write_str("delete-empty"),
            Rule::DeleteDuplicate => f.write_str("delete-duplicate"),
            Rule::Overlap => f.write_str("overlap"),
            Rule::Substitute(g) => write!(f, "substitute {g}"),
            Rule::AddRelator(g) => write!(f, "add-relator {g}"),
            Rule::RemoveGenerator(g) => write!(f, "remove-generator {g}"),
        }
    }
}

/// One step: relator `index` goes from `before` to `after` (`None` deletes it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: Rule,
    pub index: usize,
    pub before: Word,
    pub after: Option<Word>,
    pub round: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteLog {
    pub steps: Vec<Rewrite>,
    /// Total relator length after each completed round (entry 0 is the input).
    pub round_lengths: Vec<usize>,
}

impl RewriteLog {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    fn set(&mut self, rels: &mut [Word], rule: Rule, index: usize, after: Word, round: usize) {
        let before = std::mem::replace(&mut rels[index], after.clone());
        self.steps.push(Rewrite { rule, index, before, after: Some(after), round });
    }

    fn delete(&mut self, rels: &mut Vec<Word>, rule: Rule, index: usize, round: usize) {
        let before = rels.remove(index);
        self.steps.push(Rewrite { rule, index, before, after: None, round });
    }
}

impl fmt::Display for RewriteLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let after = s.after.as_ref().map_or("<deleted>".to_string(), |w| w.to_string());
            writeln!(f, "round {} {} #{}: {} => {}", s.round, s.rule, s.index, s.before, after)?;
        }
        Ok(())
    }
}

/// Replays `log` on `p`, checking every `before` word.
pub fn replay(p: &Presentation, log: &RewriteLog) -> Result<Presentation, PresentationError> {
    let mut out = p.clone();
    for (k, s) in log.steps.iter().enumerate() {
        if let Rule::RemoveGenerator(g) = &s.rule {
            out.remove_generator(g);
            continue;
        }
        let rels = out.relators_mut();
        if let (Rule::AddRelator(_), Some(w)) = (&s.rule, &s.after) {
            if s.index != rels.len() {
                return Err(PresentationError::ReplayMismatch(k));
            }
            rels.push(w.clone());
            continue;
        }
        if rels.get(s.index) != Some(&s.before) {
            return Err(PresentationError::ReplayMismatch(k));
        }
        match &s.after {
            Some(w) => rels[s.index] = w.clone(),
            None => {
                rels.remove(s.index);
            }
        }
    }
    Ok(out)
}

pub fn total_length(p: &Presentation) -> usize {
    p.total_length()
}

fn sandwich_pass(p: &Presentation, rels: &mut [Word], log: &mut RewriteLog, round: usize) {
    for i in 0..rels.len() {
        let w = sandwich_collapse(&rels[i], |a, b| p.commutes(a, b), p.involutory());
        if w != rels[i] {
            log.set(rels, Rule::Sandwich, i, w, round);
        }
    }
}

fn prune(p: &Presentation, rels: &mut Vec<Word>, log: &mut RewriteLog, round: usize) {
    let mut seen = HashSet::new();
    let mut i = 0;
    while i < rels.len() {
        if rels[i].is_empty() {
            log.delete(rels, Rule::DeleteEmpty, i, round);
        } else if !seen.insert(cyclic_canonical(&rels[i], p.involutory())) {
            log.delete(rels, Rule::DeleteDuplicate, i, round);
        } else {
            i += 1;
        }
    }
}

/// Collapses involutions and commuting sandwiches, then drops empty and
/// duplicate relators (duplicates up to rotation and inversion).
pub fn trivial_simplify(p: &Presentation) -> (Presentation, RewriteLog) {
    let mut rels = p.relators().to_vec();
    let mut log = RewriteLog { round_lengths: vec![p.total_length()], ..Default::default() };
    sandwich_pass(p, &mut rels, &mut log, 0);
    prune(p, &mut rels, &mut log, 0);
    let out = p.with_relators(rels);
    log.round_lengths.push(out.total_length());
    (out, log)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortenConfig {
    pub seed: u64,
    pub max_rounds: usize,
    pub sandwich_period: usize,
}

impl Default for ShortenConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, max_rounds: 50, sandwich_period: DEFAULT_SANDWICH_PERIOD }
    }
}

/// Overlap of relators `a` and `b`: `a ~ w w1`, `b ~ w w2` (b possibly inverted).
struct Overlap {
    len: usize,
    w1: Vec<i32>,
    w2: Vec<i32>,
}

fn encode(w: &Word, code: &BTreeMap<GeneratorSymbol, i32>) -> Vec<i32> {
    w.letters().iter().map(|l| code[&l.symbol] * l.sign as i32).collect()
}

fn decode(c: &[i32], syms: &[GeneratorSymbol]) -> Vec<Letter> {
    c.iter().map(|&x| syms[(x.unsigned_abs() - 1) as usize].letter(x.signum() as i8)).collect()
}

/// Longest common cyclic subword of `a` and `b`, with its rotations.
fn common_cyclic(a: &[i32], b: &[i32]) -> Option<(usize, usize, usize)> {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return None;
    }
    let cap = n.min(m);
    let aa: Vec<i32> = a.iter().chain(a[..n - 1].iter()).copied().collect();
    let bb: Vec<i32> = b.iter().chain(b[..m - 1].iter()).copied().collect();
    let mut prev = vec![0usize; bb.len() + 1];
    let mut cur = vec![0usize; bb.len() + 1];
    let mut best = (0usize, 0usize, 0usize);
    for (i, x) in aa.iter().enumerate() {
        for (j, y) in bb.iter().enumerate() {
            cur[j + 1] = if x == y { (prev[j] + 1).min(cap) } else { 0 };
            if cur[j + 1] > best.0 {
                best = (cur[j + 1], (i + 1 - cur[j + 1]) % n, (j + 1 - cur[j + 1]) % m);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    (best.0 > 0).then_some(best)
}

fn rotated(w: &[i32], k: usize) -> Vec<i32> {
    w[k..].iter().chain(w[..k].iter()).copied().collect()
}

fn best_overlap(a: &[i32], b: &[i32], b_inv: &[i32]) -> Option<Overlap> {
    let mut best: Option<Overlap> = None;
    for bv in [b, b_inv] {
        if let Some((len, ka, kb)) = common_cyclic(a, bv) {
            if best.as_ref().is_none_or(|o| len > o.len) {
                let ra = rotated(a, ka);
                let rb = rotated(bv, kb);
                best = Some(Overlap { len, w1: ra[len..].to_vec(), w2: rb[len..].to_vec() });
            }
        }
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    /// Replace the second relator (strict gain).
    Second,
    /// Replace the first relator (strict gain).
    First,
    /// Equal length; replace the second relator on a coin toss.
    TieSecond,
    /// Equal length; replace the first relator on a coin toss.
    TieFirst,
}

struct Candidate {
    first: usize,
    second: usize,
    decision: Decision,
    replacement_second: Vec<i32>,
    replacement_first: Vec<i32>,
}

fn invert_code(c: &[i32], invol: &[bool]) -> Vec<i32> {
    c.iter().rev().map(|&x| if invol[(x.unsigned_abs() - 1) as usize] { x.abs() } else { -x }).collect()
}

/// Repeatedly replaces `w w₂` by `w₁⁻¹ w₂` for relator pairs `w w₁`, `w w₂`.
///
/// Strict gains are always applied; ties use the seeded coin. Rewrites of a
/// round are chosen in scan order and applied as one batch, so the result does
/// not depend on the thread count.
pub fn overlap_shorten(p: &Presentation, seed: u64, max_rounds: usize) -> (Presentation, RewriteLog) {
    overlap_shorten_with(p, ShortenConfig { seed, max_rounds, ..Default::default() })
}

pub fn overlap_shorten_with(p: &Presentation, cfg: ShortenConfig) -> (Presentation, RewriteLog) {
    assert!(cfg.max_rounds >= 1, "max_rounds must be at least 1");
    let syms: Vec<GeneratorSymbol> = p.alphabet().to_vec();
    let code: BTreeMap<GeneratorSymbol, i32> =
        syms.iter().enumerate().map(|(i, s)| (s.clone(), i as i32 + 1)).collect();
    let invol: Vec<bool> = syms.iter().map(|s| p.involutory().contains(s)).collect();
    let mut rng = Pcg32::seed_from_u64(cfg.seed);
    let mut rels = p.relators().to_vec();
    let mut log = RewriteLog { round_lengths: vec![p.total_length()], ..Default::default() };
    prune(p, &mut rels, &mut log, 0);

    for round in 1..=cfg.max_rounds {
        let steps_before = log.steps.len();
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by(|&i, &j| (rels[i].len(), &rels[i]).cmp(&(rels[j].len(), &rels[j])));
        let coded: Vec<Vec<i32>> = rels.iter().map(|w| encode(w, &code)).collect();
        let inverses: Vec<Vec<i32>> = coded.iter().map(|c| invert_code(c, &invol)).collect();
        let pairs: Vec<(usize, usize)> = (0..order.len())
            .flat_map(|x| (x + 1..order.len()).map(move |y| (x, y)))
            .map(|(x, y)| (order[x], order[y]))
            .collect();
        let candidates: Vec<Option<Candidate>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let o = best_overlap(&coded[i], &coded[j], &inverses[j])?;
                let (l2, n, m) = (2 * o.len, coded[i].len(), coded[j].len());
                let gain_second = (l2 > n).then(|| l2 - n);
                let gain_first = (l2 > m).then(|| l2 - m);
                let decision = match (gain_second, gain_first) {
                    (Some(gs), Some(gf)) if gf > gs => Decision::First,
                    (Some(_), _) => Decision::Second,
                    (None, Some(_)) => Decision::First,
                    (None, None) if l2 == n => Decision::TieSecond,
                    (None, None) if l2 == m => Decision::TieFirst,
                    _ => return None,
                };
                let w1_inv = invert_code(&o.w1, &invol);
                let w2_inv = invert_code(&o.w2, &invol);
                Some(Candidate {
                    first: i,
                    second: j,
                    decision,
                    replacement_second: w1_inv.iter().chain(o.w2.iter()).copied().collect(),
                    replacement_first: w2_inv.iter().chain(o.w1.iter()).copied().collect(),
                })
            })
            .collect();

        let mut target = vec![false; rels.len()];
        let mut source = vec![false; rels.len()];
        let mut batch: Vec<(usize, Vec<i32>)> = Vec::new();
        for c in candidates.into_iter().flatten() {
            let (t, s, repl) = match c.decision {
                Decision::Second | Decision::TieSecond => (c.second, c.first, c.replacement_second),
                Decision::First | Decision::TieFirst => (c.first, c.second, c.replacement_first),
            };
            if target[t] || target[s] || source[t] {
                continue;
            }
            let tie = matches!(c.decision, Decision::TieSecond | Decision::TieFirst);
            if tie && rng.next_u32() & 1 == 0 {
                continue;
            }
            target[t] = true;
            source[s] = true;
            batch.push((t, repl));
        }
        batch.sort_by_key(|(t, _)| *t);
        for (t, repl) in batch {
            let w = Word::from_letters(decode(&repl, &syms));
            let w = cyclic_reduce(&involutory_collapse(&w, p.involutory()), p.involutory());
            if w != rels[t] {
                log.set(&mut rels, Rule::Overlap, t, w, round);
            }
        }
        if cfg.sandwich_period > 0 && round % cfg.sandwich_period == 0 {
            sandwich_pass(p, &mut rels, &mut log, round);
        }
        prune(p, &mut rels, &mut log, round);
        log.round_lengths.push(rels.iter().map(Word::len).sum());
        if log.steps.len() == steps_before {
            break;
        }
    }
    (p.with_relators(rels), log)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn trivial_examples() {
        let p = pres("gens: g d\ninvol: g\nrel: g g d\n");
        let (q, log) = trivial_simplify(&p);
        assert_eq!(q.relators(), &[Word::parse("d").unwrap()]);
        assert_eq!(replay(&p, &log).unwrap(), q);

        let p = pres("gens: a b c\nrel: a b c\nrel: b c a\n");
        let (q, log) = trivial_simplify(&p);
        assert_eq!(q.relators().len(), 1);
        assert_eq!(replay(&p, &log).unwrap(), q);

        let p = pres("gens: a b\nrel: a b a b\n");
        let (q, log) = trivial_simplify(&p);
        assert_eq!(q, p);
        assert!(log.is_empty());
    }

    #[test]
    fn overlap_example() {
        let p = pres("gens: a b c d\nrel: a b c\nrel: a b d-\n");
        let (q, log) = overlap_shorten(&p, DEFAULT_SEED, 1);
        let rels: Vec<String> = q.relators().iter().map(|w| w.to_string()).collect();
        assert!(rels.contains(&"a b c".to_string()));
        assert!(rels.contains(&"c- d-".to_string()), "{rels:?}");
        assert_eq!(replay(&p, &log).unwrap(), q);
    }

    #[test]
    fn overlap_trivial_cases() {
        let p = pres("gens: a b\nrel: a b\nrel: a b\n");
        let (q, _) = overlap_shorten(&p, 1, 3);
        assert_eq!(q.relators().len(), 1);
        let p = pres("gens: a b\nrel: a b a b-\n");
        let (q, log) = overlap_shorten(&p, 1, 3);
        assert_eq!(q, p);
        assert!(log.is_empty());
        let p = pres("gens:\n");
        assert_eq!(overlap_shorten(&p, 1, 3).0, p);
    }
}
