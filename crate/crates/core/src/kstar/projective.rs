//! The projective element: its closed form and its evaluation from the projective word.

use thiserror::Error;

use super::theta::{T1C, T1_7, T4C, T4_10};
use super::{Engine, GeneratorRef, KStarElement, KStarError, Omega, C, N};
use crate::graph::TorusGraphData;
use crate::presentation::PresentationError;
use crate::presentation::{apply_substitution_table, SubstitutionTable};
use crate::semi::{phi_eval, FiberElement, Permutation, SemiError};
use crate::word::{SymbolSet, Word};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Semi(#[from] SemiError),
    #[error(transparent)]
    KStar(#[from] KStarError),
    #[error("fiber letter `{0}` is not an Ω generator")]
    NotOmega(String),
}

/// `θ(4,10)^3 θ(4,c)^2 θ(1,7)^-3 θ(1,c) c_1 c_2 … c_18`.
pub fn projective_element(en: &Engine) -> KStarElement {
    let l = &en.lattice;
    let t = [(T4_10, 3), (T4C, 2), (T1_7, -3), (T1C, 1)]
        .iter()
        .fold(l.zero(), |acc, &(j, k)| l.add(&acc, &l.scale(&l.unit(j), k)));
    let mut x = en.theta_vector(t);
    for row in x.exps.iter_mut() {
        row[C] = 1;
    }
    x
}

/// `c_1 c_2 … c_18`.
pub fn c_hat(en: &Engine) -> KStarElement {
    let mut x = en.identity();
    for row in x.exps.iter_mut() {
        row[C] = 1;
    }
    x
}

/// Converts fiber letters into K* generator references.
pub fn fiber_letters(f: &FiberElement) -> Result<Vec<GeneratorRef>, PipelineError> {
    let mut out = Vec::new();
    for (&i, w) in f.entries() {
        for l in w.letters() {
            let o = Omega::parse(l.symbol.name()).filter(|_| !l.symbol.primed());
            let o = o.ok_or_else(|| PipelineError::NotOmega(l.symbol.to_string()))?;
            out.push(GeneratorRef::new(o, i, l.sign));
        }
    }
    Ok(out)
}

/// Collects a fiber element in K*; sections commute, so order across indices is irrelevant.
pub fn embed_fiber(en: &Engine, f: &FiberElement) -> Result<KStarElement, PipelineError> {
    Ok(en.collect(&fiber_letters(f)?, None)?)
}

/// Every stage of the projective-word evaluation.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub input_len: usize,
    pub substituted: Word,
    pub permutation: Permutation,
    pub fiber: FiberElement,
    pub value: KStarElement,
}

/// Substitution, Φ, and collection of the projective word.
pub fn evaluate_projective_word(
    en: &Engine,
    data: &TorusGraphData,
    table: &SubstitutionTable,
    word: &Word,
) -> Result<PipelineResult, PipelineError> {
    let invol: SymbolSet = word.symbols().into_iter().chain(table.iter().map(|(s, _)| s.clone())).collect();
    let substituted = apply_substitution_table(word, table, &invol)?;
    let x = phi_eval(&substituted, data)?;
    let value = embed_fiber(en, &x.fiber)?;
    Ok(PipelineResult { input_len: word.len(), substituted, permutation: x.perm, fiber: x.fiber, value })
}

/// Data with the orientation of each masked cycle edge reversed.
pub fn flip_orientations(data: &TorusGraphData, edges: &[usize], mask: u32) -> TorusGraphData {
    let mut d = data.clone();
    for (bit, &k) in edges.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            let e = &mut d.spanning.cycle_edges[k];
            std::mem::swap(&mut e.1, &mut e.2);
        }
    }
    d
}

/// `g x g⁻¹` for `g = 1_1^a 10_1^b 4_1^d`, the conjugations that move only torsion θ's of ĉ.
pub fn conjugation_witness(
    en: &Engine,
    from: &KStarElement,
    to: &KStarElement,
    bound: i64,
) -> Result<Option<(i64, i64, i64)>, KStarError> {
    use super::{FOUR, ONE, TEN};
    for a in 0..bound {
        for b in 0..bound {
            for d in 0..bound {
                let g = en.multiply(&en.multiply(&en.gen(ONE, 1, a)?, &en.gen(TEN, 1, b)?)?, &en.gen(FOUR, 1, d)?)?;
                if &en.conjugate(from, &g)? == to {
                    return Ok(Some((a, b, d)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether all exponent rows of `x` are equal, so that permuting indices fixes it.
pub fn is_index_symmetric(x: &KStarElement) -> bool {
    x.exps.windows(2).all(|w| w[0] == w[1]) && x.exps.len() == N
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assets;
    use crate::presentation::parse_substitution_table;

    fn word() -> Word {
        let text: String = assets::PROJECTIVE_WORD.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
        Word::parse(&text).unwrap()
    }

    #[test]
    fn closed_form_is_symmetric() {
        let en = Engine::standard();
        let p = projective_element(&en);
        assert!(is_index_symmetric(&p));
        assert!(p.exps.iter().all(|r| *r == [1, 0, 0, 0, 0]));
    }

    #[test]
    fn pipeline_checkpoints() {
        let en = Engine::standard();
        let table = parse_substitution_table(assets::TABLE).unwrap();
        let r = evaluate_projective_word(&en, &TorusGraphData::bundled(), &table, &word()).unwrap();
        assert_eq!(r.input_len, 54);
        assert_eq!(r.substituted.len(), 3822);
        assert!(r.permutation.is_identity());
        assert!(r.value.exps.iter().all(|row| row[C] == 1));
    }
}
