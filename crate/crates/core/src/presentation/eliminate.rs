//! Tietze elimination of a generator and ordered substitution tables.

use std::collections::BTreeMap;

use super::simplify::{Rewrite, RewriteLog, Rule};
use super::{Presentation, PresentationError};
use crate::word::{involutory_collapse, GeneratorSymbol, Letter, SymbolSet, Word};

/// Ordered list of `symbol = word` definitions.
pub type SubstitutionTable = Vec<(GeneratorSymbol, Word)>;

/// Parses lines `lhs = rhs tokens`; `#` starts a comment.
pub fn parse_substitution_table(text: &str) -> Result<SubstitutionTable, PresentationError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| PresentationError::Parse { line: i + 1, msg };
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| perr("expected `symbol = word`".into()))?;
        let sym = GeneratorSymbol::parse(lhs.trim()).map_err(|e| perr(e.to_string()))?;
        let word = Word::parse(rhs).map_err(|e| perr(e.to_string()))?;
        out.push((sym, word));
    }
    Ok(out)
}

fn substitute(w: &Word, g: &GeneratorSymbol, expr: &Word, expr_inv: &Word) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    for l in w.letters() {
        if &l.symbol == g {
            let e = if l.sign > 0 { expr } else { expr_inv };
            out.extend(e.letters().iter().cloned());
        } else {
            out.push(l.clone());
        }
    }
    out
}

/// Replaces `g` by `expr` in every relator and removes `g` from the alphabet.
///
/// An involution `g` leaves `expr expr` behind, and a commuting pair `(a, g)`
/// leaves `[a, expr]`, so the defined group is unchanged.
pub fn eliminate_generator(
    p: &Presentation,
    g: &GeneratorSymbol,
    expr: &Word,
) -> Result<(Presentation, RewriteLog), PresentationError> {
    if !p.alphabet().contains(g) {
        return Err(PresentationError::UnknownGenerator(g.to_string()));
    }
    if expr.contains_symbol(g) {
        return Err(PresentationError::SelfReference(g.to_string()));
    }
    expr.check_alphabet(&p.alphabet_set())?;
    let invol = p.involutory();
    let expr_inv = expr.invert();
    let mut out = p.clone();
    let mut log = RewriteLog { round_lengths: vec![p.total_length()], ..Default::default() };
    for (i, r) in p.relators().iter().enumerate() {
        if !r.contains_symbol(g) {
            continue;
        }
        let after = involutory_collapse(&Word::from_letters(substitute(r, g, expr, &expr_inv)), invol);
        out.relators_mut()[i] = after.clone();
        log.steps.push(Rewrite {
            rule: Rule::Substitute(g.clone()),
            index: i,
            before: r.clone(),
            after: Some(after),
            round: 0,
        });
    }
    let mut added = Vec::new();
    if invol.contains(g) {
        added.push(involutory_collapse(&expr.multiply(expr), invol));
    }
    for (a, b) in p.commuting() {
        let other = if a == g {
            b
        } else if b == g {
            a
        } else {
            continue;
        };
        added.push(involutory_collapse(&Word::commutator(&Word::generator(other), expr), invol));
    }
    for w in added.into_iter().filter(|w| !w.is_empty()) {
        log.steps.push(Rewrite {
            rule: Rule::AddRelator(g.clone()),
            index: out.relators().len(),
            before: Word::identity(),
            after: Some(w.clone()),
            round: 0,
        });
        out.relators_mut().push(w);
    }
    out.remove_generator(g);
    log.steps.push(Rewrite {
        rule: Rule::RemoveGenerator(g.clone()),
        index: 0,
        before: Word::identity(),
        after: None,
        round: 0,
    });
    log.round_lengths.push(out.total_length());
    Ok((out, log))
}

/// Expands `w` with the table until no table symbol remains.
///
/// Each pass replaces every occurrence of every table symbol at once, then
/// reduces modulo free cancellation and the given involutions.
pub fn apply_substitution_table(
    w: &Word,
    table: &SubstitutionTable,
    involutory: &SymbolSet,
) -> Result<Word, PresentationError> {
    let map: BTreeMap<&GeneratorSymbol, (&Word, Word)> = table.iter().map(|(s, e)| (s, (e, e.invert()))).collect();
    let cap = table.len() + 1;
    let mut cur = involutory_collapse(w, involutory);
    for _ in 0..=cap {
        if !cur.letters().iter().any(|l| map.contains_key(&l.symbol)) {
            return Ok(cur);
        }
        let mut next = Vec::with_capacity(cur.len() * 4);
        for l in cur.letters() {
            match map.get(&l.symbol) {
                Some((e, ei)) => next.extend((if l.sign > 0 { *e } else { ei }).letters().iter().cloned()),
                None => next.push(l.clone()),
            }
        }
        cur = involutory_collapse(&Word::from_letters(next), involutory);
    }
    Err(PresentationError::CyclicTable(cycle_chain(table)))
}

/// A chain of table symbols that leads back to itself.
fn cycle_chain(table: &SubstitutionTable) -> String {
    let deps: BTreeMap<&GeneratorSymbol, Vec<&GeneratorSymbol>> = table
        .iter()
        .map(|(s, e)| {
            let d = e.letters().iter().map(|l| &l.symbol).filter(|x| table.iter().any(|(t, _)| t == *x));
            (s, d.collect())
        })
        .collect();
    for start in deps.keys() {
        let mut path = vec![*start];
        let mut cur = *start;
        while let Some(next) = deps.get(cur).and_then(|d| d.first()) {
            if let Some(k) = path.iter().position(|x| x == next) {
                let chain: Vec<String> = path[k..].iter().chain(std::iter::once(next)).map(|s| s.to_string()).collect();
                return chain.join(" -> ");
            }
            path.push(next);
            cur = next;
        }
    }
    "unknown".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::replay;

    fn sym(s: &str) -> GeneratorSymbol {
        GeneratorSymbol::parse(s).unwrap()
    }

    #[test]
    fn eliminate_examples() {
        let p = Presentation::parse("gens: a b t\nrel: t a\nrel: t- b t\nrel: a b\n").unwrap();
        let (q, log) = eliminate_generator(&p, &sym("t"), &Word::parse("a b").unwrap()).unwrap();
        assert_eq!(q.alphabet().len(), 2);
        assert_eq!(q.relators()[0].to_string(), "a b a");
        assert_eq!(q.relators()[1].to_string(), "b- a- b a b");
        assert_eq!(replay(&p, &log).unwrap(), q);

        let (q, _) = eliminate_generator(&p, &sym("t"), &Word::identity()).unwrap();
        assert_eq!(q.relators()[0].to_string(), "a");

        let p2 = Presentation::parse("gens: a b z\nrel: a b\n").unwrap();
        let (q, _) = eliminate_generator(&p2, &sym("z"), &Word::parse("a").unwrap()).unwrap();
        assert_eq!(q.relators(), p2.relators());
        assert_eq!(q.alphabet().len(), 2);

        assert!(eliminate_generator(&p, &sym("t"), &Word::parse("t a").unwrap()).is_err());

        let s3 = Presentation::parse("gens: u v t\ninvol: all\ncomm: t u\nrel: u v u v u v\nrel: t u v\n").unwrap();
        let (q, log) = eliminate_generator(&s3, &sym("t"), &Word::parse("v u").unwrap()).unwrap();
        assert_eq!(q.relators().len(), 4);
        assert_eq!(replay(&s3, &log).unwrap(), q);
        assert!(eliminate_generator(&p, &sym("q"), &Word::identity()).is_err());
    }

    #[test]
    fn table_expansion_and_cycles() {
        let table = parse_substitution_table("x = a y\ny = b b\n").unwrap();
        let none = SymbolSet::new();
        let w = apply_substitution_table(&Word::parse("x y-").unwrap(), &table, &none).unwrap();
        assert_eq!(w.to_string(), "a");
        let w0 = Word::parse("a b").unwrap();
        assert_eq!(apply_substitution_table(&w0, &table, &none).unwrap(), w0);
        let cyclic = parse_substitution_table("x = y\ny = x a\n").unwrap();
        let e = apply_substitution_table(&Word::parse("x").unwrap(), &cyclic, &none).unwrap_err();
        assert!(matches!(e, PresentationError::CyclicTable(ref c) if c.contains("x")));
    }
}
