//! Shape classification of relators.

use std::fmt;

use super::Presentation;
use crate::word::{invert_collapsed, involutory_collapse, Letter, SymbolSet, Word};

/// Relator shapes found in the surface presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatorClass {
    OrderTwo,
    CommutingConjugates,
    OrderThreeProduct,
    PrimeConjugate,
    Other,
}

impl fmt::Display for RelatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelatorClass::OrderTwo => "order-two",
            RelatorClass::CommutingConjugates => "commuting-conjugates",
            RelatorClass::OrderThreeProduct => "order-three-product",
            RelatorClass::PrimeConjugate => "prime-conjugate",
            RelatorClass::Other => "other",
        })
    }
}

fn same_up_to_invol(a: &Letter, b: &Letter, invol: &SymbolSet) -> bool {
    a.symbol == b.symbol && (a.sign == b.sign || invol.contains(&a.symbol))
}

/// Returns the conjugated generator letter if `v = u s u⁻¹`.
pub fn is_generator_conjugate(v: &[Letter], invol: &SymbolSet) -> Option<Letter> {
    let n = v.len();
    if n % 2 == 0 {
        return None;
    }
    for k in 0..n / 2 {
        if !same_up_to_invol(&v[k], &v[n - 1 - k].inverse(), invol) {
            return None;
        }
    }
    Some(v[n / 2].clone())
}

fn conj(v: &[Letter], invol: &SymbolSet) -> bool {
    is_generator_conjugate(v, invol).is_some()
}

fn inverse_of(x: &[Letter], y: &[Letter], invol: &SymbolSet) -> bool {
    x.len() == y.len() && x.iter().zip(y.iter().rev()).all(|(a, b)| same_up_to_invol(a, &b.inverse(), invol))
}

fn rotations_of(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |k| w[k..].iter().chain(w[..k].iter()).cloned().collect())
}

fn is_commutator_of_conjugates(r: &[Letter], invol: &SymbolSet) -> bool {
    let n = r.len();
    if n < 4 || n % 2 != 0 {
        return false;
    }
    rotations_of(r).any(|rot| {
        (1..n / 2).any(|a| {
            let b = n / 2 - a;
            let (x, y) = (&rot[..a], &rot[a..a + b]);
            let (xi, yi) = (&rot[a + b..2 * a + b], &rot[2 * a + b..]);
            conj(x, invol) && conj(y, invol) && inverse_of(x, xi, invol) && inverse_of(y, yi, invol)
        })
    })
}

fn is_cubed_product_of_conjugates(r: &[Letter], invol: &SymbolSet) -> bool {
    let n = r.len();
    if n < 6 || n % 3 != 0 {
        return false;
    }
    let m = n / 3;
    rotations_of(r).any(|rot| {
        let z = &rot[..m];
        let periodic = (0..n).all(|i| rot[i] == z[i % m]);
        periodic && (1..m).any(|a| conj(&z[..a], invol) && conj(&z[a..], invol))
    })
}

fn is_prime_conjugate(r: &Word, invol: &SymbolSet) -> bool {
    let inv = invert_collapsed(r, invol);
    let found = [r, &inv].into_iter().any(|w| {
        rotations_of(w.letters()).any(|rot| {
            let (head, tail) = rot.split_first().expect("nonempty");
            head.symbol.primed()
                && is_generator_conjugate(tail, invol).is_some_and(|s| s.symbol == head.symbol.unprimed())
        })
    });
    found
}

/// Deterministic shape tag of a relator in the context of `p`.
pub fn classify_relator(r: &Word, p: &Presentation) -> RelatorClass {
    let invol = p.involutory();
    let l = r.letters();
    if l.len() == 2 && l[0].symbol == l[1].symbol && l[0].sign == l[1].sign {
        return RelatorClass::OrderTwo;
    }
    let r = involutory_collapse(r, invol);
    let l = r.letters();
    if l.is_empty() {
        return RelatorClass::Other;
    }
    if is_commutator_of_conjugates(l, invol) {
        RelatorClass::CommutingConjugates
    } else if is_cubed_product_of_conjugates(l, invol) {
        RelatorClass::OrderThreeProduct
    } else if is_prime_conjugate(&r, invol) {
        RelatorClass::PrimeConjugate
    } else {
        RelatorClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &str, invol: bool) -> Presentation {
        let text = format!("gens: {gens}\n{}", if invol { "invol: all\n" } else { "" });
        Presentation::parse(&text).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn commutator_of_generators() {
        let p = pres("3 4", false);
        assert_eq!(classify_relator(&w("3 4 3- 4-"), &p), RelatorClass::CommutingConjugates);
        let p = pres("3 4", true);
        assert_eq!(classify_relator(&w("3 4 3 4"), &p), RelatorClass::CommutingConjugates);
    }

    #[test]
    fn cubed_product() {
        let p = pres("15 16 21'", true);
        let r = w("15 16 21' 16 15 16 21' 16 15 16 21' 16");
        assert_eq!(classify_relator(&r, &p), RelatorClass::OrderThreeProduct);
    }

    #[test]
    fn order_two_and_prime_conjugate() {
        let p = pres("7 7' 3 3' 9 9'", false);
        assert_eq!(classify_relator(&w("7 7"), &p), RelatorClass::OrderTwo);
        let p = pres("7 7' 3 3' 9 9'", true);
        let r = w("9' 3 3' 7 7' 9 7' 7 3' 3");
        assert_eq!(classify_relator(&r, &p), RelatorClass::PrimeConjugate);
        assert_eq!(classify_relator(&w("3 7"), &p), RelatorClass::Other);
    }

    #[test]
    fn twisted_commutator_is_commuting_conjugates() {
        let p = pres("1 6 7", true);
        let r = w("1 6 7 6 1 6 7 6");
        assert_eq!(classify_relator(&r, &p), RelatorClass::CommutingConjugates);
    }
}
