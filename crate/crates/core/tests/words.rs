use galcov::word::{cyclic_canonical, cyclic_reduce, involutory_collapse, GeneratorSymbol, Letter, SymbolSet, Word};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    (0usize..3, any::<bool>()).prop_map(|(k, inv)| {
        let s = GeneratorSymbol::parse(["a", "b", "c"][k]).unwrap();
        s.letter(if inv { -1 } else { 1 })
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..24).prop_map(Word::from_letters)
}

fn invol() -> SymbolSet {
    [GeneratorSymbol::parse("a").unwrap()].into_iter().collect()
}

proptest! {
    #[test]
    fn multiplication_is_associative(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
    }

    #[test]
    fn inverse_cancels(u in word()) {
        prop_assert!(u.multiply(&u.invert()).is_identity());
        prop_assert!(u.invert().multiply(&u).is_identity());
        prop_assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn words_stay_reduced(u in word(), v in word()) {
        let w = u.multiply(&v);
        for p in w.letters().windows(2) {
            prop_assert!(!p[0].is_inverse_of(&p[1]));
        }
    }

    #[test]
    fn text_round_trips(u in word()) {
        prop_assert_eq!(Word::parse(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn powers_add(u in word(), a in -4i64..4, b in -4i64..4) {
        prop_assert_eq!(u.power(a).multiply(&u.power(b)), u.power(a + b));
    }

    #[test]
    fn commutator_of_powers_is_trivial(u in word(), a in -3i64..3, b in -3i64..3) {
        prop_assert!(Word::commutator(&u.power(a), &u.power(b)).is_identity());
    }

    #[test]
    fn involutory_collapse_is_idempotent(u in word()) {
        let s = invol();
        let once = involutory_collapse(&u, &s);
        prop_assert_eq!(involutory_collapse(&once, &s), once.clone());
        prop_assert!(once.letters().iter().all(|l| l.symbol.name() != "a" || l.sign == 1));
    }

    #[test]
    fn canonical_form_ignores_rotation_and_inversion(u in word(), k in 0usize..24) {
        let s = invol();
        let c = cyclic_canonical(&u, &s);
        let r = cyclic_reduce(&u, &s);
        let rot = if r.is_empty() { r.clone() } else { r.rotate(k % r.len()) };
        prop_assert_eq!(cyclic_canonical(&rot, &s), c.clone());
        prop_assert_eq!(cyclic_canonical(&u.invert(), &s), c);
    }

    #[test]
    fn conjugates_share_canonical_form(u in word(), g in word()) {
        let s = SymbolSet::new();
        prop_assert_eq!(cyclic_canonical(&u.conjugate(&g), &s), cyclic_canonical(&u, &s));
    }
}

#[test]
fn bad_tokens_are_rejected() {
    assert!(Word::parse("a b-- c").is_err());
    assert!(Word::parse("").unwrap().is_identity());
}
