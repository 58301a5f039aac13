use galcov::kstar::analysis::{ab_kstar, in_k};
use galcov::kstar::{Engine, GeneratorRef, KStarElement, Omega, N};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = GeneratorRef> {
    let syms = vec![
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
    ];
    (prop::sample::select(syms), 1..=N, any::<bool>())
        .prop_map(|(s, i, inv)| GeneratorRef::new(s, i, if inv { -1 } else { 1 }))
}

fn word() -> impl Strategy<Value = Vec<GeneratorRef>> {
    prop::collection::vec(letter(), 0..10)
}

fn element(en: &Engine, w: &[GeneratorRef]) -> KStarElement {
    en.collect(w, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_is_associative(a in word(), b in word(), c in word()) {
        let en = Engine::standard();
        let (x, y, z) = (element(&en, &a), element(&en, &b), element(&en, &c));
        let l = en.multiply(&en.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = en.multiply(&x, &en.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn collecting_a_concatenation_multiplies(a in word(), b in word()) {
        let en = Engine::standard();
        let ab: Vec<GeneratorRef> = a.iter().chain(b.iter()).copied().collect();
        prop_assert_eq!(element(&en, &ab), en.multiply(&element(&en, &a), &element(&en, &b)).unwrap());
    }

    #[test]
    fn inverse_law(a in word()) {
        let en = Engine::standard();
        let x = element(&en, &a);
        prop_assert!(en.multiply(&x, &en.invert(&x).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn abelianization_kills_commutators(a in word(), b in word()) {
        let en = Engine::standard();
        let k = en.commutator(&element(&en, &a), &element(&en, &b)).unwrap();
        prop_assert!(ab_kstar(&en, &k).is_zero());
        prop_assert!(in_k(&en, &k));
    }

    #[test]
    fn abelianization_is_additive(a in word(), b in word()) {
        let en = Engine::standard();
        let (x, y) = (element(&en, &a), element(&en, &b));
        let mut sum = ab_kstar(&en, &x);
        for (s, t) in sum.0.iter_mut().zip(ab_kstar(&en, &y).0) {
            *s += t;
        }
        prop_assert_eq!(ab_kstar(&en, &en.multiply(&x, &y).unwrap()), sum);
    }

    #[test]
    fn text_round_trips(a in word()) {
        let en = Engine::standard();
        let x = element(&en, &a);
        prop_assert_eq!(KStarElement::parse(&x.serialize()).unwrap(), x);
    }
}
