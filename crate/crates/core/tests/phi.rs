use galcov::graph::TorusGraphData;
use galcov::semi::{genericize, phi_eval, semi_multiply, FiberElement, Permutation, DEGREE};
use galcov::word::{Letter, Word};
use proptest::prelude::*;

fn edge_letters(data: &TorusGraphData) -> Vec<Letter> {
    data.t.edges().iter().flat_map(|e| [e.id.letter(1), e.id.letter(-1)]).collect()
}

fn t_word() -> impl Strategy<Value = Word> {
    let letters = edge_letters(&TorusGraphData::bundled());
    prop::collection::vec(prop::sample::select(letters), 0..12).prop_map(Word::from_letters)
}

fn permutation() -> impl Strategy<Value = Permutation> {
    Just((1..=DEGREE).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_a_homomorphism(u in t_word(), v in t_word()) {
        let d = TorusGraphData::bundled();
        let lhs = phi_eval(&u.multiply(&v), &d).unwrap();
        let rhs = semi_multiply(&phi_eval(&u, &d).unwrap(), &phi_eval(&v, &d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_respects_inverses(u in t_word()) {
        let d = TorusGraphData::bundled();
        prop_assert_eq!(phi_eval(&u.invert(), &d).unwrap(), phi_eval(&u, &d).unwrap().invert());
    }

    #[test]
    fn genericize_is_constant_on_orbits(u in t_word(), s in permutation()) {
        let f: FiberElement = phi_eval(&u, &TorusGraphData::bundled()).unwrap().fiber;
        prop_assert_eq!(genericize(&f.act(&s)), genericize(&f));
    }
}

#[test]
fn edge_generators_are_involutions() {
    let d = TorusGraphData::bundled();
    for e in d.t.edges() {
        let w = Word::from_letters([e.id.letter(1), e.id.letter(1)]);
        assert!(phi_eval(&w, &d).unwrap().is_identity(), "edge {}", e.id);
    }
}
