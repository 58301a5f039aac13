use galcov::assets::CORPUS;
use galcov::presentation::{coset_enumerate, overlap_shorten, replay, trivial_simplify, Presentation, DEFAULT_SEED};
use rayon::ThreadPoolBuilder;

fn order(p: &Presentation) -> Option<usize> {
    coset_enumerate(p, &[], 5000).index()
}

fn corpus() -> Vec<(&'static str, Presentation, usize)> {
    CORPUS.iter().map(|(n, t, o)| (*n, Presentation::parse(t).unwrap(), *o)).collect()
}

#[test]
fn corpus_is_large_enough() {
    assert!(CORPUS.len() >= 10);
    assert!(CORPUS.iter().all(|c| c.2 <= 120));
}

#[test]
fn trivial_simplify_keeps_the_group() {
    for (name, p, o) in corpus() {
        assert_eq!(order(&p), Some(o), "{name} input");
        let (q, log) = trivial_simplify(&p);
        assert_eq!(order(&q), Some(o), "{name}");
        assert!(q.total_length() <= p.total_length(), "{name}");
        assert_eq!(replay(&p, &log).unwrap(), q, "{name} replay");
    }
}

#[test]
fn overlap_shorten_keeps_the_group_for_several_seeds() {
    for (name, p, o) in corpus() {
        let (t, _) = trivial_simplify(&p);
        for k in 0..5 {
            let (q, log) = overlap_shorten(&t, DEFAULT_SEED + k, 50);
            assert_eq!(order(&q), Some(o), "{name} seed {k}");
            assert!(log.round_lengths.windows(2).all(|w| w[1] <= w[0]), "{name} seed {k}");
            assert_eq!(replay(&t, &log).unwrap(), q, "{name} seed {k} replay");
        }
    }
}

#[test]
fn overlap_shorten_is_the_same_across_thread_counts() {
    for (name, p, _) in corpus() {
        let run = |threads| {
            let pool = ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| overlap_shorten(&p, DEFAULT_SEED, 50))
        };
        let (a, la) = run(1);
        let (b, lb) = run(4);
        assert_eq!(a, b, "{name}");
        assert_eq!(la, lb, "{name}");
    }
}
