//! Structure of K*, H, K and K/⟨p⟩: abelianization, central series, centers, consistency.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use super::collect::{Local, C, FOUR, GEN_NAMES, ONE, SEVEN, TEN};
use super::projective::{c_hat, projective_element};
use super::theta::{
    standard_relations, ThetaLattice, T10C, T10_7, T15, T17, T1C, T1_7, T2, T23, T3, T4C, T4_1, T4_10, T7C, THETA_COUNT,
};
use super::{Engine, GeneratorRef, HElement, KStarElement, KStarError, Omega, N};
use crate::report::Report;
use crate::zmodule::{
    big_row, invariants_of_quotient, lattice_basis, lattice_contains, subgroup_invariants_in, AbelianInvariants,
    IntMatrix,
};

/// Target coordinates of `ab`, one per Ω generator.
pub const AB_NAMES: [&str; 10] = ["1", "2", "3", "4", "7", "10", "13", "15", "17", "23"];

fn ab_pos(name: &str) -> usize {
    AB_NAMES.iter().position(|n| *n == name).expect("Ω name")
}

/// Element of `Z^10 = ⟨e_1, e_2, …, e_23⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbImage(pub [i64; 10]);

impl AbImage {
    fn e(terms: &[(&str, i64)]) -> Self {
        let mut v = [0; 10];
        for &(n, k) in terms {
            if n == "c" {
                v[ab_pos("13")] += k;
                v[ab_pos("4")] += k;
            } else {
                v[ab_pos(n)] += k;
            }
        }
        AbImage(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn axpy(&mut self, k: i64, other: &AbImage) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += k * b;
        }
    }
}

impl fmt::Display for AbImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..10)
            .filter(|&k| self.0[k] != 0)
            .map(|k| match self.0[k] {
                1 => format!("e{}", AB_NAMES[k]),
                x => format!("{x}e{}", AB_NAMES[k]),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// `ab` of a basic generator; `c = 13·4` gives `e_c = e_13 + e_4`.
pub fn ab_basic(g: usize) -> AbImage {
    AbImage::e(&[(["c", "7", "1", "10", "4"][g], 1)])
}

/// `ab` of a raw θ generator.
///
/// The image of θ(3) is forced by linearity on the definition of `3_i`, which
/// puts `e_3` where the printed table has `e_2`.
pub fn ab_theta(j: usize) -> AbImage {
    match j {
        T15 => AbImage::e(&[("15", 1), ("7", 1), ("4", -1)]),
        T17 => AbImage::e(&[("17", 1), ("7", -1), ("10", -1)]),
        T23 => AbImage::e(&[("23", 1), ("c", -1), ("7", 1)]),
        T2 => AbImage::e(&[("2", 1), ("c", -2), ("7", 1), ("10", 1), ("1", -1)]),
        T3 => AbImage::e(&[("3", 1), ("c", -1), ("7", 1), ("10", 1), ("1", -1)]),
        T1_7 => AbImage::e(&[("c", 3)]),
        T4_1 => AbImage::e(&[("c", 2), ("7", -2)]),
        T4_10 => AbImage::e(&[("c", -3)]),
        _ => AbImage::default(),
    }
}

/// The printed image of θ(3), kept for comparison.
pub fn ab_theta3_printed() -> AbImage {
    AbImage::e(&[("2", 1), ("c", -1), ("7", 1), ("10", 1), ("1", -1)])
}

pub fn ab_kstar(en: &Engine, x: &KStarElement) -> AbImage {
    let mut v = AbImage::default();
    let raw = en.lattice.lift(&x.theta);
    for (j, &k) in raw.iter().enumerate() {
        v.axpy(k, &ab_theta(j));
    }
    for row in &x.exps {
        for (g, &k) in row.iter().enumerate() {
            v.axpy(k, &ab_basic(g));
        }
    }
    v
}

pub fn in_k(en: &Engine, x: &KStarElement) -> bool {
    ab_kstar(en, x).is_zero()
}

/// Coordinates in `A = ⟨Θ, c_i, 7_i⟩`: free θ's, `c_1..c_18`, `7_1..7_18`, θ residues.
pub fn a_coords(en: &Engine, x: &KStarElement) -> Option<Vec<BigInt>> {
    if !x.in_abelian_part() {
        return None;
    }
    let mut v: Vec<i64> = x.theta.free.clone();
    v.extend(x.exps.iter().map(|r| r[C]));
    v.extend(x.exps.iter().map(|r| r[SEVEN]));
    v.extend(x.theta.torsion.iter().copied());
    debug_assert_eq!(v.len(), a_relations(en).0);
    Some(big_row(&v))
}

/// Dimension of the A coordinates and the rows that kill the torsion residues.
pub fn a_relations(en: &Engine) -> (usize, Vec<Vec<BigInt>>) {
    let free = en.lattice.free_rank() + 2 * N;
    let m = en.lattice.moduli();
    let n = free + m.len();
    let rows = m
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let mut r = vec![0i64; n];
            r[free + k] = d;
            big_row(&r)
        })
        .collect();
    (n, rows)
}

/// Invariants of a subgroup of A, optionally modulo extra relations.
fn a_subgroup(en: &Engine, gens: &[Vec<BigInt>], extra: &[Vec<BigInt>]) -> AbelianInvariants {
    let (n, mut rels) = a_relations(en);
    rels.extend(extra.iter().cloned());
    subgroup_invariants_in(n, &rels, gens).expect("coordinates have the A dimension")
}

fn a_contains(en: &Engine, gens: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let (n, mut rows) = a_relations(en);
    rows.extend(gens.iter().cloned());
    lattice_contains(n, &rows, v)
}

/// The abelianized defining relations on `ω_i` (ω ∈ Ω′) and the fifteen θ's.
pub fn abelianization_matrix(en: &Engine) -> IntMatrix {
    const PRIME: [&str; 10] = ["c", "7", "1", "10", "4", "15", "17", "23", "2", "3"];
    let cols = 10 * N + THETA_COUNT;
    let col = |i: usize, name: &str| i * 10 + PRIME.iter().position(|p| *p == name).expect("Ω′ name");
    let theta_col = |j: usize| 10 * N + j;
    let defs: [(&str, usize, &[(&str, i64)]); 5] = [
        ("15", T15, &[("7", -1), ("4", 1)]),
        ("17", T17, &[("10", 1), ("7", 1)]),
        ("23", T23, &[("c", 1), ("7", -1)]),
        ("2", T2, &[("c", 2), ("7", -1), ("10", -1), ("1", 1)]),
        ("3", T3, &[("c", 1), ("7", -1), ("10", -1), ("1", 1)]),
    ];
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..N {
        for (w, t, expansion) in defs {
            let mut r = vec![0; cols];
            r[col(i, w)] += 1;
            r[theta_col(t)] -= 1;
            for &(g, k) in expansion {
                r[col(i, g)] -= k;
            }
            rows.push(r);
        }
    }
    for i in 0..N {
        for h in 0..5 {
            for g in 0..h {
                let rule = en.rules.rule(h, g).expect("standard rules are complete");
                let mut r = vec![0; cols];
                r[theta_col(rule.theta)] += 1;
                for (k, &x) in rule.lower.iter().enumerate() {
                    r[col(i, GEN_NAMES[k])] += x;
                }
                rows.push(r);
            }
        }
    }
    for (_, rel) in standard_relations() {
        let mut r = vec![0; cols];
        for (j, &x) in rel.iter().enumerate() {
            r[theta_col(j)] = x;
        }
        rows.push(r);
    }
    IntMatrix::from_rows(cols, &rows).expect("rows have equal length")
}

pub fn abelianization(en: &Engine) -> AbelianInvariants {
    let m = abelianization_matrix(en);
    invariants_of_quotient(m.cols(), &m).expect("dimensions match")
}

/// Terms of a lower central series computed inside A.
#[derive(Clone, Debug)]
pub struct CentralSeries {
    /// `γ_2, γ_3, γ_4`.
    pub terms: Vec<AbelianInvariants>,
    /// Coordinates of generating sets for `γ_2, γ_3, γ_4`.
    pub gens: Vec<Vec<Vec<BigInt>>>,
    /// γ_k generators that left A.
    pub escaped: usize,
}

impl CentralSeries {
    /// Largest `k` with `γ_k ≠ 1`; `4` stands for "at least 4".
    pub fn class(&self) -> usize {
        match self.terms.iter().position(AbelianInvariants::is_trivial) {
            Some(k) => k + 1,
            None => self.terms.len() + 1,
        }
    }
}

fn overlaps(a: &KStarElement, b: &KStarElement) -> bool {
    a.support().any(|i| b.exps[i - 1] != [0; 5])
}

fn commutator_layer(
    en: &Engine,
    gens: &[KStarElement],
    prev: &BTreeSet<KStarElement>,
) -> Result<BTreeSet<KStarElement>, KStarError> {
    let mut out = BTreeSet::new();
    for g in gens {
        for s in prev {
            if overlaps(g, s) {
                let c = en.commutator(g, s)?;
                if !c.is_identity() {
                    out.insert(c);
                }
            }
        }
    }
    Ok(out)
}

/// γ_2, γ_3, γ_4 of the group generated by `gens`, modulo `extra` relations in A.
///
/// Generators are closed under inversion. Every commutator found must lie in A,
/// where coordinates are additive.
pub fn central_series(en: &Engine, gens: &[KStarElement], extra: &[Vec<BigInt>]) -> Result<CentralSeries, KStarError> {
    let mut all: Vec<KStarElement> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        all.push(g.clone());
        all.push(en.invert(g)?);
    }
    let gens = &all;
    let mut s2 = BTreeSet::new();
    for (k, a) in gens.iter().enumerate() {
        for b in &gens[k + 1..] {
            if overlaps(a, b) {
                let c = en.commutator(a, b)?;
                if !c.is_identity() {
                    s2.insert(c);
                }
            }
        }
    }
    let s3 = commutator_layer(en, gens, &s2)?;
    let s4 = commutator_layer(en, gens, &s3)?;
    let mut escaped = 0;
    let mut coords = |s: &BTreeSet<KStarElement>| -> Vec<Vec<BigInt>> {
        s.iter()
            .filter_map(|x| {
                let c = a_coords(en, x);
                if c.is_none() {
                    escaped += 1;
                }
                c
            })
            .collect()
    };
    let (c2, c3, c4) = (coords(&s2), coords(&s3), coords(&s4));
    let g2: Vec<Vec<BigInt>> = c2.iter().chain(&c3).cloned().collect();
    let terms = vec![a_subgroup(en, &g2, extra), a_subgroup(en, &c3, extra), a_subgroup(en, &c4, extra)];
    Ok(CentralSeries { terms, gens: vec![g2, c3, c4], escaped })
}

/// The 90 basic generators `ω_i`.
pub fn kstar_generators(en: &Engine) -> Vec<KStarElement> {
    (1..=N).flat_map(|i| (0..5).map(move |g| en.gen(g, i, 1).expect("index in range"))).collect()
}

/// Generators of K: `ω_1 ω_β⁻¹` and three index-1 corrections of the non-central θ images.
pub fn k_generators(en: &Engine) -> Result<Vec<KStarElement>, KStarError> {
    let mut out = Vec::new();
    for g in 0..5 {
        for b in 2..=N {
            out.push(en.multiply(&en.gen(g, 1, 1)?, &en.gen(g, b, -1)?)?);
        }
    }
    out.push(en.multiply(&en.gen(C, 1, -3)?, &en.theta(T1_7, 1))?);
    let x = en.multiply(&en.gen(C, 1, -2)?, &en.gen(SEVEN, 1, 2)?)?;
    out.push(en.multiply(&x, &en.theta(T4_1, 1))?);
    out.push(en.multiply(&en.gen(C, 1, 3)?, &en.theta(T4_10, 1))?);
    for j in 0..THETA_COUNT {
        if ab_theta(j).is_zero() {
            out.push(en.theta(j, 1));
        }
    }
    Ok(out)
}

fn letter_word(i: usize, j: usize, k: usize, w: usize, w2: usize) -> (Vec<GeneratorRef>, Vec<GeneratorRef>) {
    let o = |g: usize| Omega::BASIC[g];
    (
        vec![GeneratorRef::new(o(w), i, 1), GeneratorRef::new(o(w), j, -1)],
        vec![GeneratorRef::new(o(w2), i, 1), GeneratorRef::new(o(w2), k, -1)],
    )
}

/// Random element: a few basic letters on indices 1..=3 with a random θ part.
fn random_element(en: &Engine, rng: &mut Pcg32) -> Result<KStarElement, KStarError> {
    let mut x = en.identity();
    let len = 1 + (rng.next_u32() % 6) as usize;
    for _ in 0..len {
        let g = (rng.next_u32() % 5) as usize;
        let i = 1 + (rng.next_u32() % 3) as usize;
        let k = (rng.next_u32() % 7) as i64 - 3;
        x = en.multiply(&x, &en.gen(g, i, k)?)?;
    }
    let j = (rng.next_u32() as usize) % THETA_COUNT;
    en.multiply(&x, &en.theta(j, (rng.next_u32() % 5) as i64 - 2))
}

/// Failures of `(xy)z = x(yz)` on all triples of single-index generators and their inverses.
pub fn generator_triple_failures(en: &Engine) -> Result<(usize, usize), KStarError> {
    let mut letters = Vec::new();
    for g in 0..5 {
        for s in [1, -1] {
            letters.push(en.gen(g, 1, s)?);
        }
    }
    let (mut bad, mut total) = (0, 0);
    for x in &letters {
        for y in &letters {
            let xy = en.multiply(x, y)?;
            for z in &letters {
                total += 1;
                if en.multiply(&xy, z)? != en.multiply(x, &en.multiply(y, z)?)? {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad, total))
}

/// Engine consistency: defining relators, associativity, θ identities, and the K-commutator identity.
pub fn consistency_check(en: &Engine, seed: u64, random_triples: usize) -> Result<Report, KStarError> {
    let mut r = Report::new("K* engine consistency");
    let l = &en.lattice;

    let mut bad = 0;
    let mut total = 0;
    for i in 1..=N {
        for h in 0..5 {
            for g in 0..h {
                let rule = en.rules.rule(h, g).expect("standard rules are complete");
                let mut want = en.theta(rule.theta, 1);
                for (k, &x) in rule.lower.iter().enumerate() {
                    want = en.multiply(&want, &en.gen(k, i, x)?)?;
                }
                total += 1;
                if en.commutator(&en.gen(h, i, 1)?, &en.gen(g, i, 1)?)? != want {
                    bad += 1;
                }
            }
        }
        let defs: [(Omega, usize, &[(usize, i64)]); 6] = [
            (Omega::Thirteen, usize::MAX, &[(C, 1), (FOUR, -1)]),
            (Omega::Fifteen, T15, &[(SEVEN, -1), (FOUR, 1)]),
            (Omega::Seventeen, T17, &[(TEN, 1), (SEVEN, 1)]),
            (Omega::TwentyThree, T23, &[(C, 1), (SEVEN, -1)]),
            (Omega::Two, T2, &[(C, 2), (SEVEN, -1), (TEN, -1), (ONE, 1)]),
            (Omega::Three, T3, &[(C, 1), (SEVEN, -1), (TEN, -1), (ONE, 1)]),
        ];
        for (o, t, expansion) in defs {
            let mut want = if t == usize::MAX { en.identity() } else { en.theta(t, 1) };
            for &(g, k) in expansion {
                want = en.multiply(&want, &en.gen(g, i, k)?)?;
            }
            total += 1;
            if en.embed(&GeneratorRef::new(o, i, 1))? != want {
                bad += 1;
            }
        }
    }
    for (ia, ib) in [(1, 2), (3, 17), (18, 5)] {
        for g in 0..5 {
            for h in 0..5 {
                total += 1;
                if !en.commutator(&en.gen(g, ia, 1)?, &en.gen(h, ib, 1)?)?.is_identity() {
                    bad += 1;
                }
            }
        }
    }
    for (_, rel) in standard_relations() {
        total += 1;
        if !l.is_relation(&rel) {
            bad += 1;
        }
    }
    r.check(
        "defining relators evaluate to the identity",
        bad == 0,
        format!("0 of {total} nontrivial"),
        format!("{bad} of {total} nontrivial"),
    );

    let (bad, total) = generator_triple_failures(en)?;
    r.check(
        "associativity on single-index generator triples",
        bad == 0,
        format!("0 of {total} fail"),
        format!("{bad} of {total} fail"),
    );

    let mut rng = Pcg32::seed_from_u64(seed);
    let (mut bad, mut inv_bad) = (0, 0);
    for _ in 0..random_triples {
        let x = random_element(en, &mut rng)?;
        let y = random_element(en, &mut rng)?;
        let z = random_element(en, &mut rng)?;
        if en.multiply(&en.multiply(&x, &y)?, &z)? != en.multiply(&x, &en.multiply(&y, &z)?)? {
            bad += 1;
        }
        if !en.multiply(&x, &en.invert(&x)?)?.is_identity() {
            inv_bad += 1;
        }
    }
    r.check(
        "associativity on random triples",
        bad == 0,
        format!("0 of {random_triples} fail"),
        format!("{bad} of {random_triples} fail"),
    );
    r.check("x x⁻¹ = e on random elements", inv_bad == 0, "0 fail", format!("{inv_bad} fail"));

    let t = |j: usize, k: i64| l.scale(&l.unit(j), k);
    let ids = [
        ("θ(10,c) = θ(10,7)^-2 θ(1,c)^3", l.add(&t(T10C, 1), &l.neg(&l.add(&t(T10_7, -2), &t(T1C, 3))))),
        ("θ(10,c)^3 = e", t(T10C, 3)),
        ("θ(7,c) = e", t(T7C, 1)),
        ("θ(4,c)^3 = e", t(T4C, 3)),
    ];
    for (name, v) in ids {
        r.check(name, v.is_zero(), "e", if v.is_zero() { "e".to_string() } else { v.to_string() });
    }
    let o = l.order(&l.unit(T10_7));
    r.check("order of θ(10,7)", o == Some(12), 12, o.map_or("infinite".into(), |x| x.to_string()));

    let (bad, total) = difference_commutator_failures(en)?;
    r.check(
        "[ω_i ω_j⁻¹, ω'_i ω'_k⁻¹] = [ω_i, ω'_i]",
        bad == 0,
        format!("0 of {total} fail"),
        format!("{bad} of {total} fail"),
    );

    let mut rels: Vec<_> =
        standard_relations().into_iter().filter(|(n, _)| !n.starts_with("θ(7,c)")).map(|(_, x)| x).collect();
    rels.sort();
    let weak = Engine::with_lattice(ThetaLattice::from_relations(rels));
    let (bad, total) = generator_triple_failures(&weak)?;
    r.check(
        "negative control: θ(7,c) ≠ e breaks associativity",
        bad > 0,
        "failures detected",
        format!("{bad} of {total} fail"),
    );
    Ok(r)
}

/// Exhaustive check of `[ω_i ω_j⁻¹, ω'_i ω'_k⁻¹] = [ω_i, ω'_i]` over basic ω, ω′ and distinct i, j, k.
///
/// Rows outside `{i, j, k}` stay trivial, so the local products are computed per index.
pub fn difference_commutator_failures(en: &Engine) -> Result<(usize, usize), KStarError> {
    let (mut bad, mut total) = (0, 0);
    for w in 0..5 {
        for w2 in 0..5 {
            let want = en.commutator(&en.gen(w, 1, 1)?, &en.gen(w2, 1, 1)?)?;
            for i in 1..=N {
                let want_i = shift(&want, 1, i);
                for j in (1..=N).filter(|&j| j != i) {
                    for k in (1..=N).filter(|&k| k != i && k != j) {
                        let (a, b) = letter_word(i, j, k, w, w2);
                        let x = en.collect(&a, None)?;
                        let y = en.collect(&b, None)?;
                        total += 1;
                        if en.commutator(&x, &y)? != want_i {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((bad, total))
}

fn shift(x: &KStarElement, from: usize, to: usize) -> KStarElement {
    let mut y = x.clone();
    y.exps.swap(from - 1, to - 1);
    y
}

/// Lower central series of K*.
pub fn lcs_kstar(en: &Engine) -> Result<CentralSeries, KStarError> {
    central_series(en, &kstar_generators(en), &[])
}

/// Lower central series of K, optionally modulo ⟨p⟩.
pub fn lcs_k(en: &Engine, mod_p: bool) -> Result<CentralSeries, KStarError> {
    let extra = if mod_p { vec![a_coords(en, &projective_element(en)).expect("p lies in A")] } else { vec![] };
    central_series(en, &k_generators(en)?, &extra)
}

/// Criterion-level report on the central series of K*, K and K/⟨p⟩.
pub fn lcs_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("lower central series");
    let ks = lcs_kstar(en)?;
    r.check("K* commutators stay in ⟨Θ, c_i, 7_i⟩", ks.escaped == 0, 0, ks.escaped);
    r.check_eq("class of K*", 3, ks.class());
    r.check("γ_4(K*) = 1", ks.terms[2].is_trivial(), "1", pretty(&ks.terms[2]));
    r.check("γ_3(K*) ≠ 1", !ks.terms[1].is_trivial(), "nontrivial", pretty(&ks.terms[1]));
    let t = &en.lattice;
    let cube = en.theta(T1C, 3);
    let cube_c = a_coords(en, &cube).expect("θ lies in A");
    let in_g3 = a_contains(en, &ks.gens[1], &cube_c);
    let ord = t.order(&cube.theta);
    r.check(
        "θ(1,c)^3 ∈ γ_3(K*) has order 2",
        in_g3 && ord == Some(2),
        "member of order 2",
        format!("member {in_g3}, order {}", ord.map_or("infinite".into(), |x| x.to_string())),
    );
    r.check_eq("torsion of γ_2(K*)", "(Z/3)^2 x Z/12".to_string(), pretty(&ks.terms[0].torsion_part()));
    r.soft("free rank of γ_2(K*)", ks.terms[0].free_rank == 5, "Z^5 x (Z/3)^2 x Z/12", pretty(&ks.terms[0]));
    r.soft("free rank of γ_3(K*)", ks.terms[1].free_rank == 2, "Z^2 x Z/2", pretty(&ks.terms[1]));
    r.note("γ_2 and γ_3 contain index differences such as c_i^3 c_j^-3, so their free ranks grow with the 18 indices");

    let k = lcs_k(en, false)?;
    r.check("K commutators stay in ⟨Θ, c_i, 7_i⟩", k.escaped == 0, 0, k.escaped);
    r.check_eq("class of K", 3, k.class());
    r.check_eq("γ_2(K) = γ_2(K*)", pretty(&ks.terms[0]), pretty(&k.terms[0]));
    let kp = lcs_k(en, true)?;
    r.check_eq("class of K/⟨p⟩", 3, kp.class());
    r.check("γ_3(K/⟨p⟩) ≠ 1", !kp.terms[1].is_trivial(), "nontrivial", pretty(&kp.terms[1]));
    Ok(r)
}

/// Center of K*: Θ and the `c_i^6`.
pub fn center_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("center of K*");
    let gens = kstar_generators(en);
    let commutes_all = |x: &KStarElement| -> Result<bool, KStarError> {
        for g in &gens {
            if !en.commutator(x, g)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut bad = 0;
    for j in 0..THETA_COUNT {
        if !commutes_all(&en.theta(j, 1))? {
            bad += 1;
        }
    }
    r.check("θ's commute with all 90 generators", bad == 0, 0, bad);
    let mut bad = 0;
    for i in 1..=N {
        if !commutes_all(&en.gen(C, i, 6)?)? {
            bad += 1;
        }
    }
    r.check("c_i^6 commute with all 90 generators", bad == 0, 0, bad);
    let mut central_powers = Vec::new();
    for k in 1..=5 {
        let mut all_nontrivial = true;
        for i in 1..=N {
            let c = en.commutator(&en.gen(ONE, i, 1)?, &en.gen(C, i, k)?)?;
            if c != en.theta(T1C, k) || c.is_identity() {
                all_nontrivial = false;
            }
        }
        if !all_nontrivial {
            central_powers.push(k);
        }
    }
    r.check(
        "[1_i, c_i^k] = θ(1,c)^k ≠ e for k = 1..5",
        central_powers.is_empty(),
        "none central",
        if central_powers.is_empty() { "none central".into() } else { format!("{central_powers:?}") },
    );
    let mut cg: Vec<Vec<BigInt>> = (0..THETA_COUNT).map(|j| a_coords(en, &en.theta(j, 1)).expect("θ in A")).collect();
    for i in 1..=N {
        cg.push(a_coords(en, &en.gen(C, i, 6)?).expect("c in A"));
    }
    let inv = a_subgroup(en, &cg, &[]);
    r.check_eq("Cent(K*) ≅ Z^18 x ⟨Θ⟩", pretty(&en.lattice.ambient().with_extra_rank(N)), pretty(&inv));

    let found = local_center_box(en, 12, 2)?;
    let want: Vec<[i64; 5]> = (-2..=2).map(|k| [6 * k, 0, 0, 0, 0]).collect();
    r.check(
        "central single-index normal forms in the box |c| ≤ 12, |others| ≤ 2",
        found == want,
        "c^6k only",
        found.iter().map(|e| HElement(*e).to_string()).collect::<Vec<_>>().join(", "),
    );
    Ok(r)
}

/// Exponent vectors at index 1 commuting with all five generators there.
pub fn local_center_box(en: &Engine, c_bound: i64, bound: i64) -> Result<Vec<[i64; 5]>, KStarError> {
    let gens: Vec<Local> = (0..5).map(|g| Local::gen(g, 1)).collect();
    let mut out = Vec::new();
    let r = -bound..=bound;
    for a in -c_bound..=c_bound {
        for b in r.clone() {
            for d in r.clone() {
                for e in r.clone() {
                    for f in r.clone() {
                        let x = Local { e: [a, b, d, e, f], ..Local::default() };
                        let mut central = true;
                        for g in &gens {
                            let c = en.rules.commutator(&x, g)?;
                            if !c.is_trivial_exps() || !en.lattice.reduce(&c.t).is_zero() {
                                central = false;
                                break;
                            }
                        }
                        if central {
                            out.push(x.e);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// ĉ against K, and the correction putting ĉ into K.
pub fn centralizer_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("centralizer of K");
    let ch = c_hat(en);
    let (mut bad, mut total) = (0, 0);
    for o in ALL_OMEGA {
        for a in 1..=N {
            for b in (1..=N).filter(|&b| b != a) {
                let x = en.collect(&[GeneratorRef::new(o, a, 1), GeneratorRef::new(o, b, -1)], None)?;
                total += 1;
                if !en.commutator(&ch, &x)?.is_identity() {
                    bad += 1;
                }
            }
        }
    }
    r.check(
        "c_1⋯c_18 commutes with every ω_α ω_β⁻¹",
        bad == 0,
        format!("0 of {total} fail"),
        format!("{bad} of {total} fail"),
    );
    let y = en.multiply(&ch, &en.theta(T4_10, 6))?;
    r.check_eq("ab(ĉ θ(4,10)^6)", AbImage::default().to_string(), ab_kstar(en, &y).to_string());
    let c1 = en.gen(C, 1, 1)?;
    let seven = en.collect(&[GeneratorRef::new(Omega::Seven, 2, 1), GeneratorRef::new(Omega::Seven, 5, -1)], None)?;
    let one = en.collect(&[GeneratorRef::new(Omega::One, 1, 1), GeneratorRef::new(Omega::One, 2, -1)], None)?;
    let a = en.commutator(&c1, &seven)?.is_identity();
    let b = en.commutator(&c1, &one)?.is_identity();
    r.check("[c_1, 7_2 7_5⁻¹] = e", a, true, a);
    r.check("c_1 alone does not centralize K: [c_1, 1_1 1_2⁻¹] ≠ e", !b, true, !b);
    Ok(r)
}

const ALL_OMEGA: [Omega; 11] = [
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

/// The abelianization map and its typo check.
pub fn ab_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("abelianization");
    r.check_eq("K* abelianization", "Z^61 x (Z/6)^17".to_string(), pretty(&abelianization(en)));
    let mut bad = Vec::new();
    for o in ALL_OMEGA {
        let v = ab_kstar(en, &en.embed(&GeneratorRef::new(o, 4, 1))?);
        let want = if o == Omega::C { AbImage::e(&[("c", 1)]) } else { AbImage::e(&[(o.name(), 1)]) };
        if v != want {
            bad.push(o.name());
        }
    }
    r.check(
        "ab(ω_i) = e_ω for every ω",
        bad.is_empty(),
        "all",
        if bad.is_empty() { "all".into() } else { bad.join(",") },
    );
    let printed = {
        let mut v = ab_theta3_printed();
        v.axpy(1, &AbImage::e(&[("c", 1), ("7", -1), ("10", -1), ("1", 1)]));
        v
    };
    r.soft("printed ab(θ(3)) is consistent with 3_i", printed == AbImage::e(&[("3", 1)]), "e3", printed);
    r.note("ab(θ(3)) uses e3 - e_c + e7 + e10 - e1; the printed e2 would give ab(3_i) = e2");
    r.check_eq("ab(θ(1,7))", "3e4 + 3e13".to_string(), ab_theta(T1_7).to_string());
    let p = projective_element(en);
    r.check_eq("ab(p)", "0".to_string(), ab_kstar(en, &p).to_string());
    Ok(r)
}

/// `Z^61 x (Z/6)^17` style with repeated factors grouped.
pub fn pretty(a: &AbelianInvariants) -> String {
    if a.is_trivial() {
        return "1".into();
    }
    let mut s = if a.free_rank > 0 { format!("Z^{}", a.free_rank) } else { String::new() };
    let mut k = 0;
    while k < a.torsion.len() {
        let d = &a.torsion[k];
        let n = a.torsion[k..].iter().take_while(|x| *x == d).count();
        if !s.is_empty() {
            s.push_str(" x ");
        }
        if n == 1 {
            s.push_str(&format!("Z/{d}"));
        } else {
            s.push_str(&format!("(Z/{d})^{n}"));
        }
        k += n;
    }
    s
}

/// H: class, derived length, and the subgroups ⟨c, 7, 10⟩ and H'.
pub fn h_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("H");
    let gens: Vec<HElement> = (0..5)
        .flat_map(|g| {
            [1, -1].map(|s| {
                let mut e = [0; 5];
                e[g] = s;
                HElement(e)
            })
        })
        .collect();
    let layer = |prev: &BTreeSet<HElement>| -> Result<BTreeSet<HElement>, KStarError> {
        let mut out = BTreeSet::new();
        for g in &gens {
            for s in prev {
                let c = en.h_commutator(g, s)?;
                if c != HElement::default() {
                    out.insert(c);
                }
            }
        }
        Ok(out)
    };
    let s1: BTreeSet<HElement> = gens.iter().copied().collect();
    let s2 = layer(&s1)?;
    let s3 = layer(&s2)?;
    let s4 = layer(&s3)?;
    let in_a = |s: &BTreeSet<HElement>| s.iter().all(|x| x.0[ONE] == 0 && x.0[TEN] == 0 && x.0[FOUR] == 0);
    r.check(
        "H commutators stay in ⟨c, 7⟩",
        in_a(&s2) && in_a(&s3) && in_a(&s4),
        true,
        in_a(&s2) && in_a(&s3) && in_a(&s4),
    );
    let inv = |s: &BTreeSet<HElement>| {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|x| big_row(&[x.0[C], x.0[SEVEN]])).collect();
        subgroup_invariants_in(2, &[], &rows).expect("two coordinates")
    };
    let g2rows: BTreeSet<HElement> = s2.union(&s3).copied().collect();
    let (g2, g3, g4) = (inv(&g2rows), inv(&s3), inv(&s4));
    let class = [&g2, &g3, &g4].iter().position(|a| a.is_trivial()).map_or(4, |k| k + 1);
    r.check_eq("class of H", 3, class);
    r.check_eq("γ_2(H)", "Z^2".to_string(), pretty(&g2));
    r.check_eq("γ_3(H)", "Z^1".to_string(), pretty(&g3));
    let c6 = s3.iter().all(|x| x.0[SEVEN] == 0 && x.0[C] % 6 == 0) && s3.iter().any(|x| x.0[C].abs() == 6);
    r.check("γ_3(H) = ⟨c^6⟩", c6, "⟨c^6⟩", s3.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    let mut abelian = true;
    for x in &g2rows {
        for y in &g2rows {
            if en.h_commutator(x, y)? != HElement::default() {
                abelian = false;
            }
        }
    }
    let derived = if s2.is_empty() {
        1
    } else if abelian {
        2
    } else {
        3
    };
    r.check_eq("derived length of H", 2, derived);

    let n = [HElement([1, 0, 0, 0, 0]), HElement([0, 1, 0, 0, 0]), HElement([0, 0, 0, 1, 0])];
    let mut commute = true;
    for x in &n {
        for y in &n {
            if en.h_commutator(x, y)? != HElement::default() {
                commute = false;
            }
        }
    }
    r.check("⟨c, 7, 10⟩ ≅ Z^3", commute, "Z^3", if commute { "Z^3" } else { "nonabelian" });
    let mut normal = true;
    for g in &gens {
        for x in &n {
            let y = en.h_multiply(&en.h_multiply(g, x)?, &en.h_invert(g)?)?;
            if y.0[ONE] != 0 || y.0[FOUR] != 0 {
                normal = false;
            }
        }
    }
    let quotient = if normal {
        invariants_of_quotient(2, &IntMatrix::zeros(0, 2)).expect("two coordinates")
    } else {
        AbelianInvariants::trivial()
    };
    r.check("H/⟨c, 7, 10⟩ ≅ Z^2", normal && quotient == AbelianInvariants::new(2, &[]), "Z^2", pretty(&quotient));
    let h1 = en.h_commutator(&HElement([0, 0, 1, 0, 0]), &HElement([0, 1, 0, 0, 0]))?;
    r.check_eq("[1, 7] in H", "c^-3".to_string(), h1.to_string());
    let basis = lattice_basis(2, &g2rows.iter().map(|x| big_row(&[x.0[C], x.0[SEVEN]])).collect::<Vec<_>>());
    let det: BigInt = basis.iter().enumerate().map(|(k, row)| row[k].clone()).product();
    let index = det / BigInt::from(2);
    r.soft("index of γ_2(H) in ⟨c, 7^2⟩", index == BigInt::from(1), 1, &index);
    r.note(format!("γ_2(H) = ⟨c^3, c^-2 7^2⟩ ≅ {g2}; ⟨c, 7^2⟩ is also free of rank 2"));
    Ok(r)
}

/// Checks on the closed form of p.
pub fn p_report(en: &Engine) -> Result<Report, KStarError> {
    let mut r = Report::new("projective element");
    let p = projective_element(en);
    r.check_eq("ab(p)", "0".to_string(), ab_kstar(en, &p).to_string());
    let mut perm = p.clone();
    perm.exps.rotate_left(5);
    perm.exps.swap(0, 17);
    r.check(
        "p is fixed by index permutations",
        perm == p && super::projective::is_index_symmetric(&p),
        true,
        perm == p,
    );
    let gens = k_generators(en)?;
    let mut bad = 0;
    for g in &gens {
        if !en.commutator(&p, g)?.is_identity() {
            bad += 1;
        }
    }
    for o in ALL_OMEGA {
        for (a, b) in [(1, 2), (4, 9), (18, 3), (11, 12)] {
            let x = en.collect(&[GeneratorRef::new(o, a, 1), GeneratorRef::new(o, b, -1)], None)?;
            if !en.commutator(&p, &x)?.is_identity() {
                bad += 1;
            }
        }
    }
    r.check("p commutes with the K generators", bad == 0, 0, bad);
    let pc = a_coords(en, &p).expect("p lies in A");
    let free = en.lattice.free_rank() + 2 * N;
    let infinite = pc[..free].iter().any(|x| *x != BigInt::from(0));
    r.check("p has infinite order", infinite, "infinite", if infinite { "infinite" } else { "finite" });
    let cube = a_coords(en, &en.theta(T1C, 3)).expect("θ in A");
    let member = a_contains(en, &[pc], &cube);
    r.check("θ(1,c)^3 ∉ ⟨p⟩", !member, "not a member", if member { "member" } else { "not a member" });
    let kp = lcs_k(en, true)?;
    r.check_eq("class of K/⟨p⟩", 3, kp.class());
    Ok(r)
}

impl fmt::Display for CentralSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            writeln!(f, "gamma_{}: {}", k + 2, t)?;
        }
        write!(f, "class: {}", self.class())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ab_examples() {
        let en = Engine::standard();
        assert_eq!(ab_kstar(&en, &en.theta(T1_7, 1)), AbImage::e(&[("c", 3)]));
        let x = en.embed(&GeneratorRef::new(Omega::Thirteen, 2, 1)).unwrap();
        assert_eq!(ab_kstar(&en, &x).to_string(), "e13");
        assert!(in_k(&en, &projective_element(&en)));
    }

    #[test]
    fn abelianization_invariants() {
        let en = Engine::standard();
        let m = abelianization_matrix(&en);
        assert_eq!((m.rows(), m.cols()), (275, 195));
        assert_eq!(pretty(&abelianization(&en)), "Z^61 x (Z/6)^17");
    }

    #[test]
    fn k_generators_lie_in_k() {
        let en = Engine::standard();
        for g in k_generators(&en).unwrap() {
            assert!(in_k(&en, &g));
        }
    }

    #[test]
    fn h_structure_passes() {
        let r = h_report(&Engine::standard()).unwrap();
        assert!(r.passed(), "{r}");
    }
}
