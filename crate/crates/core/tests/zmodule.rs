use galcov::zmodule::{invariants_of_quotient, smith_normal_form, AbelianInvariants, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(cols, rows).unwrap()
}

fn minors(rows: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (rows.len(), rows[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Cofactor expansion.
fn det(a: &[Vec<i64>]) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        n => (0..n)
            .map(|j| {
                let sub: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                BigInt::from(s * a[0][j]) * det(&sub)
            })
            .sum(),
    }
}

proptest! {
    #[test]
    fn transforms_diagonalize(rows in matrix(4, 3)) {
        let a = m(3, &rows);
        let s = smith_normal_form(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < s.diagonal.len() { s.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d[(i, j)], &want);
            }
        }
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        for w in s.diagonal.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (w[1].clone() % &w[0]).is_zero());
        }
    }

    /// Determinantal divisors: `d₁⋯d_k = gcd of the k×k minors`.
    #[test]
    fn diagonal_matches_minor_gcds(rows in matrix(3, 3)) {
        let s = smith_normal_form(&m(3, &rows));
        let mut prod = BigInt::one();
        for k in 1..=3 {
            prod *= s.diagonal.get(k - 1).cloned().unwrap_or_default();
            prop_assert_eq!(prod.abs(), minors(&rows, k));
        }
    }

    #[test]
    fn invariants_ignore_row_and_column_order(rows in matrix(4, 4), rp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let base = invariants_of_quotient(4, &m(4, &rows)).unwrap();
        let permuted: Vec<Vec<i64>> = rp.iter().map(|&i| rp.iter().map(|&j| rows[i][j]).collect()).collect();
        prop_assert_eq!(invariants_of_quotient(4, &m(4, &permuted)).unwrap(), base);
    }

    /// Brute force: orbit count of Z³ mod L inside a box that contains one full period.
    #[test]
    fn finite_quotient_order_matches_determinant(rows in matrix(3, 3)) {
        let d = det(&rows);
        prop_assume!(!d.is_zero() && d.abs() <= BigInt::from(60));
        let inv = invariants_of_quotient(3, &m(3, &rows)).unwrap();
        prop_assert_eq!(inv.order(), Some(d.abs()));
        prop_assert_eq!(inv.order().unwrap(), brute_order(&rows, inv.torsion.last().cloned().unwrap_or_else(BigInt::one)));
    }
}

/// Counts classes of `Z³/L` using that `e·Z³ ⊆ L` for the exponent `e`.
fn brute_order(rows: &[Vec<i64>], e: BigInt) -> BigInt {
    let e: i64 = e.try_into().unwrap();
    let span = |v: [i64; 3]| -> [i64; 3] { [v[0].rem_euclid(e), v[1].rem_euclid(e), v[2].rem_euclid(e)] };
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![[0i64; 3]];
    seen.insert([0i64; 3]);
    while let Some(v) = frontier.pop() {
        for r in rows {
            for s in [1, -1] {
                let w = span([v[0] + s * r[0], v[1] + s * r[1], v[2] + s * r[2]]);
                if seen.insert(w) {
                    frontier.push(w);
                }
            }
        }
    }
    BigInt::from(e.pow(3) / seen.len() as i64)
}

#[test]
fn known_quotients() {
    let a = m(2, &[vec![2, 4], vec![6, 8]]);
    assert_eq!(invariants_of_quotient(2, &a).unwrap(), AbelianInvariants::new(0, &[2, 4]));
    let z = IntMatrix::zeros(0, 3);
    assert_eq!(invariants_of_quotient(3, &z).unwrap(), AbelianInvariants::new(3, &[]));
    assert!(invariants_of_quotient(2, &m(3, &[vec![1, 2, 3]])).is_err());
}
