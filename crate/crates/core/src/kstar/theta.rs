//! The central subgroup generated by the fifteen θ elements.

use std::fmt;

use num_bigint::BigInt;

use crate::zmodule::{invariants_of_quotient, small, smith_normal_form, AbelianInvariants, IntMatrix};

pub const THETA_COUNT: usize = 15;

/// Raw θ names in coordinate order.
pub const THETA_NAMES: [&str; THETA_COUNT] =
    ["15", "17", "23", "2", "3", "7,c", "1,c", "1,7", "10,c", "10,7", "10,1", "4,c", "4,1", "4,7", "4,10"];

pub const T15: usize = 0;
pub const T17: usize = 1;
pub const T23: usize = 2;
pub const T2: usize = 3;
pub const T3: usize = 4;
pub const T7C: usize = 5;
pub const T1C: usize = 6;
pub const T1_7: usize = 7;
pub const T10C: usize = 8;
pub const T10_7: usize = 9;
pub const T10_1: usize = 10;
pub const T4C: usize = 11;
pub const T4_1: usize = 12;
pub const T4_7: usize = 13;
pub const T4_10: usize = 14;

/// Exponent vector over the fifteen θ's, before reduction.
pub type RawTheta = [i64; THETA_COUNT];

pub fn theta_index(name: &str) -> Option<usize> {
    THETA_NAMES.iter().position(|n| *n == name)
}

fn raw(terms: &[(usize, i64)]) -> RawTheta {
    let mut r = [0; THETA_COUNT];
    for &(j, k) in terms {
        r[j] += k;
    }
    r
}

/// The five shipped relations, each named.
pub fn standard_relations() -> Vec<(&'static str, RawTheta)> {
    vec![
        ("θ(10,c) = θ(10,7)^4", raw(&[(T10C, 1), (T10_7, -4)])),
        ("θ(10,7)^6 = θ(1,c)^3", raw(&[(T10_7, 6), (T1C, -3)])),
        ("θ(7,c) = e", raw(&[(T7C, 1)])),
        ("θ(4,c)^3 = e", raw(&[(T4C, 3)])),
        ("θ(1,c)^6 = e", raw(&[(T1C, 6)])),
    ]
}

/// Reduced coordinates in `Z^r x Z/d₁ x …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaVector {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl ThetaVector {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        let tor: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
        write!(f, "{} | {}", free.join(" "), tor.join(" "))
    }
}

/// Quotient of `Z^15` by a relation lattice, with a fixed coordinate change.
///
/// Columns untouched by every relation stay as free coordinates in their raw
/// order. The remaining block is diagonalized once by Smith normal form; a raw
/// block vector `x` maps to `x V`, reduced mod each nonunit diagonal entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaLattice {
    relations: Vec<RawTheta>,
    free_cols: Vec<usize>,
    block_cols: Vec<usize>,
    v: Vec<Vec<i64>>,
    v_inv: Vec<Vec<i64>>,
    /// Per block position: `0` free, `1` dropped, otherwise the modulus.
    diag: Vec<i64>,
    moduli: Vec<i64>,
}

impl ThetaLattice {
    pub fn standard() -> Self {
        Self::from_relations(standard_relations().into_iter().map(|(_, r)| r).collect())
    }

    pub fn from_relations(relations: Vec<RawTheta>) -> Self {
        let touched: Vec<bool> = (0..THETA_COUNT).map(|j| relations.iter().any(|r| r[j] != 0)).collect();
        let free_cols: Vec<usize> = (0..THETA_COUNT).filter(|&j| !touched[j]).collect();
        let block_cols: Vec<usize> = (0..THETA_COUNT).filter(|&j| touched[j]).collect();
        let b = block_cols.len();
        let mut m = IntMatrix::zeros(relations.len(), b);
        for (i, r) in relations.iter().enumerate() {
            for (k, &j) in block_cols.iter().enumerate() {
                m[(i, k)] = BigInt::from(r[j]);
            }
        }
        let snf = smith_normal_form(&m);
        let to_i64 = |mat: &IntMatrix| -> Vec<Vec<i64>> {
            (0..b).map(|i| (0..b).map(|j| small(&mat[(i, j)])).collect()).collect()
        };
        let diag: Vec<i64> = (0..b).map(|k| snf.diagonal.get(k).map(small).unwrap_or(0)).collect();
        let moduli = diag.iter().copied().filter(|&d| d > 1).collect();
        Self { relations, free_cols, block_cols, v: to_i64(&snf.v), v_inv: to_i64(&snf.v_inv), diag, moduli }
    }

    pub fn relations(&self) -> &[RawTheta] {
        &self.relations
    }

    pub fn free_rank(&self) -> usize {
        self.free_cols.len() + self.diag.iter().filter(|&&d| d == 0).count()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    /// Raw columns that are free coordinates, in order.
    pub fn free_columns(&self) -> &[usize] {
        &self.free_cols
    }

    pub fn ambient(&self) -> AbelianInvariants {
        AbelianInvariants::new(self.free_rank(), &self.moduli)
    }

    /// Invariants of `Z^15 / relations`, computed independently from the stored transform.
    pub fn invariants(&self) -> AbelianInvariants {
        let rows: Vec<Vec<i64>> = self.relations.iter().map(|r| r.to_vec()).collect();
        let m = IntMatrix::from_rows(THETA_COUNT, &rows).expect("rows have 15 columns");
        invariants_of_quotient(THETA_COUNT, &m).expect("dimensions match")
    }

    pub fn zero(&self) -> ThetaVector {
        ThetaVector { free: vec![0; self.free_rank()], torsion: vec![0; self.moduli.len()] }
    }

    pub fn reduce(&self, x: &RawTheta) -> ThetaVector {
        let mut free: Vec<i64> = self.free_cols.iter().map(|&j| x[j]).collect();
        let mut torsion = Vec::with_capacity(self.moduli.len());
        for (k, &d) in self.diag.iter().enumerate() {
            let y: i64 = self.block_cols.iter().enumerate().map(|(i, &j)| x[j] * self.v[i][k]).sum();
            match d {
                0 => free.push(y),
                1 => {}
                _ => torsion.push(y.rem_euclid(d)),
            }
        }
        ThetaVector { free, torsion }
    }

    pub fn unit(&self, j: usize) -> ThetaVector {
        let mut r = [0; THETA_COUNT];
        r[j] = 1;
        self.reduce(&r)
    }

    /// A raw representative of `t`.
    pub fn lift(&self, t: &ThetaVector) -> RawTheta {
        let mut out = [0; THETA_COUNT];
        let mut fi = self.free_cols.len();
        let mut ti = 0;
        let mut y = vec![0i64; self.block_cols.len()];
        for (k, &d) in self.diag.iter().enumerate() {
            match d {
                0 => {
                    y[k] = t.free[fi];
                    fi += 1;
                }
                1 => {}
                _ => {
                    y[k] = t.torsion[ti];
                    ti += 1;
                }
            }
        }
        for (c, &j) in self.free_cols.iter().enumerate() {
            out[j] = t.free[c];
        }
        for (i, &j) in self.block_cols.iter().enumerate() {
            out[j] = (0..y.len()).map(|k| y[k] * self.v_inv[k][i]).sum();
        }
        out
    }

    pub fn add(&self, a: &ThetaVector, b: &ThetaVector) -> ThetaVector {
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion =
            a.torsion.iter().zip(&b.torsion).zip(&self.moduli).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect();
        ThetaVector { free, torsion }
    }

    pub fn scale(&self, a: &ThetaVector, k: i64) -> ThetaVector {
        let free = a.free.iter().map(|x| x * k).collect();
        let torsion = a.torsion.iter().zip(&self.moduli).map(|(x, d)| (x * k).rem_euclid(*d)).collect();
        ThetaVector { free, torsion }
    }

    pub fn neg(&self, a: &ThetaVector) -> ThetaVector {
        self.scale(a, -1)
    }

    /// Order of `t` in the lattice, `None` if infinite.
    pub fn order(&self, t: &ThetaVector) -> Option<i64> {
        if t.free.iter().any(|&x| x != 0) {
            return None;
        }
        let mut n = 1i64;
        for (x, d) in t.torsion.iter().zip(&self.moduli) {
            let g = num_integer::gcd(*x, *d);
            let o = d / g;
            n = num_integer::lcm(n, o);
        }
        Some(n)
    }

    /// Free coordinates followed by residues, as integers.
    pub fn coords(&self, t: &ThetaVector) -> Vec<BigInt> {
        t.free.iter().chain(&t.torsion).map(|&x| BigInt::from(x)).collect()
    }

    /// Whether the raw vector lies in the relation lattice.
    pub fn is_relation(&self, x: &RawTheta) -> bool {
        self.reduce(x).is_zero()
    }

    /// Human-readable product of raw θ powers.
    pub fn describe(x: &RawTheta) -> String {
        let parts: Vec<String> =
            (0..THETA_COUNT)
                .filter(|&j| x[j] != 0)
                .map(|j| {
                    if x[j] == 1 {
                        format!("θ({})", THETA_NAMES[j])
                    } else {
                        format!("θ({})^{}", THETA_NAMES[j], x[j])
                    }
                })
                .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }
}

impl Default for ThetaLattice {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_invariants() {
        let l = ThetaLattice::standard();
        assert_eq!(l.invariants().to_string(), "Z^10 x Z/3 x Z/3 x Z/12");
        assert_eq!(l.ambient(), l.invariants());
        assert_eq!(l.free_columns(), &[T15, T17, T23, T2, T3, T1_7, T10_1, T4_1, T4_7, T4_10]);
        for (_, r) in standard_relations() {
            assert!(l.is_relation(&r));
        }
    }

    #[test]
    fn orders_and_lifts() {
        let l = ThetaLattice::standard();
        assert_eq!(l.order(&l.unit(T10_7)), Some(12));
        assert_eq!(l.order(&l.unit(T1C)), Some(6));
        assert_eq!(l.order(&l.unit(T4C)), Some(3));
        assert_eq!(l.order(&l.unit(T7C)), Some(1));
        assert_eq!(l.order(&l.unit(T15)), None);
        assert!(l.scale(&l.unit(T10_7), 12).is_zero());
        let t = l.add(&l.unit(T10C), &l.scale(&l.unit(T4_7), -5));
        assert_eq!(l.reduce(&l.lift(&t)), t);
    }

    #[test]
    fn weaker_lattice_keeps_seven_c() {
        let rels: Vec<RawTheta> =
            standard_relations().into_iter().filter(|(n, _)| !n.starts_with("θ(7,c)")).map(|(_, r)| r).collect();
        let l = ThetaLattice::from_relations(rels);
        assert_eq!(l.free_rank(), 11);
        assert!(!l.unit(T7C).is_zero());
    }
}
