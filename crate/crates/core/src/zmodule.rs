//! Exact integer linear algebra: Smith normal form and abelian group invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ZError {
    #[error("dimension mismatch: expected {expected} columns, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self, ZError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(ZError::Dimension { expected: cols, found: r.len() });
            }
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// `col[dst] += q * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// `rows cols` then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", r.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = ZError;
    fn from_str(s: &str) -> Result<Self, ZError> {
        let mut lines =
            s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, msg: &str| ZError::Parse { line, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing `rows cols` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(hl, "bad dimension")))
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 {
            return Err(perr(hl, "header must be `rows cols`"));
        }
        let mut m = IntMatrix::zeros(dims[0], dims[1]);
        for i in 0..dims[0] {
            let (ln, line) = lines.next().ok_or_else(|| perr(hl, "missing rows"))?;
            let vals: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(ln, "bad integer")))
                .collect::<Result<_, _>>()?;
            if vals.len() != dims[1] {
                return Err(perr(ln, "wrong number of entries"));
            }
            for (j, v) in vals.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "trailing data"));
        }
        Ok(m)
    }
}

/// `U m V = D` with `D` diagonal, `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

/// Smith normal form with unimodular transforms.
///
/// Pivot is the smallest nonzero absolute value in the active block, first in
/// row-major order.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut vi = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_nonzero(&a, t, t..r, t..c) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                vi.add_row(t, j, &-q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Bring the smallest remainder in row t or column t to the pivot.
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |i: usize, j: usize, a: &IntMatrix| {
                    if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                };
                for j in t..c {
                    consider(t, j, &a);
                }
                for i in t + 1..r {
                    consider(i, t, &a);
                }
                let (bi, bj) = best.expect("pivot row or column is nonzero");
                a.swap_rows(t, bi);
                u.swap_rows(t, bi);
                a.swap_cols(t, bj);
                v.swap_cols(t, bj);
                vi.swap_rows(t, bj);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..r.min(c)).map(|i| a[(i, i)].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    Snf { diagonal, u, v, v_inv: vi, rank }
}

fn min_nonzero(
    a: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Isomorphism type `Z^r x Z/d₁ x … x Z/d_k` with `d₁ | … | d_k`, each `≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        Self { free_rank, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Builds invariants from an SNF diagonal of a relation matrix on `n` generators.
    fn from_diagonal(n: usize, diagonal: &[BigInt]) -> Self {
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        let torsion = diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        Self { free_rank: n - rank, torsion }
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_part(&self) -> AbelianInvariants {
        Self { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// `Z^k x self`.
    pub fn with_extra_rank(&self, k: usize) -> AbelianInvariants {
        Self { free_rank: self.free_rank + k, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for d in &self.torsion {
            write!(f, " x Z/{d}")?;
        }
        Ok(())
    }
}

/// Invariants of `Zⁿ / rowspan(relations)`.
pub fn invariants_of_quotient(n: usize, relations: &IntMatrix) -> Result<AbelianInvariants, ZError> {
    if relations.rows() > 0 && relations.cols() != n {
        return Err(ZError::Dimension { expected: n, found: relations.cols() });
    }
    if relations.rows() == 0 {
        return Ok(AbelianInvariants { free_rank: n, torsion: Vec::new() });
    }
    let snf = smith_normal_form(relations);
    Ok(AbelianInvariants::from_diagonal(n, &snf.diagonal))
}

/// Row-echelon basis of the lattice spanned by `rows` (Hermite form, pivots positive).
pub fn lattice_basis(cols: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut slot: Vec<Option<Vec<BigInt>>> = vec![None; cols];
    for r in rows {
        debug_assert_eq!(r.len(), cols);
        let mut v = r.clone();
        while let Some(p) = pivot(&v) {
            let Some(b) = slot[p].take() else {
                slot[p] = Some(v);
                break;
            };
            // Replace (b, v) by a gcd combination with pivot p and a remainder without it.
            let e = b[p].extended_gcd(&v[p]);
            let (bg, vg) = (&b[p] / &e.gcd, &v[p] / &e.gcd);
            let top = (0..cols).map(|j| &e.x * &b[j] + &e.y * &v[j]).collect();
            let rest = (0..cols).map(|j| &bg * &v[j] - &vg * &b[j]).collect();
            slot[p] = Some(top);
            v = rest;
        }
    }
    let mut basis: Vec<Vec<BigInt>> = slot.into_iter().flatten().collect();
    for r in basis.iter_mut() {
        let p = pivot(r).expect("basis rows are nonzero");
        if r[p].is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    for k in 0..basis.len() {
        let p = pivot(&basis[k]).unwrap();
        for i in 0..k {
            let q = basis[i][p].div_floor(&basis[k][p]);
            if !q.is_zero() {
                for j in 0..cols {
                    let v = &q * &basis[k][j];
                    basis[i][j] -= v;
                }
            }
        }
    }
    basis
}

fn pivot(r: &[BigInt]) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

/// Invariants of the subgroup of `Zⁿ / rowspan(relations)` generated by `gens`.
pub fn subgroup_invariants_in(
    n: usize,
    relations: &[Vec<BigInt>],
    gens: &[Vec<BigInt>],
) -> Result<AbelianInvariants, ZError> {
    for g in gens.iter().chain(relations) {
        if g.len() != n {
            return Err(ZError::Dimension { expected: n, found: g.len() });
        }
    }
    let g = lattice_basis(n, gens);
    if g.is_empty() {
        return Ok(AbelianInvariants::trivial());
    }
    let r = lattice_basis(n, relations);
    let m = g.len();
    let mut stacked = IntMatrix::zeros(m + r.len(), n);
    for (i, row) in g.iter().chain(r.iter()).enumerate() {
        for (j, x) in row.iter().enumerate() {
            stacked[(i, j)] = x.clone();
        }
    }
    // Rows of U past the rank span the left kernel; their first m entries
    // give the relations among the generators.
    let snf = smith_normal_form(&stacked);
    let total = m + r.len();
    let mut kernel = IntMatrix::zeros(total - snf.rank, m);
    for (k, i) in (snf.rank..total).enumerate() {
        for j in 0..m {
            kernel[(k, j)] = snf.u[(i, j)].clone();
        }
    }
    invariants_of_quotient(m, &kernel)
}

/// Invariants of the subgroup generated by `gens` inside `ambient`.
///
/// Coordinates are the free part followed by one residue per torsion factor.
pub fn subgroup_invariants(ambient: &AbelianInvariants, gens: &[Vec<BigInt>]) -> Result<AbelianInvariants, ZError> {
    let n = ambient.free_rank + ambient.torsion.len();
    let relations: Vec<Vec<BigInt>> = ambient
        .torsion
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mut row = vec![BigInt::zero(); n];
            row[ambient.free_rank + k] = d.clone();
            row
        })
        .collect();
    subgroup_invariants_in(n, &relations, gens)
}

/// Whether `v` lies in the lattice spanned by `rows`.
pub fn lattice_contains(cols: usize, rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for b in lattice_basis(cols, rows) {
        let p = pivot(&b).expect("basis rows are nonzero");
        let (q, rem) = v[p].div_rem(&b[p]);
        if !rem.is_zero() {
            return false;
        }
        for j in 0..cols {
            let d = &q * &b[j];
            v[j] -= d;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Converts an `i64` row to `BigInt`s.
pub fn big_row(r: &[i64]) -> Vec<BigInt> {
    r.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts a `BigInt` to `i64`, panicking on overflow.
pub fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("integer fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(cols, &rows).unwrap()
    }

    fn is_diag_of(snf: &Snf, m: &IntMatrix) -> bool {
        let d = snf.u.mul(m).mul(&snf.v);
        (0..d.rows())
            .all(|i| (0..d.cols()).all(|j| if i == j { d[(i, j)] == snf.diagonal[i] } else { d[(i, j)].is_zero() }))
    }

    #[test]
    fn snf_examples() {
        let m = mat(2, &[&[6, -3], &[0, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(3), BigInt::from(12)]);
        assert!(is_diag_of(&s, &m));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(2));
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert!(s.diagonal.iter().all(|d| d.is_one()));
        let s = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(s.diagonal.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn quotient_examples() {
        let none = IntMatrix::zeros(0, 4);
        assert_eq!(invariants_of_quotient(4, &none).unwrap(), AbelianInvariants::new(4, &[]));
        let m = mat(2, &[&[6, -3], &[0, 6]]);
        assert_eq!(invariants_of_quotient(2, &m).unwrap(), AbelianInvariants::new(0, &[3, 12]));
        assert!(invariants_of_quotient(3, &m).is_err());
    }

    #[test]
    fn subgroup_examples() {
        let six = AbelianInvariants::new(0, &[6]);
        let h = subgroup_invariants(&six, &[big_row(&[3])]).unwrap();
        assert_eq!(h, AbelianInvariants::new(0, &[2]));
        assert!(subgroup_invariants(&six, &[]).unwrap().is_trivial());
        let z2 = AbelianInvariants::new(2, &[]);
        let h = subgroup_invariants(&z2, &[big_row(&[6, 0])]).unwrap();
        assert_eq!(h, AbelianInvariants::new(1, &[]));
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = mat(2, &[&[6, -3], &[0, 6]]);
        let s = m.to_string();
        assert_eq!(s, "2 2\n6 -3\n0 6\n");
        assert_eq!(s.parse::<IntMatrix>().unwrap(), m);
        assert!("2 2\n1 2\n".parse::<IntMatrix>().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(AbelianInvariants::new(10, &[3, 3, 12]).to_string(), "Z^10 x Z/3 x Z/3 x Z/12");
        assert_eq!(AbelianInvariants::trivial().to_string(), "Z^0");
    }
}
