//! Single-index collection in the normal form θ c^a 7^b 1^d 10^e 4^f.

use super::theta::{RawTheta, T10C, T10_1, T10_7, T1C, T1_7, T4C, T4_1, T4_10, T4_7, T7C, THETA_COUNT};
use super::KStarError;

/// Normal-form generator order.
pub const GEN_NAMES: [&str; 5] = ["c", "7", "1", "10", "4"];
pub const C: usize = 0;
pub const SEVEN: usize = 1;
pub const ONE: usize = 2;
pub const TEN: usize = 3;
pub const FOUR: usize = 4;

/// Element of one index: raw θ part and the five normal-form exponents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Local {
    pub t: RawTheta,
    pub e: [i64; 5],
}

impl Local {
    pub fn gen(g: usize, k: i64) -> Self {
        let mut x = Self::default();
        x.e[g] = k;
        x
    }

    pub fn theta(j: usize) -> Self {
        let mut x = Self::default();
        x.t[j] = 1;
        x
    }

    pub fn is_trivial_exps(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }
}

/// `[h, g] = θ · c^a 7^b` for `h` above `g` in the generator order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommRule {
    pub theta: usize,
    pub lower: [i64; 5],
}

fn add(a: i64, b: i64) -> Result<i64, KStarError> {
    a.checked_add(b).ok_or(KStarError::Overflow)
}

fn add_theta(a: &mut RawTheta, b: &RawTheta) -> Result<(), KStarError> {
    for j in 0..THETA_COUNT {
        a[j] = add(a[j], b[j])?;
    }
    Ok(())
}

/// Commutator rules with precomputed conjugation images.
#[derive(Clone, Debug)]
pub struct RuleSet {
    rules: [[Option<CommRule>; 5]; 5],
    /// `phi[h][g][0] = h g h⁻¹`, `phi[h][g][1] = h⁻¹ g h`, for `g < h`.
    phi: [[[Local; 2]; 5]; 5],
}

impl RuleSet {
    /// The shipped rules: all ten pairs, θ's central.
    pub fn standard() -> Self {
        let r = |theta: usize, lower: &[(usize, i64)]| {
            let mut l = [0; 5];
            for &(g, k) in lower {
                l[g] = k;
            }
            Some(CommRule { theta, lower: l })
        };
        let mut rules = [[None; 5]; 5];
        rules[SEVEN][C] = r(T7C, &[]);
        rules[ONE][C] = r(T1C, &[]);
        rules[ONE][SEVEN] = r(T1_7, &[(C, -3)]);
        rules[TEN][C] = r(T10C, &[]);
        rules[TEN][SEVEN] = r(T10_7, &[]);
        rules[TEN][ONE] = r(T10_1, &[]);
        rules[FOUR][C] = r(T4C, &[]);
        rules[FOUR][SEVEN] = r(T4_7, &[]);
        rules[FOUR][ONE] = r(T4_1, &[(C, -2), (SEVEN, 2)]);
        rules[FOUR][TEN] = r(T4_10, &[(C, 3)]);
        Self::from_rules(rules).expect("shipped rules are small")
    }

    /// Builds conjugation tables; each rule's lower part must use generators below `g`.
    pub fn from_rules(rules: [[Option<CommRule>; 5]; 5]) -> Result<Self, KStarError> {
        let mut rs = Self { rules, phi: [[[Local::default(); 2]; 5]; 5] };
        for h in 0..5 {
            for g in 0..h {
                let rule = rs.rules[h][g].ok_or(KStarError::MissingRule(h, g))?;
                debug_assert!(rule.lower.iter().enumerate().all(|(k, &x)| x == 0 || k < g));
                let mut t = Local { e: rule.lower, ..Local::default() };
                t.t[rule.theta] = 1;
                let fwd = rs.mul(&t, &Local::gen(g, 1))?;
                let back = rs.apply_aut(h, &t, true)?;
                let bwd = rs.mul(&rs.inverse(&back)?, &Local::gen(g, 1))?;
                rs.phi[h][g] = [fwd, bwd];
            }
        }
        Ok(rs)
    }

    pub fn rule(&self, h: usize, g: usize) -> Option<CommRule> {
        self.rules[h][g]
    }

    /// Conjugate of `x` (generators below `h` only) by `h` or, if `inv`, by `h⁻¹`.
    fn apply_aut(&self, h: usize, x: &Local, inv: bool) -> Result<Local, KStarError> {
        let mut r = Local { t: x.t, ..Local::default() };
        for g in 0..5 {
            if x.e[g] != 0 {
                debug_assert!(g < h);
                let img = self.phi[h][g][inv as usize];
                r = self.mul(&r, &self.power(&img, x.e[g])?)?;
            }
        }
        Ok(r)
    }

    /// `v · g^k`.
    fn mul_gen(&self, v: &Local, g: usize, k: i64) -> Result<Local, KStarError> {
        if (g + 1..5).all(|h| v.e[h] == 0) {
            let mut r = *v;
            r.e[g] = add(r.e[g], k)?;
            return Ok(r);
        }
        // v = P S with S the part above g: v g^k = P (S g S⁻¹)^k S.
        let mut x = Local::gen(g, 1);
        for h in (g + 1..5).rev() {
            let e = v.e[h];
            for _ in 0..e.unsigned_abs() {
                x = self.apply_aut(h, &x, e < 0)?;
            }
        }
        let mut p = Local { t: v.t, ..Local::default() };
        p.e[..=g].copy_from_slice(&v.e[..=g]);
        let mut r = self.mul(&p, &self.power(&x, k)?)?;
        for h in g + 1..5 {
            debug_assert_eq!(r.e[h], 0);
            r.e[h] = v.e[h];
        }
        Ok(r)
    }

    pub fn mul(&self, x: &Local, y: &Local) -> Result<Local, KStarError> {
        let mut r = *x;
        add_theta(&mut r.t, &y.t)?;
        for g in 0..5 {
            if y.e[g] != 0 {
                r = self.mul_gen(&r, g, y.e[g])?;
            }
        }
        Ok(r)
    }

    pub fn inverse(&self, x: &Local) -> Result<Local, KStarError> {
        let mut r = Local::default();
        for j in 0..THETA_COUNT {
            r.t[j] = x.t[j].checked_neg().ok_or(KStarError::Overflow)?;
        }
        for g in (0..5).rev() {
            if x.e[g] != 0 {
                r = self.mul_gen(&r, g, -x.e[g])?;
            }
        }
        Ok(r)
    }

    pub fn power(&self, x: &Local, k: i64) -> Result<Local, KStarError> {
        let (mut base, mut k) = if k < 0 { (self.inverse(x)?, k.unsigned_abs()) } else { (*x, k as u64) };
        let mut r = Local::default();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(r)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &Local, b: &Local) -> Result<Local, KStarError> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        self.mul(&ab, &self.inverse(&ba)?)
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kstar::theta::ThetaLattice;

    #[test]
    fn rules_reproduce_as_commutators() {
        let rs = RuleSet::standard();
        let l = ThetaLattice::standard();
        for h in 0..5 {
            for g in 0..h {
                let rule = rs.rule(h, g).unwrap();
                let c = rs.commutator(&Local::gen(h, 1), &Local::gen(g, 1)).unwrap();
                let mut want = Local { e: rule.lower, ..Local::default() };
                want.t[rule.theta] = 1;
                assert_eq!(c.e, want.e, "[{}, {}]", GEN_NAMES[h], GEN_NAMES[g]);
                assert_eq!(l.reduce(&c.t), l.reduce(&want.t), "[{}, {}]", GEN_NAMES[h], GEN_NAMES[g]);
            }
        }
    }

    #[test]
    fn four_ten_normal_form() {
        let rs = RuleSet::standard();
        let x = rs.mul(&Local::gen(FOUR, 1), &Local::gen(TEN, 1)).unwrap();
        assert_eq!(x.e, [3, 0, 0, 1, 1]);
        assert_eq!(x.t[T4_10], 1);
    }

    #[test]
    fn inverse_and_power() {
        let rs = RuleSet::standard();
        let l = ThetaLattice::standard();
        let x = rs.mul(&Local::gen(FOUR, 2), &Local::gen(ONE, -3)).unwrap();
        let y = rs.mul(&x, &rs.inverse(&x).unwrap()).unwrap();
        assert_eq!(y.e, [0; 5]);
        assert!(l.is_relation(&y.t));
        let p = rs.power(&x, 3).unwrap();
        let q = rs.mul(&rs.mul(&x, &x).unwrap(), &x).unwrap();
        assert_eq!(p.e, q.e);
        assert_eq!(l.reduce(&p.t), l.reduce(&q.t));
    }
}
