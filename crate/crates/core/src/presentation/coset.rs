//! Coset enumeration by the relator-driven (HLT) strategy.

use std::collections::BTreeMap;

use super::Presentation;
use crate::word::{GeneratorSymbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetResult {
    /// The table closed with this many cosets.
    Index(usize),
    /// More than `max_cosets` cosets were defined.
    Overflow,
}

impl CosetResult {
    pub fn index(self) -> Option<usize> {
        match self {
            CosetResult::Index(n) => Some(n),
            CosetResult::Overflow => None,
        }
    }
}

const NONE: u32 = u32::MAX;

struct Table {
    cols: usize,
    inv: Vec<usize>,
    rows: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
}

impl Table {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.cols + x] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let n = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = n;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> bool {
        let d = self.parent.len();
        if d >= self.max {
            return false;
        }
        let d = d as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, self.inv[x], c);
        true
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let xi = self.inv[x];
                if self.get(f, xi) == e {
                    self.set(f, xi, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let g = self.get(e1, x);
                if g != NONE {
                    self.merge(f1, g);
                } else {
                    let h = self.get(f1, xi);
                    if h != NONE {
                        self.merge(e1, h);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `c` under `w`, defining cosets as needed. Returns false on overflow.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
                if i > j {
                    break;
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i && self.get(b, self.inv[w[j]]) != NONE {
                b = self.get(b, self.inv[w[j]]);
                if j == i {
                    self.coincidence(f, b);
                    return true;
                }
                j -= 1;
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, self.inv[w[i]], f);
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }
}

fn columns(p: &Presentation) -> (BTreeMap<(GeneratorSymbol, i8), usize>, Vec<usize>) {
    let mut col = BTreeMap::new();
    let mut inv = Vec::new();
    for s in p.alphabet() {
        let k = inv.len();
        if p.involutory().contains(s) {
            col.insert((s.clone(), 1), k);
            col.insert((s.clone(), -1), k);
            inv.push(k);
        } else {
            col.insert((s.clone(), 1), k);
            col.insert((s.clone(), -1), k + 1);
            inv.push(k + 1);
            inv.push(k);
        }
    }
    (col, inv)
}

/// Index of the subgroup generated by `subgroup_gens`, or `Overflow`.
///
/// Involutions and commuting pairs of `p` count as defining relations.
pub fn coset_enumerate(p: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> CosetResult {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let (col, inv) = columns(p);
    let encode = |w: &Word| -> Vec<usize> { w.letters().iter().map(|l| col[&(l.symbol.clone(), l.sign)]).collect() };
    let rels: Vec<Vec<usize>> = p
        .defining_relators()
        .iter()
        .filter(|r| {
            let l = r.letters();
            !(l.len() == 2 && l[0].symbol == l[1].symbol && p.involutory().contains(&l[0].symbol))
        })
        .map(|r| encode(r))
        .collect();
    let subs: Vec<Vec<usize>> = subgroup_gens.iter().map(|w| encode(w)).collect();
    let cols = inv.len();
    let mut t = Table { cols, inv, rows: vec![NONE; cols], parent: vec![0], queue: Vec::new(), max: max_cosets };
    for s in &subs {
        if !t.scan_and_fill(0, s) {
            return CosetResult::Overflow;
        }
    }
    let mut c = 0u32;
    while (c as usize) < t.parent.len() {
        if t.live(c) {
            for r in &rels {
                if !t.scan_and_fill(c, r) {
                    return CosetResult::Overflow;
                }
                if !t.live(c) {
                    break;
                }
            }
            for x in 0..cols {
                if !t.live(c) {
                    break;
                }
                if t.get(c, x) == NONE && !t.define(c, x) {
                    return CosetResult::Overflow;
                }
            }
        }
        c += 1;
    }
    CosetResult::Index((0..t.parent.len() as u32).filter(|&c| t.live(c)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> Option<usize> {
        coset_enumerate(&Presentation::parse(text).unwrap(), &[], 100_000).index()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("gens: u v\ninvol: all\nrel: u v u v u v\n"), Some(6));
        assert_eq!(order("gens: u\ninvol: all\n"), Some(2));
        assert_eq!(order("gens: u v\ninvol: all\ncomm: u v\n"), Some(4));
        assert_eq!(order("gens: a\nrel: a a a a a\n"), Some(5));
        assert_eq!(order("gens: r s\nrel: r r r r\nrel: s s\nrel: s r s r\n"), Some(8));
        assert_eq!(order("gens: x y\nrel: x x\nrel: y y y\nrel: x y x y x y x y x y\n"), Some(60));
    }

    #[test]
    fn subgroup_index_and_overflow() {
        let p = Presentation::parse("gens: u v\ninvol: all\nrel: u v u v u v\n").unwrap();
        let h = [Word::parse("u").unwrap()];
        assert_eq!(coset_enumerate(&p, &h, 1000), CosetResult::Index(3));
        let free = Presentation::parse("gens: a b\n").unwrap();
        assert_eq!(coset_enumerate(&free, &[], 50), CosetResult::Overflow);
    }
}
