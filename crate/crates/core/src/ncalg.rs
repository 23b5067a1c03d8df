//! Free noncommutative polynomials over the generators `e_i, f_i, ω_i^{±1}, ω_i'^{±1}`,
//! graded by the root lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::LaurentScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    E,
    F,
    W,
    Wp,
}

/// One generator letter. `power` is ±1 and only meaningful for `W`/`Wp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub index: usize,
    pub power: i8,
}

impl GenSymbol {
    pub fn e(i: usize) -> Self {
        GenSymbol { kind: GenKind::E, index: i, power: 1 }
    }
    pub fn f(i: usize) -> Self {
        GenSymbol { kind: GenKind::F, index: i, power: 1 }
    }
    pub fn w(i: usize, power: i8) -> Self {
        GenSymbol { kind: GenKind::W, index: i, power }
    }
    pub fn wp(i: usize, power: i8) -> Self {
        GenSymbol { kind: GenKind::Wp, index: i, power }
    }

    pub fn is_grouplike(&self) -> bool {
        matches!(self.kind, GenKind::W | GenKind::Wp)
    }

    /// Root-lattice degree with `n - 1` coordinates.
    pub fn degree(&self, rank: usize) -> RootVector {
        let mut v = vec![0i64; rank];
        match self.kind {
            GenKind::E => v[self.index - 1] = 1,
            GenKind::F => v[self.index - 1] = -1,
            _ => {}
        }
        RootVector(v)
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::E => "e",
            GenKind::F => "f",
            GenKind::W => "w",
            GenKind::Wp => "wp",
        };
        write!(f, "{name}{}", self.index)?;
        if self.is_grouplike() && self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("bad letter `{0}`")]
    BadLetter(String),
}

impl FromStr for GenSymbol {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordParseError::BadLetter(s.to_string());
        let (head, power) = match s.split_once('^') {
            Some((h, p)) => (h, p.parse::<i8>().map_err(|_| bad())?),
            None => (s, 1),
        };
        let (kind, digits) = if let Some(d) = head.strip_prefix("wp") {
            (GenKind::Wp, d)
        } else if let Some(d) = head.strip_prefix('w') {
            (GenKind::W, d)
        } else if let Some(d) = head.strip_prefix('e') {
            (GenKind::E, d)
        } else if let Some(d) = head.strip_prefix('f') {
            (GenKind::F, d)
        } else {
            return Err(bad());
        };
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 || power.abs() != 1 || (power != 1 && matches!(kind, GenKind::E | GenKind::F)) {
            return Err(bad());
        }
        Ok(GenSymbol { kind, index, power })
    }
}

/// Uncompressed word in the free algebra; the empty word is `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenSymbol) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for Word {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.split('*')
            .map(|p| p.trim().parse::<GenSymbol>())
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Element of the root lattice in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `⟨ε_j, self⟩` for `1 <= j <= n`.
    pub fn eps_pairing(&self, j: usize) -> i64 {
        let n = self.0.len() + 1;
        let at = |i: usize| if i >= 1 && i < n { self.0[i - 1] } else { 0 };
        at(j) - at(j - 1)
    }

    /// All `ζ ∈ Q⁺` with `0 <= ζ <= bound` componentwise, in lex order.
    pub fn box_below(bound: &RootVector) -> Vec<RootVector> {
        let mut out = vec![Vec::new()];
        for &b in &bound.0 {
            let mut next = Vec::new();
            for prefix in &out {
                for c in 0..=b.max(0) {
                    let mut p: Vec<i64> = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(RootVector).collect()
    }

    /// All `ζ ∈ Q⁺` of the given height.
    pub fn of_height(rank: usize, h: i64) -> Vec<RootVector> {
        fn rec(rank: usize, h: i64, cur: &mut Vec<i64>, out: &mut Vec<RootVector>) {
            if cur.len() + 1 == rank {
                cur.push(h);
                out.push(RootVector(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=h).rev() {
                cur.push(c);
                rec(rank, h - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if rank == 0 {
            return out;
        }
        rec(rank, h, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sum of letter degrees; group-likes contribute zero.
pub fn word_degree(w: &Word, rank: usize) -> RootVector {
    let mut v = vec![0i64; rank];
    for g in &w.0 {
        match g.kind {
            GenKind::E => v[g.index - 1] += 1,
            GenKind::F => v[g.index - 1] -= 1,
            _ => {}
        }
    }
    RootVector(v)
}

/// Finite linear combination of words with Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    pub ell: u32,
    pub working_order: i64,
    pub terms: BTreeMap<Word, LaurentScalar>,
}

impl NCPoly {
    pub fn zero(ell: u32, working_order: i64) -> Self {
        NCPoly { ell, working_order, terms: BTreeMap::new() }
    }

    pub fn one(ell: u32, working_order: i64) -> Self {
        Self::word(Word::empty(), LaurentScalar::one(ell, working_order))
    }

    pub fn word(w: Word, c: LaurentScalar) -> Self {
        let mut p = NCPoly::zero(c.ell(), c.working_order());
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = NCPoly::zero(self.ell, self.working_order);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|w| w.max_index()).max().unwrap_or(0)
    }
}

pub fn ncpoly_add(p: &NCPoly, q: &NCPoly) -> NCPoly {
    let mut out = p.clone();
    for (w, c) in &q.terms {
        out.add_term(w.clone(), c.clone());
    }
    out
}

pub fn ncpoly_mul(p: &NCPoly, q: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(p.ell, p.working_order);
    for (u, a) in &p.terms {
        for (v, b) in &q.terms {
            out.add_term(u.concat(v), a * b);
        }
    }
    out
}

/// Restriction of `p` to words of degree `zeta`.
pub fn graded_component(p: &NCPoly, zeta: &RootVector) -> NCPoly {
    let mut out = NCPoly::zero(p.ell, p.working_order);
    for (w, c) in &p.terms {
        if &word_degree(w, zeta.rank()) == zeta {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("[{c}]*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CycScalar;

    fn l(n: i64) -> LaurentScalar {
        LaurentScalar::from_cyc(CycScalar::from_int(2, n), 8)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(word_degree(&w("e1*f1"), 1), RootVector(vec![0]));
        assert_eq!(word_degree(&w("e1*e2"), 2), RootVector(vec![1, 1]));
        assert_eq!(word_degree(&w("w1*wp2"), 2), RootVector(vec![0, 0]));
    }

    #[test]
    fn word_text_roundtrip() {
        let x = w("e1*f1*w2^-1*wp3");
        assert_eq!(x.to_string(), "e1*f1*w2^-1*wp3");
        assert_eq!(x.len(), 4);
        assert!("e0".parse::<Word>().is_err());
        assert!("e1^-1".parse::<Word>().is_err());
        assert_eq!(w("1"), Word::empty());
    }

    #[test]
    fn products() {
        let e1 = NCPoly::word(w("e1"), l(1));
        let f1 = NCPoly::word(w("f1"), l(1));
        let p = ncpoly_mul(&e1, &f1);
        assert_eq!(p.terms.get(&w("e1*f1")), Some(&l(1)));
        let s = ncpoly_add(&e1, &f1);
        assert_eq!(ncpoly_mul(&s, &NCPoly::one(2, 8)), s);
        let six = ncpoly_mul(&e1.scale(&l(2)), &e1.scale(&l(3)));
        assert_eq!(six, NCPoly::word(w("e1*e1"), l(6)));
    }

    #[test]
    fn graded_pieces() {
        let p = ncpoly_add(&NCPoly::word(w("e1"), l(1)), &NCPoly::word(w("e1*e2"), l(1)));
        assert_eq!(graded_component(&p, &RootVector(vec![1, 0])), NCPoly::word(w("e1"), l(1)));
        assert_eq!(graded_component(&p, &RootVector(vec![1, 1])), NCPoly::word(w("e1*e2"), l(1)));
        assert!(graded_component(&NCPoly::word(w("e1"), l(1)), &RootVector(vec![0, 1])).is_zero());
    }

    #[test]
    fn root_vector_helpers() {
        assert_eq!(RootVector(vec![1, 0]).eps_pairing(1), 1);
        assert_eq!(RootVector(vec![1, 0]).eps_pairing(2), -1);
        assert_eq!(RootVector(vec![0, 1]).eps_pairing(2), 1);
        assert_eq!(RootVector::of_height(2, 2).len(), 3);
        assert_eq!(RootVector::box_below(&RootVector(vec![1, 2])).len(), 6);
    }
}
