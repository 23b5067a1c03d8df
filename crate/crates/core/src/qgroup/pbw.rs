//! Degree slices of the free algebra on `e`'s (or `f`'s) modulo the Serre relations,
//! with coordinates in the PBW basis of root-vector monomials.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{QGroup, QGroupError};
use crate::linalg::{invert, Echelon, SparseRow};
use crate::ncalg::RootVector;
use crate::scalars::CycScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

pub(crate) type WordPoly = Vec<(Vec<u8>, CycScalar)>;

/// One graded piece `U^±_ζ` presented as free words modulo the ideal.
pub(crate) struct Slice {
    pub words: Vec<Vec<u8>>,
    pub index: HashMap<Vec<u8>, usize>,
    /// Untruncated exponent vectors of degree `ζ`, lex order.
    pub monos: Vec<Vec<u32>>,
    /// PBW coordinates of each free word.
    pub coords: Vec<Vec<(usize, CycScalar)>>,
    /// Basis of the ideal in this degree, as word polynomials.
    pub ideal: Vec<WordPoly>,
}

fn words_of_degree(zeta: &RootVector) -> Vec<Vec<u8>> {
    let total: i64 = zeta.0.iter().sum();
    let mut out = Vec::new();
    let mut counts: Vec<i64> = zeta.0.clone();
    let mut cur = Vec::with_capacity(total as usize);
    fn rec(counts: &mut [i64], cur: &mut Vec<u8>, total: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8 + 1);
                rec(counts, cur, total, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&mut counts, &mut cur, total as usize, &mut out);
    out
}

impl QGroup {
    /// Serre relations on the given side, each with its degree.
    pub(crate) fn serre_relations(&self, side: Side) -> Vec<(RootVector, WordPoly)> {
        let rank = self.rank();
        let ell = self.ell();
        let (r, s) = (self.params.r(), self.params.s());
        let (a, b) = match side {
            Side::Plus => (r, s),
            Side::Minus => (r.inv().expect("unit"), s.inv().expect("unit")),
        };
        let one = CycScalar::one(ell);
        let sum = -(&a + &b);
        let prod = &a * &b;
        let mut rels = Vec::new();
        for i in 1..=rank {
            for j in i + 2..=rank {
                let mut deg = RootVector::zero(rank);
                deg.0[i - 1] = 1;
                deg.0[j - 1] = 1;
                let (i8_, j8) = (i as u8, j as u8);
                rels.push((deg, vec![(vec![i8_, j8], one.clone()), (vec![j8, i8_], -&one)]));
            }
        }
        for i in 1..rank {
            let (x, y) = (i as u8, i as u8 + 1);
            let mut d1 = RootVector::zero(rank);
            d1.0[i - 1] = 2;
            d1.0[i] = 1;
            rels.push((
                d1,
                vec![
                    (vec![x, x, y], one.clone()),
                    (vec![x, y, x], sum.clone()),
                    (vec![y, x, x], prod.clone()),
                ],
            ));
            let mut d2 = RootVector::zero(rank);
            d2.0[i - 1] = 1;
            d2.0[i] = 2;
            rels.push((
                d2,
                vec![
                    (vec![x, y, y], one.clone()),
                    (vec![y, x, y], sum.clone()),
                    (vec![y, y, x], prod.clone()),
                ],
            ));
        }
        rels
    }

    /// Word expansion of the root vector with lex index `k`.
    pub(crate) fn root_words(&self, side: Side, k: usize) -> Arc<Vec<(Vec<u8>, CycScalar)>> {
        if let Some(v) = self.root_words.lock().get(&(side, k)) {
            return v.clone();
        }
        let (i, j) = self.roots[k];
        let ell = self.ell();
        let v: WordPoly = if i == j {
            vec![(vec![i as u8], CycScalar::one(ell))]
        } else {
            let prev = self.root_words(side, self.root_index(i - 1, j).expect("root"));
            // 𝓔: e_i X − r⁻¹ X e_i;  𝓕: f_i X − s X f_i
            let c = match side {
                Side::Plus => -&self.params.r().inv().expect("unit"),
                Side::Minus => -&self.params.s(),
            };
            let mut out = Vec::new();
            for (w, x) in prev.iter() {
                let mut left = vec![i as u8];
                left.extend_from_slice(w);
                out.push((left, x.clone()));
                let mut right = w.clone();
                right.push(i as u8);
                out.push((right, x * &c));
            }
            out
        };
        let v = Arc::new(v);
        self.root_words.lock().insert((side, k), v.clone());
        v
    }

    /// Word expansion of an ordered root-vector monomial.
    pub(crate) fn mono_words(&self, side: Side, exps: &[u32]) -> WordPoly {
        let mut acc: HashMap<Vec<u8>, CycScalar> = HashMap::new();
        acc.insert(Vec::new(), CycScalar::one(self.ell()));
        for (k, &a) in exps.iter().enumerate() {
            for _ in 0..a {
                let rw = self.root_words(side, k);
                let mut next: HashMap<Vec<u8>, CycScalar> = HashMap::new();
                for (w, x) in &acc {
                    for (u, y) in rw.iter() {
                        let mut wu = w.clone();
                        wu.extend_from_slice(u);
                        let c = x * y;
                        let e = next.entry(wu).or_insert_with(|| CycScalar::zero(self.ell()));
                        *e += &c;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                acc = next;
            }
        }
        let mut v: WordPoly = acc.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// All (untruncated) root exponent vectors of degree `ζ`, lex order.
    pub fn exponents_of_degree(&self, zeta: &RootVector) -> Vec<Vec<u32>> {
        let roots = &self.roots;
        let mut out = Vec::new();
        fn rec(
            k: usize,
            roots: &[(usize, usize)],
            rem: &mut Vec<i64>,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if k == roots.len() {
                if rem.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let (i, j) = roots[k];
            let mut a = 0u32;
            loop {
                cur.push(a);
                rec(k + 1, roots, rem, cur, out);
                cur.pop();
                if (j..=i).any(|c| rem[c - 1] == 0) {
                    break;
                }
                for c in j..=i {
                    rem[c - 1] -= 1;
                }
                a += 1;
            }
            for c in j..=i {
                rem[c - 1] += a as i64;
            }
        }
        let mut rem = zeta.0.clone();
        rec(0, roots, &mut rem, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// The slice `U^±_ζ`, built (and cached) on demand.
    pub(crate) fn slice(&self, side: Side, zeta: &RootVector) -> Result<Arc<Slice>, QGroupError> {
        let cache = match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        };
        if let Some(s) = cache.lock().get(zeta) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_slice(side, zeta)?);
        cache.lock().insert(zeta.clone(), s.clone());
        Ok(s)
    }

    fn build_slice(&self, side: Side, zeta: &RootVector) -> Result<Slice, QGroupError> {
        let ell = self.ell();
        let words = words_of_degree(zeta);
        let index: HashMap<Vec<u8>, usize> =
            words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let to_row = |p: &WordPoly| -> SparseRow {
            let mut row = SparseRow::new();
            for (w, c) in p {
                let k = index[w];
                let e = row.entry(k).or_insert_with(|| CycScalar::zero(ell));
                *e += c;
            }
            row.retain(|_, c| !c.is_zero());
            row
        };

        let mut ech = Echelon::new();
        let mut ideal: Vec<WordPoly> = Vec::new();
        let push = |p: WordPoly, ech: &mut Echelon, ideal: &mut Vec<WordPoly>| {
            if ech.insert(&to_row(&p)) {
                ideal.push(p);
            }
        };
        for i in 0..zeta.rank() {
            if zeta.0[i] == 0 {
                continue;
            }
            let mut sub = zeta.clone();
            sub.0[i] -= 1;
            let below = self.slice(side, &sub)?;
            for p in &below.ideal {
                let q: WordPoly = p
                    .iter()
                    .map(|(w, c)| {
                        let mut v = vec![i as u8 + 1];
                        v.extend_from_slice(w);
                        (v, c.clone())
                    })
                    .collect();
                push(q, &mut ech, &mut ideal);
            }
        }
        for (deg, rel) in self.serre_relations(side) {
            let rest = zeta - &deg;
            if !rest.is_nonneg() {
                continue;
            }
            for v in words_of_degree(&rest) {
                let q: WordPoly = rel
                    .iter()
                    .map(|(w, c)| {
                        let mut x = w.clone();
                        x.extend_from_slice(&v);
                        (x, c.clone())
                    })
                    .collect();
                push(q, &mut ech, &mut ideal);
            }
        }

        let monos = self.exponents_of_degree(zeta);
        let pivots: std::collections::BTreeSet<usize> = ech.pivots().copied().collect();
        let free: Vec<usize> = (0..words.len()).filter(|k| !pivots.contains(k)).collect();
        if free.len() != monos.len() {
            return Err(QGroupError::DimensionMismatch(format!(
                "{zeta}: quotient dimension {} but {} PBW monomials",
                free.len(),
                monos.len()
            )));
        }
        let m = monos.len();
        // columns: reduced PBW monomials restricted to free columns
        let mut a = vec![vec![CycScalar::zero(ell); m]; m];
        for (col, e) in monos.iter().enumerate() {
            let red = ech.reduce(&to_row(&self.mono_words(side, e)));
            for (row, &fc) in free.iter().enumerate() {
                if let Some(c) = red.get(&fc) {
                    a[row][col] = c.clone();
                }
            }
        }
        let ainv = invert(&a, ell).ok_or_else(|| {
            QGroupError::DimensionMismatch(format!("{zeta}: PBW monomials dependent"))
        })?;
        let mut coords = Vec::with_capacity(words.len());
        for k in 0..words.len() {
            let mut unit = SparseRow::new();
            unit.insert(k, CycScalar::one(ell));
            let red = ech.reduce(&unit);
            let mut c = Vec::new();
            for (mi, arow) in ainv.iter().enumerate() {
                let mut acc = CycScalar::zero(ell);
                for (row, &fc) in free.iter().enumerate() {
                    if let Some(x) = red.get(&fc) {
                        acc += &(&arow[row] * x);
                    }
                }
                if !acc.is_zero() {
                    c.push((mi, acc));
                }
            }
            coords.push(c);
        }
        Ok(Slice { words, index, monos, coords, ideal })
    }

    /// PBW coordinates of a free word on one side.
    pub(crate) fn word_coords(
        &self,
        side: Side,
        w: &[u8],
    ) -> Result<Vec<(Vec<u32>, CycScalar)>, QGroupError> {
        let mut deg = RootVector::zero(self.rank());
        for &i in w {
            deg.0[i as usize - 1] += 1;
        }
        let s = self.slice(side, &deg)?;
        let k = s.index[w];
        Ok(s.coords[k].iter().map(|(m, c)| (s.monos[*m].clone(), c.clone())).collect())
    }

    /// Rank of the degree-`ζ` reduction versus the PBW count, for every `ζ` of height
    /// `1..=max_height`. Returns the first mismatch, if any.
    pub fn check_pbw_dimension(&self, max_height: u32) -> Result<usize, QGroupError> {
        let mut checked = 0;
        for h in 1..=max_height as i64 {
            for zeta in RootVector::of_height(self.rank(), h) {
                for side in [Side::Plus, Side::Minus] {
                    let s = self.slice(side, &zeta)?;
                    let quotient = s.words.len() - s.ideal.len();
                    if quotient != s.monos.len() {
                        return Err(QGroupError::DimensionMismatch(zeta.to_string()));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}
