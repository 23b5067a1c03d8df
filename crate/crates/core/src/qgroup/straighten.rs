//! Raw `F·G·E` words and the commutation rules that bring products back to that shape.

use std::collections::HashMap;
use std::sync::Arc;

use super::{AlgebraElement, PBWMonomial, QGroup, QGroupError, Side};
use crate::ncalg::{GenKind, GenSymbol, RootVector};
use crate::scalars::CycScalar;

/// `c · F·G·E` with `F` an `f`-word, `G` group exponents `(w.., wp..)`, `E` an `e`-word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerm {
    pub f: Vec<u8>,
    pub g: Vec<i64>,
    pub e: Vec<u8>,
    pub c: CycScalar,
}

type RawKey = (Vec<u8>, Vec<i64>, Vec<u8>);

impl RawTerm {
    pub fn unit(qg: &QGroup) -> Self {
        RawTerm {
            f: Vec::new(),
            g: vec![0; 2 * qg.rank()],
            e: Vec::new(),
            c: qg.one_scalar(),
        }
    }
}

fn word_deg(rank: usize, w: &[u8], sign: i64) -> RootVector {
    let mut d = vec![0i64; rank];
    for &i in w {
        d[i as usize - 1] += sign;
    }
    RootVector(d)
}

impl QGroup {
    fn collect_raw(&self, acc: HashMap<RawKey, CycScalar>) -> Vec<RawTerm> {
        let mut v: Vec<RawTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((f, g, e), c)| RawTerm { f, g, e, c })
            .collect();
        v.sort_by(|a, b| (&a.f, &a.g, &a.e).cmp(&(&b.f, &b.g, &b.e)));
        v
    }

    fn accumulate(&self, acc: &mut HashMap<RawKey, CycScalar>, mut key: RawKey, c: CycScalar) {
        if c.is_zero() || self.vanishes(&key) {
            return;
        }
        if self.params.restricted {
            let l = self.ell() as i64;
            for x in key.1.iter_mut() {
                *x = x.rem_euclid(l);
            }
        }
        let e = acc.entry(key).or_insert_with(|| CycScalar::zero(self.ell()));
        *e += &c;
    }

    /// In the restricted quotient, a word whose degree leaves the support of `ū^±`
    /// is zero.
    fn vanishes(&self, key: &RawKey) -> bool {
        if !self.params.restricted {
            return false;
        }
        let cap = self.support_caps();
        let over = |w: &[u8]| {
            let mut d = vec![0u32; cap.len()];
            for &i in w {
                d[i as usize - 1] += 1;
            }
            d.iter().zip(&cap).any(|(a, b)| a > b)
        };
        over(&key.0) || over(&key.2)
    }

    /// Largest `α_k`-coefficient occurring in `ū^+`: `(ℓ−1)·#{roots containing α_k}`.
    fn support_caps(&self) -> Vec<u32> {
        let mut cap = vec![0u32; self.rank()];
        for &(i, j) in &self.roots {
            for c in j..=i {
                cap[c - 1] += self.ell() - 1;
            }
        }
        cap
    }

    /// `E·F` rewritten as a sum of `F'·G'·E'`.
    pub(crate) fn ef(&self, e: &[u8], f: &[u8]) -> Arc<Vec<RawTerm>> {
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.ef_cache.lock().get(&key) {
            return v.clone();
        }
        let rank = self.rank();
        let ell = self.ell();
        let zero_g = vec![0i64; 2 * rank];
        let mut acc: HashMap<RawKey, CycScalar> = HashMap::new();
        if e.is_empty() || f.is_empty() {
            acc.insert((f.to_vec(), zero_g, e.to_vec()), CycScalar::one(ell));
        } else if e.len() == 1 {
            // e_a f_b F0 = f_b (e_a F0) + δ_ab (ω_a − ω'_a) F0 / (r − s)
            let a = e[0];
            let (b, f0) = (f[0], &f[1..]);
            for t in self.ef(e, f0).iter() {
                let mut nf = vec![b];
                nf.extend_from_slice(&t.f);
                self.accumulate(&mut acc, (nf, t.g.clone(), t.e.clone()), t.c.clone());
            }
            if a == b {
                let inv = (&self.params.r() - &self.params.s()).inv().expect("r != s");
                let d = word_deg(rank, f0, -1);
                let mut gw = zero_g.clone();
                gw[a as usize - 1] = 1;
                let mut gp = zero_g.clone();
                gp[rank + a as usize - 1] = 1;
                let cw = &self.theta(self.params.char_exp(&gw, &d)) * &inv;
                let cp = -&(&self.theta(self.params.char_exp(&gp, &d)) * &inv);
                self.accumulate(&mut acc, (f0.to_vec(), gw, Vec::new()), cw);
                self.accumulate(&mut acc, (f0.to_vec(), gp, Vec::new()), cp);
            }
        } else {
            // (E0 e_a) F = E0 (e_a F)
            let (e0, a) = (&e[..e.len() - 1], &e[e.len() - 1..]);
            for t in self.ef(a, f).iter() {
                for u in self.ef(e0, &t.f).iter() {
                    // (F'' G'' E'') G' E' = β̂(G')⁻¹ F'' (G''+G') E'' E'
                    let d = word_deg(rank, &u.e, 1);
                    let k = -self.params.char_exp(&t.g, &d);
                    let g: Vec<i64> = u.g.iter().zip(&t.g).map(|(x, y)| x + y).collect();
                    let mut ne = u.e.clone();
                    ne.extend_from_slice(&t.e);
                    let c = &(&u.c * &t.c) * &self.theta(k);
                    self.accumulate(&mut acc, (u.f.clone(), g, ne), c);
                }
            }
        }
        let v = Arc::new(self.collect_raw(acc));
        self.ef_cache.lock().insert(key, v.clone());
        v
    }

    pub(crate) fn raw_mul(&self, a: &[RawTerm], b: &[RawTerm]) -> Vec<RawTerm> {
        let rank = self.rank();
        let mut acc: HashMap<RawKey, CycScalar> = HashMap::new();
        for x in a {
            for y in b {
                let xy = &x.c * &y.c;
                for t in self.ef(&x.e, &y.f).iter() {
                    // F1 G1 F' G' E' G2 E2
                    let k1 = self.params.char_exp(&x.g, &word_deg(rank, &t.f, -1));
                    let k2 = -self.params.char_exp(&y.g, &word_deg(rank, &t.e, 1));
                    let mut f = x.f.clone();
                    f.extend_from_slice(&t.f);
                    let mut e = t.e.clone();
                    e.extend_from_slice(&y.e);
                    let g: Vec<i64> = (0..2 * rank).map(|i| x.g[i] + t.g[i] + y.g[i]).collect();
                    let c = &(&xy * &t.c) * &self.theta(k1 + k2);
                    self.accumulate(&mut acc, (f, g, e), c);
                }
            }
        }
        self.collect_raw(acc)
    }

    pub(crate) fn letter_raw(&self, g: &GenSymbol) -> RawTerm {
        let mut t = RawTerm::unit(self);
        let i = g.index;
        match g.kind {
            GenKind::E => t.e.push(i as u8),
            GenKind::F => t.f.push(i as u8),
            GenKind::W => t.g[i - 1] = g.power as i64,
            GenKind::Wp => t.g[self.rank() + i - 1] = g.power as i64,
        }
        t
    }

    pub(crate) fn raw_mul_letter(&self, acc: &[RawTerm], g: &GenSymbol) -> Vec<RawTerm> {
        self.raw_mul(acc, &[self.letter_raw(g)])
    }

    /// Raw expansion of a PBW monomial.
    pub(crate) fn mono_raw(&self, m: &PBWMonomial) -> Vec<RawTerm> {
        let fw = self.mono_words(Side::Minus, &m.f);
        let ew = self.mono_words(Side::Plus, &m.e);
        let g = m.group();
        let mut out = Vec::with_capacity(fw.len() * ew.len());
        for (f, cf) in &fw {
            for (e, ce) in &ew {
                out.push(RawTerm { f: f.clone(), g: g.clone(), e: e.clone(), c: cf * ce });
            }
        }
        out
    }

    pub(crate) fn check_heights(&self, terms: &[RawTerm]) -> Result<(), QGroupError> {
        if self.params.restricted {
            return Ok(());
        }
        let bound = self.params.height_bound;
        for t in terms {
            let h = t.e.len().max(t.f.len());
            if h as u32 > bound {
                return Err(QGroupError::HeightExceeded { height: h, bound });
            }
        }
        Ok(())
    }

    /// PBW normal form of raw terms; truncates in the restricted case.
    pub(crate) fn raw_to_pbw(&self, terms: &[RawTerm]) -> Result<AlgebraElement, QGroupError> {
        let mut out = self.zero();
        let ell = self.ell();
        let restricted = self.params.restricted;
        let rank = self.rank();
        for t in terms {
            let fc = self.word_coords(Side::Minus, &t.f)?;
            let ec = self.word_coords(Side::Plus, &t.e)?;
            for (fe, x) in &fc {
                if restricted && fe.iter().any(|&a| a >= ell) {
                    continue;
                }
                for (ee, y) in &ec {
                    if restricted && ee.iter().any(|&a| a >= ell) {
                        continue;
                    }
                    let mut m = PBWMonomial {
                        f: fe.clone(),
                        w: t.g[..rank].to_vec(),
                        wp: t.g[rank..].to_vec(),
                        e: ee.clone(),
                    };
                    self.reduce_group(&mut m);
                    out.add_term(m, &(&t.c * x) * y);
                }
            }
        }
        Ok(out)
    }
}
