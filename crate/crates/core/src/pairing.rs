//! The Hopf pairing `U^{≤0} × U^{≥0} → K`, graded Gram matrices and dual bases.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{determinant, invert};
use crate::ncalg::{GenKind, GenSymbol, RootVector};
use crate::qgroup::{AlgebraElement, PBWMonomial, QGroup, QGroupError, QGroupParams, Side};
use crate::scalars::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("left argument must lie in U^{{<=0}} (f and w' letters only)")]
    LeftNotInLowerBorel,
    #[error("right argument must lie in U^{{>=0}} (e and w letters only)")]
    RightNotInUpperBorel,
    #[error("Gram matrix at degree {0} is singular")]
    Singular(RootVector),
    #[error("character matrix of the group part is singular")]
    SingularGroup,
    #[error(transparent)]
    QGroup(#[from] QGroupError),
}

/// Memoized evaluator for one parameter set.
pub struct Pairer<'a> {
    qg: &'a QGroup,
    inv_sr: CycScalar,
    left_memo: HashMap<(Vec<GenSymbol>, Vec<GenSymbol>), CycScalar>,
    right_memo: HashMap<(Vec<GenSymbol>, Vec<GenSymbol>), CycScalar>,
}

fn letter_counts(w: &[GenSymbol], kind: GenKind, rank: usize) -> Vec<u32> {
    let mut c = vec![0; rank];
    for g in w {
        if g.kind == kind {
            c[g.index - 1] += 1;
        }
    }
    c
}

impl<'a> Pairer<'a> {
    pub fn new(qg: &'a QGroup) -> Self {
        let inv_sr = (&qg.params.s() - &qg.params.r()).inv().expect("r != s");
        Pairer { qg, inv_sr, left_memo: HashMap::new(), right_memo: HashMap::new() }
    }

    /// `(ω'_i | ω_λ)` as a `θ`-exponent, with `λ` read off the letters of `a`
    /// (`e_j ↦ ω_j`).
    fn wp_against(&self, i: usize, a: &[GenSymbol]) -> i64 {
        let mut k = 0;
        for g in a {
            match g.kind {
                GenKind::E => k += self.qg.params.pair_exp(i, g.index),
                GenKind::W => k += g.power as i64 * self.qg.params.pair_exp(i, g.index),
                _ => {}
            }
        }
        k
    }

    /// `(ω'_μ | ω_i)` as a `θ`-exponent, with `μ` read off `a` (`f_j ↦ ω'_j`).
    fn against_w(&self, a: &[GenSymbol], i: usize) -> i64 {
        let mut k = 0;
        for g in a {
            match g.kind {
                GenKind::F => k += self.qg.params.pair_exp(g.index, i),
                GenKind::Wp => k += g.power as i64 * self.qg.params.pair_exp(g.index, i),
                _ => {}
            }
        }
        k
    }

    fn degrees_match(&self, l: &[GenSymbol], r: &[GenSymbol]) -> bool {
        let rank = self.qg.rank();
        letter_counts(l, GenKind::F, rank) == letter_counts(r, GenKind::E, rank)
    }

    /// Splits the left word by `(b'c'|b) = Σ (b'|b₍₁₎)(c'|b₍₂₎)`.
    pub fn pair_words(&mut self, l: &[GenSymbol], r: &[GenSymbol]) -> CycScalar {
        let ell = self.qg.ell();
        if !self.degrees_match(l, r) {
            return CycScalar::zero(ell);
        }
        if l.is_empty() {
            return CycScalar::one(ell);
        }
        let key = (l.to_vec(), r.to_vec());
        if let Some(v) = self.left_memo.get(&key) {
            return v.clone();
        }
        let (head, rest) = (l[0], &l[1..]);
        let mut acc = CycScalar::zero(ell);
        match head.kind {
            GenKind::F => {
                for p in 0..r.len() {
                    if r[p].kind == GenKind::E && r[p].index == head.index {
                        let k = self.wp_against(head.index, &r[..p]);
                        let mut sub = r[..p].to_vec();
                        sub.extend_from_slice(&r[p + 1..]);
                        let inner = self.pair_words(rest, &sub);
                        acc += &(&(&self.qg.theta(k) * &self.inv_sr) * &inner);
                    }
                }
            }
            GenKind::Wp => {
                let k = head.power as i64 * self.wp_against(head.index, r);
                acc = &self.qg.theta(k) * &self.pair_words(rest, r);
            }
            _ => unreachable!("left word checked to lie in U^<=0"),
        }
        self.left_memo.insert(key, acc.clone());
        acc
    }

    /// Splits the right word by `(b'|bc) = Σ (b'₍₂₎|b)(b'₍₁₎|c)`.
    pub fn pair_words_right(&mut self, l: &[GenSymbol], r: &[GenSymbol]) -> CycScalar {
        let ell = self.qg.ell();
        if !self.degrees_match(l, r) {
            return CycScalar::zero(ell);
        }
        if r.is_empty() {
            return CycScalar::one(ell);
        }
        let key = (l.to_vec(), r.to_vec());
        if let Some(v) = self.right_memo.get(&key) {
            return v.clone();
        }
        let (head, rest) = (r[0], &r[1..]);
        let mut acc = CycScalar::zero(ell);
        match head.kind {
            GenKind::E => {
                for p in 0..l.len() {
                    if l[p].kind == GenKind::F && l[p].index == head.index {
                        let k = self.against_w(&l[..p], head.index);
                        let mut sub = l[..p].to_vec();
                        sub.extend_from_slice(&l[p + 1..]);
                        let inner = self.pair_words_right(&sub, rest);
                        acc += &(&(&self.qg.theta(k) * &self.inv_sr) * &inner);
                    }
                }
            }
            GenKind::W => {
                let k = head.power as i64 * self.against_w(l, head.index);
                acc = &self.qg.theta(k) * &self.pair_words_right(l, rest);
            }
            _ => unreachable!("right word checked to lie in U^>=0"),
        }
        self.right_memo.insert(key, acc.clone());
        acc
    }

    fn expand(&self, m: &PBWMonomial) -> Vec<(Vec<GenSymbol>, CycScalar)> {
        self.qg.monomial_letters(m)
    }

    fn pair_monos(&mut self, a: &PBWMonomial, b: &PBWMonomial, right_route: bool) -> CycScalar {
        let mut acc = CycScalar::zero(self.qg.ell());
        if a.degree(&self.qg.params) != b.degree(&self.qg.params).scaled(-1) {
            return acc;
        }
        for (l, cl) in self.expand(a) {
            for (r, cr) in self.expand(b) {
                let v = if right_route {
                    self.pair_words_right(&l, &r)
                } else {
                    self.pair_words(&l, &r)
                };
                acc += &(&(&cl * &cr) * &v);
            }
        }
        acc
    }

    fn check_args(y: &AlgebraElement, x: &AlgebraElement) -> Result<(), PairingError> {
        for m in y.terms.keys() {
            if m.has_e() || m.w.iter().any(|&g| g != 0) {
                return Err(PairingError::LeftNotInLowerBorel);
            }
        }
        for m in x.terms.keys() {
            if m.has_f() || m.wp.iter().any(|&g| g != 0) {
                return Err(PairingError::RightNotInUpperBorel);
            }
        }
        Ok(())
    }

    pub fn pair(&mut self, y: &AlgebraElement, x: &AlgebraElement) -> Result<CycScalar, PairingError> {
        self.pair_route(y, x, false)
    }

    /// Same value computed through the other recursion rule.
    pub fn pair_right_route(
        &mut self,
        y: &AlgebraElement,
        x: &AlgebraElement,
    ) -> Result<CycScalar, PairingError> {
        self.pair_route(y, x, true)
    }

    fn pair_route(
        &mut self,
        y: &AlgebraElement,
        x: &AlgebraElement,
        right: bool,
    ) -> Result<CycScalar, PairingError> {
        Self::check_args(y, x)?;
        let mut acc = CycScalar::zero(self.qg.ell());
        for (a, ca) in &y.terms {
            for (b, cb) in &x.terms {
                let v = self.pair_monos(a, b, right);
                acc += &(&(ca * cb) * &v);
            }
        }
        Ok(acc)
    }
}

/// `(y | x)` for `y ∈ U^{≤0}`, `x ∈ U^{≥0}`.
pub fn pair(qg: &QGroup, y: &AlgebraElement, x: &AlgebraElement) -> Result<CycScalar, PairingError> {
    Pairer::new(qg).pair(y, x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub degree: RootVector,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(skip)]
    pub row_monos: Vec<PBWMonomial>,
    #[serde(skip)]
    pub col_monos: Vec<PBWMonomial>,
    #[serde(serialize_with = "ser_entries")]
    pub entries: Vec<Vec<CycScalar>>,
}

fn ser_entries<S: serde::Serializer>(e: &[Vec<CycScalar>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = e.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    v.serialize(s)
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn determinant(&self, ell: u32) -> CycScalar {
        determinant(&self.entries, ell)
    }

    pub fn is_invertible(&self, ell: u32) -> bool {
        !self.determinant(ell).is_zero()
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        for (name, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{name}: [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of `(v | u)` over the mirrored truncated bases of `Ū⁻_{−ζ}` and `Ū⁺_ζ`.
pub fn gram_plus(qg: &QGroup, zeta: &RootVector) -> Result<GramMatrix, PairingError> {
    let plus = qg.pbw_basis_plus(zeta);
    let minus = qg.pbw_basis_minus(zeta);
    let mut p = Pairer::new(qg);
    let one = qg.one_scalar();
    let mut entries = Vec::with_capacity(minus.len());
    for a in &minus {
        let ya = AlgebraElement::monomial(a.clone(), one.clone());
        let mut row = Vec::with_capacity(plus.len());
        for b in &plus {
            row.push(p.pair(&ya, &AlgebraElement::monomial(b.clone(), one.clone()))?);
        }
        entries.push(row);
    }
    Ok(GramMatrix {
        degree: zeta.clone(),
        rows: minus.iter().map(|m| m.display(&qg.params)).collect(),
        cols: plus.iter().map(|m| m.display(&qg.params)).collect(),
        row_monos: minus,
        col_monos: plus,
        entries,
    })
}

/// Elements `v_k` of `Ū⁻_{−ζ}` with `(v_k | u_j) = δ_{kj}` against `pbw_basis_plus(ζ)`.
pub fn dual_basis_plus(qg: &QGroup, zeta: &RootVector) -> Result<Vec<AlgebraElement>, PairingError> {
    let g = gram_plus(qg, zeta)?;
    let c = invert(&g.entries, qg.ell()).ok_or_else(|| PairingError::Singular(zeta.clone()))?;
    let mut out = Vec::with_capacity(c.len());
    for row in &c {
        let mut v = qg.zero();
        for (m, x) in g.row_monos.iter().zip(row) {
            v.add_term(m.clone(), x.clone());
        }
        out.push(v);
    }
    Ok(out)
}

/// Exponent vectors `a ∈ [0, ℓ)^{n−1}` in lex order.
pub fn group_exponents(rank: usize, ell: u32) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for p in &out {
            for a in 0..ell as i64 {
                let mut q: Vec<i64> = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `w ↦ w*` with `(w'* | w) = δ`, for `w = ω^a` over `a ∈ [0, ℓ)^{n−1}`.
pub fn group_dual_basis(qg: &QGroup) -> Result<Vec<(PBWMonomial, AlgebraElement)>, PairingError> {
    let rank = qg.rank();
    let exps = group_exponents(rank, qg.ell());
    let zero = vec![0; rank];
    let mut m = Vec::with_capacity(exps.len());
    for b in &exps {
        let mut row = Vec::with_capacity(exps.len());
        for a in &exps {
            let mut k = 0;
            for i in 0..rank {
                for j in 0..rank {
                    k += b[i] * a[j] * qg.params.pair_exp(i + 1, j + 1);
                }
            }
            row.push(qg.theta(k));
        }
        m.push(row);
    }
    let d = invert(&m, qg.ell()).ok_or(PairingError::SingularGroup)?;
    let mut out = Vec::with_capacity(exps.len());
    for (ai, a) in exps.iter().enumerate() {
        let mut dual = qg.zero();
        for (bi, b) in exps.iter().enumerate() {
            dual.add_term(qg.group_mono(&zero, b), d[ai][bi].clone());
        }
        out.push((qg.group_mono(a, &zero), dual));
    }
    Ok(out)
}

/// `gcd(y^{n−1} − y^{n−2}z + ⋯ + (−1)^{n−1}z^{n−1}, ℓ) = 1`.
pub fn check_relprime(n: usize, y: u64, z: u64, ell: u64) -> bool {
    let mut form: i128 = 0;
    let k = n as u32 - 1;
    for i in 0..=k {
        let term = (y as i128).pow(k - i) * (z as i128).pow(i);
        form += if i % 2 == 0 { term } else { -term };
    }
    form.abs().gcd(&(ell as i128)) == 1
}

#[derive(Debug, Clone, Serialize)]
pub struct RadicalEntry {
    pub generator: String,
    pub tested: usize,
    pub passed: bool,
}

/// Pairs each generator of the ideal `I_n` against opposite-side monomials of
/// matching degree (group part `1` or a single `ω'_i` / `ω_i`).
pub fn radical_check(params: &QGroupParams) -> Result<Vec<RadicalEntry>, PairingError> {
    let up = QGroup::get(&params.clone().with_restricted(false))?;
    let qg = up.as_ref();
    let ell = qg.ell();
    let rank = qg.rank();
    let mut p = Pairer::new(qg);
    let one = qg.one();
    let mut out = Vec::new();
    let zero = vec![0i64; rank];
    let mut singles = vec![zero.clone()];
    for i in 0..rank {
        let mut u = zero.clone();
        u[i] = 1;
        singles.push(u);
    }
    for &(i, j) in qg.roots().to_vec().iter() {
        let el = qg.pow(&qg.build_e(i, j)?, ell)?;
        let fl = qg.pow(&qg.build_f(i, j)?, ell)?;
        let mut d = vec![0i64; rank];
        for c in j..=i {
            d[c - 1] = ell as i64;
        }
        let zeta = RootVector(d);
        let mut tested = 0;
        let mut ok = true;
        for exps in qg.exponents_of_degree(&zeta) {
            for g in &singles {
                let mut ym = qg.root_monomial(Side::Minus, &exps);
                ym.wp = g.clone();
                let y = AlgebraElement::monomial(ym, qg.one_scalar());
                ok &= p.pair(&y, &el)?.is_zero();
                let mut xm = qg.root_monomial(Side::Plus, &exps);
                xm.w = g.clone();
                let x = AlgebraElement::monomial(xm, qg.one_scalar());
                ok &= p.pair(&fl, &x)?.is_zero();
                tested += 2;
            }
        }
        out.push(RadicalEntry { generator: format!("E({i},{j})^{ell}, F({i},{j})^{ell}"), tested, passed: ok });
    }
    for i in 1..=rank {
        let mut u = zero.clone();
        u[i - 1] = ell as i64;
        let wl = qg.grouplike(&u, &zero).sub(&one);
        let wpl = qg.grouplike(&zero, &u).sub(&one);
        let mut tested = 0;
        let mut ok = true;
        for a in group_exponents(rank, ell) {
            let y = qg.grouplike(&zero, &a);
            let x = qg.grouplike(&a, &zero);
            ok &= p.pair(&y, &wl)?.is_zero();
            ok &= p.pair(&wpl, &x)?.is_zero();
            tested += 2;
        }
        out.push(RadicalEntry {
            generator: format!("w{i}^{ell} - 1, wp{i}^{ell} - 1"),
            tested,
            passed: ok,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qg(n: usize, ell: u32, y: u32, z: u32) -> std::sync::Arc<QGroup> {
        QGroup::get(&QGroupParams::new(n, ell, y, z).unwrap()).unwrap()
    }

    #[test]
    fn generator_values() {
        let g = qg(2, 2, 0, 1);
        let v = pair(&g, &g.f(1), &g.e(1)).unwrap();
        assert_eq!(v, CycScalar::from_rational(2, "-1/2".parse().unwrap()));
        assert!(pair(&g, &g.one(), &g.e(1)).unwrap().is_zero());
        let g3 = qg(2, 3, 1, 2);
        let v = pair(&g3, &g3.wp(1), &g3.w(1)).unwrap();
        assert_eq!(v, &g3.params.r() * &g3.params.s().inv().unwrap());
    }

    #[test]
    fn routes_agree() {
        let g = qg(3, 3, 1, 2);
        let mut p = Pairer::new(&g);
        for zeta in [RootVector(vec![1, 1]), RootVector(vec![2, 1]), RootVector(vec![1, 2])] {
            let minus = g.exponents_of_degree(&zeta);
            for a in &minus {
                for b in &minus {
                    let y = AlgebraElement::monomial(g.root_monomial(Side::Minus, a), g.one_scalar());
                    let mut xm = g.root_monomial(Side::Plus, b);
                    xm.w = vec![1, 0];
                    let x = AlgebraElement::monomial(xm, g.one_scalar());
                    assert_eq!(p.pair(&y, &x).unwrap(), p.pair_right_route(&y, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_wrong_sides() {
        let g = qg(2, 2, 0, 1);
        assert_eq!(pair(&g, &g.e(1), &g.e(1)), Err(PairingError::LeftNotInLowerBorel));
        assert_eq!(pair(&g, &g.f(1), &g.f(1)), Err(PairingError::RightNotInUpperBorel));
    }

    #[test]
    fn relprime_examples() {
        assert!(check_relprime(2, 0, 1, 2));
        assert!(!check_relprime(3, 1, 2, 3));
        assert!(check_relprime(2, 1, 2, 3));
    }

    #[test]
    fn group_duals_sl2() {
        let g = qg(2, 2, 0, 1);
        let d = group_dual_basis(&g).unwrap();
        let half = CycScalar::from_rational(2, "1/2".parse().unwrap());
        let expect0 = g.one().add(&g.wp(1)).scale(&half);
        assert_eq!(d[0].1, expect0);
    }

    #[test]
    fn dual_basis_sl2() {
        let g = qg(2, 2, 0, 1);
        let v = dual_basis_plus(&g, &RootVector(vec![1])).unwrap();
        assert_eq!(v[0], g.f(1).scale(&CycScalar::from_int(2, -2)));
    }
}
