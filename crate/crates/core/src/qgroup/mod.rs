//! The two-parameter quantum group `U_{r,s}(sl_n)` with `r = θ^y`, `s = θ^z`, and
//! its restricted quotient.
//!
//! Elements are kept in the PBW normal form `F·Ω·E`: an ordered product of minus
//! root vectors, a group-like monomial, and an ordered product of plus root vectors.

mod hopf;
mod pbw;
mod straighten;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ncalg::{GenKind, NCPoly, RootVector, Word};
use crate::scalars::{CycScalar, LaurentScalar};

pub use pbw::Side;
pub(crate) use pbw::Slice;
pub use straighten::RawTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QGroupError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("height bound {bound} exceeded by degree of height {height}")]
    HeightExceeded { height: usize, bound: u32 },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("root vector index ({0},{1}) violates 1 <= j <= i < n")]
    BadRootIndex(usize, usize),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element does not lie in the required subalgebra: {0}")]
    WrongSubalgebra(String),
    #[error("coefficient depends on t where a constant is required")]
    LaurentCoefficient,
    #[error("internal PBW dimension mismatch at degree {0}")]
    DimensionMismatch(String),
}

/// Parameters `(n, ℓ, y, z)` with `r = θ^y`, `s = θ^z` for a primitive `ℓ`-th root `θ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QGroupParams {
    pub n: usize,
    pub ell: u32,
    pub y: u32,
    pub z: u32,
    pub restricted: bool,
    pub height_bound: u32,
}

impl QGroupParams {
    /// Unrestricted parameters with the default height bound `(ℓ−1)n(n−1)/2 + 2`.
    pub fn new(n: usize, ell: u32, y: u32, z: u32) -> Result<Self, QGroupError> {
        let p = QGroupParams {
            n,
            ell,
            y,
            z,
            restricted: false,
            height_bound: Self::default_height_bound(n, ell),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn restricted(n: usize, ell: u32, y: u32, z: u32) -> Result<Self, QGroupError> {
        Ok(Self::new(n, ell, y, z)?.with_restricted(true))
    }

    pub fn with_restricted(mut self, restricted: bool) -> Self {
        self.restricted = restricted;
        self
    }

    pub fn with_height_bound(mut self, h: u32) -> Self {
        self.height_bound = h;
        self
    }

    pub fn default_height_bound(n: usize, ell: u32) -> u32 {
        (ell.saturating_sub(1)) * (n * (n.saturating_sub(1)) / 2) as u32 + 2
    }

    pub fn validate(&self) -> Result<(), QGroupError> {
        let bad = |m: String| Err(QGroupError::InvalidParams(m));
        if self.n < 2 {
            return bad(format!("n = {} must be at least 2", self.n));
        }
        if self.ell < 2 {
            return bad(format!("ell = {} must be at least 2", self.ell));
        }
        if self.height_bound == 0 {
            return bad("height_bound must be positive".into());
        }
        let ell = self.ell as u64;
        let (y, z) = (self.y as u64 % ell, self.z as u64 % ell);
        if y == z {
            return bad(format!("r = θ^{} equals s = θ^{}", self.y, self.z));
        }
        let ord = |k: u64| ell / ell.gcd(&k);
        if ord(y).lcm(&ord(z)) != ell {
            return bad(format!(
                "lcm of the orders of r and s is {}, not ell = {}",
                ord(y).lcm(&ord(z)),
                ell
            ));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Positive roots `(i, j)`, `1 <= j <= i < n`, in lexicographic order.
    pub fn roots(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 1..self.n {
            for j in 1..=i {
                v.push((i, j));
            }
        }
        v
    }

    pub fn r(&self) -> CycScalar {
        CycScalar::theta_power(self.ell, self.y as i64)
    }

    pub fn s(&self) -> CycScalar {
        CycScalar::theta_power(self.ell, self.z as i64)
    }

    /// `θ`-exponent of `β̂(ω_j)` (`primed = false`) or `β̂(ω'_j)` (`primed = true`).
    pub fn hat_exp(&self, beta: &RootVector, j: usize, primed: bool) -> i64 {
        let (a, b) = (beta.eps_pairing(j), beta.eps_pairing(j + 1));
        let (y, z) = (self.y as i64, self.z as i64);
        if primed {
            y * b + z * a
        } else {
            y * a + z * b
        }
    }

    /// `θ`-exponent of `β̂(G)` for a group-like exponent vector `G = (w_1.., wp_1..)`.
    pub fn char_exp(&self, g: &[i64], beta: &RootVector) -> i64 {
        let rank = self.rank();
        let mut k = 0;
        for j in 1..=rank {
            let (a, b) = (g[j - 1], g[rank + j - 1]);
            if a != 0 {
                k += a * self.hat_exp(beta, j, false);
            }
            if b != 0 {
                k += b * self.hat_exp(beta, j, true);
            }
        }
        k.rem_euclid(self.ell as i64)
    }

    /// `θ`-exponent of the generator pairing `(ω'_i | ω_j)`.
    pub fn pair_exp(&self, i: usize, j: usize) -> i64 {
        let ai = RootVector::simple(self.rank(), i);
        let (y, z) = (self.y as i64, self.z as i64);
        (y * ai.eps_pairing(j) + z * ai.eps_pairing(j + 1)).rem_euclid(self.ell as i64)
    }
}

impl fmt::Display for QGroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} ell={} y={} z={}{}",
            self.n,
            self.ell,
            self.y,
            self.z,
            if self.restricted { " restricted" } else { "" }
        )
    }
}

/// PBW monomial `Π 𝓕^{f} · Π ω^{w} ω'^{wp} · Π 𝓔^{e}`, root exponents in lex root order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PBWMonomial {
    pub f: Vec<u32>,
    pub w: Vec<i64>,
    pub wp: Vec<i64>,
    pub e: Vec<u32>,
}

impl PBWMonomial {
    pub fn one(params: &QGroupParams) -> Self {
        let nr = params.roots().len();
        let rank = params.rank();
        PBWMonomial {
            f: vec![0; nr],
            w: vec![0; rank],
            wp: vec![0; rank],
            e: vec![0; nr],
        }
    }

    pub fn is_one(&self) -> bool {
        self.f.iter().all(|&x| x == 0)
            && self.e.iter().all(|&x| x == 0)
            && self.w.iter().all(|&x| x == 0)
            && self.wp.iter().all(|&x| x == 0)
    }

    pub fn group(&self) -> Vec<i64> {
        let mut g = self.w.clone();
        g.extend_from_slice(&self.wp);
        g
    }

    pub fn has_f(&self) -> bool {
        self.f.iter().any(|&x| x > 0)
    }

    pub fn has_e(&self) -> bool {
        self.e.iter().any(|&x| x > 0)
    }

    pub fn is_grouplike(&self) -> bool {
        !self.has_f() && !self.has_e()
    }

    /// Root-lattice degree.
    pub fn degree(&self, params: &QGroupParams) -> RootVector {
        let mut d = vec![0i64; params.rank()];
        for (k, &(i, j)) in params.roots().iter().enumerate() {
            for c in j..=i {
                d[c - 1] += self.e[k] as i64 - self.f[k] as i64;
            }
        }
        RootVector(d)
    }

    /// Text form, e.g. `F(2,1)*f1^2*w1*wp2^-1*e2`.
    pub fn display(&self, params: &QGroupParams) -> String {
        let roots = params.roots();
        let mut parts = Vec::new();
        let root_name = |lower: bool, (i, j): (usize, usize)| {
            if i == j {
                format!("{}{}", if lower { "f" } else { "e" }, i)
            } else {
                format!("{}({},{})", if lower { "F" } else { "E" }, i, j)
            }
        };
        let pow = |s: String, k: i64| if k == 1 { s } else { format!("{s}^{k}") };
        for (k, &x) in self.f.iter().enumerate() {
            if x > 0 {
                parts.push(pow(root_name(true, roots[k]), x as i64));
            }
        }
        for (i, &x) in self.w.iter().enumerate() {
            if x != 0 {
                parts.push(pow(format!("w{}", i + 1), x));
            }
        }
        for (i, &x) in self.wp.iter().enumerate() {
            if x != 0 {
                parts.push(pow(format!("wp{}", i + 1), x));
            }
        }
        for (k, &x) in self.e.iter().enumerate() {
            if x > 0 {
                parts.push(pow(root_name(false, roots[k]), x as i64));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Finite linear combination of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub ell: u32,
    pub terms: BTreeMap<PBWMonomial, CycScalar>,
}

impl AlgebraElement {
    pub fn zero(ell: u32) -> Self {
        AlgebraElement { ell, terms: BTreeMap::new() }
    }

    pub fn monomial(m: PBWMonomial, c: CycScalar) -> Self {
        let mut a = AlgebraElement::zero(c.order());
        a.add_term(m, c);
        a
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        self.add(&o.scale(&CycScalar::from_int(self.ell, -1)))
    }

    pub fn scale(&self, c: &CycScalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.ell);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn coeff(&self, m: &PBWMonomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_else(|| CycScalar::zero(self.ell))
    }

    pub fn display(&self, params: &QGroupParams) -> String {
        display_terms(self.terms.iter().map(|(m, c)| (m.display(params), c.to_string())))
    }
}

pub(crate) fn display_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(m, c)| {
            if c == "1" {
                m
            } else if m == "1" {
                format!("({c})")
            } else {
                format!("({c})*{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Linear combination of 2- or 3-fold tensors of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub ell: u32,
    pub arity: usize,
    pub terms: BTreeMap<Vec<PBWMonomial>, CycScalar>,
}

impl TensorElement {
    pub fn zero(ell: u32, arity: usize) -> Self {
        TensorElement { ell, arity, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, key: Vec<PBWMonomial>, c: CycScalar) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.ell, self.arity);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a ⊗ b` of two elements.
    pub fn pure(a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(a.ell, 2);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(vec![m1.clone(), m2.clone()], c1 * c2);
            }
        }
        out
    }

    pub fn display(&self, params: &QGroupParams) -> String {
        display_terms(self.terms.iter().map(|(k, c)| {
            let names: Vec<String> = k.iter().map(|m| m.display(params)).collect();
            (names.join(" ⊗ "), c.to_string())
        }))
    }
}

type EfKey = (Vec<u8>, Vec<u8>);
type MonoProduct = Arc<Vec<(PBWMonomial, CycScalar)>>;

/// Computation context for one parameter set; owns the memo tables.
pub struct QGroup {
    pub params: QGroupParams,
    roots: Vec<(usize, usize)>,
    plus: Mutex<HashMap<RootVector, Arc<Slice>>>,
    minus: Mutex<HashMap<RootVector, Arc<Slice>>>,
    root_words: Mutex<HashMap<(Side, usize), Arc<Vec<(Vec<u8>, CycScalar)>>>>,
    ef_cache: Mutex<HashMap<EfKey, Arc<Vec<RawTerm>>>>,
    mono_mul: Mutex<HashMap<(PBWMonomial, PBWMonomial), MonoProduct>>,
    coproducts: Mutex<HashMap<PBWMonomial, Arc<TensorElement>>>,
}

static REGISTRY: Lazy<Mutex<HashMap<QGroupParams, Arc<QGroup>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl QGroup {
    /// Shared context for `params`; memo tables persist across calls.
    pub fn get(params: &QGroupParams) -> Result<Arc<QGroup>, QGroupError> {
        params.validate()?;
        let mut reg = REGISTRY.lock();
        Ok(reg
            .entry(params.clone())
            .or_insert_with(|| {
                Arc::new(QGroup {
                    params: params.clone(),
                    roots: params.roots(),
                    plus: Mutex::new(HashMap::new()),
                    minus: Mutex::new(HashMap::new()),
                    root_words: Mutex::new(HashMap::new()),
                    ef_cache: Mutex::new(HashMap::new()),
                    mono_mul: Mutex::new(HashMap::new()),
                    coproducts: Mutex::new(HashMap::new()),
                })
            })
            .clone())
    }

    pub fn ell(&self) -> u32 {
        self.params.ell
    }

    pub fn rank(&self) -> usize {
        self.params.rank()
    }

    pub fn roots(&self) -> &[(usize, usize)] {
        &self.roots
    }

    pub fn root_index(&self, i: usize, j: usize) -> Result<usize, QGroupError> {
        self.roots
            .iter()
            .position(|&r| r == (i, j))
            .ok_or(QGroupError::BadRootIndex(i, j))
    }

    pub fn theta(&self, k: i64) -> CycScalar {
        CycScalar::theta_power(self.ell(), k)
    }

    pub fn one_scalar(&self) -> CycScalar {
        CycScalar::one(self.ell())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.ell())
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::monomial(PBWMonomial::one(&self.params), self.one_scalar())
    }

    pub fn unit_mono(&self) -> PBWMonomial {
        PBWMonomial::one(&self.params)
    }

    /// Group-like monomial with the given exponents.
    pub fn group_mono(&self, w: &[i64], wp: &[i64]) -> PBWMonomial {
        let mut m = self.unit_mono();
        m.w = w.to_vec();
        m.wp = wp.to_vec();
        self.reduce_group(&mut m);
        m
    }

    pub fn grouplike(&self, w: &[i64], wp: &[i64]) -> AlgebraElement {
        AlgebraElement::monomial(self.group_mono(w, wp), self.one_scalar())
    }

    pub(crate) fn reduce_group(&self, m: &mut PBWMonomial) {
        if self.params.restricted {
            let l = self.ell() as i64;
            for x in m.w.iter_mut().chain(m.wp.iter_mut()) {
                *x = x.rem_euclid(l);
            }
        }
    }

    /// Generator as an element.
    pub fn gen(&self, kind: GenKind, i: usize, power: i64) -> Result<AlgebraElement, QGroupError> {
        if i == 0 || i >= self.params.n {
            return Err(QGroupError::IndexOutOfRange { index: i, n: self.params.n });
        }
        let rank = self.rank();
        let mut m = self.unit_mono();
        match kind {
            GenKind::E => {
                let k = self.root_index(i, i)?;
                m.e[k] = 1;
            }
            GenKind::F => {
                let k = self.root_index(i, i)?;
                m.f[k] = 1;
            }
            GenKind::W => {
                let mut w = vec![0; rank];
                w[i - 1] = power;
                m.w = w;
            }
            GenKind::Wp => {
                let mut wp = vec![0; rank];
                wp[i - 1] = power;
                m.wp = wp;
            }
        }
        self.reduce_group(&mut m);
        Ok(AlgebraElement::monomial(m, self.one_scalar()))
    }

    pub fn e(&self, i: usize) -> AlgebraElement {
        self.gen(GenKind::E, i, 1).expect("index in range")
    }

    pub fn f(&self, i: usize) -> AlgebraElement {
        self.gen(GenKind::F, i, 1).expect("index in range")
    }

    pub fn w(&self, i: usize) -> AlgebraElement {
        self.gen(GenKind::W, i, 1).expect("index in range")
    }

    pub fn wp(&self, i: usize) -> AlgebraElement {
        self.gen(GenKind::Wp, i, 1).expect("index in range")
    }

    /// `ω_ζ = Π ω_i^{ζ_i}` (or the primed version).
    pub fn omega(&self, zeta: &RootVector, primed: bool) -> AlgebraElement {
        let zero = vec![0; self.rank()];
        if primed {
            self.grouplike(&zero, &zeta.0)
        } else {
            self.grouplike(&zeta.0, &zero)
        }
    }

    pub fn check_index(&self, i: usize) -> Result<(), QGroupError> {
        if i == 0 || i >= self.params.n {
            Err(QGroupError::IndexOutOfRange { index: i, n: self.params.n })
        } else {
            Ok(())
        }
    }

    /// Normal form of a free polynomial with constant coefficients.
    pub fn normal_form(&self, p: &NCPoly) -> Result<AlgebraElement, QGroupError> {
        let mut out = self.zero();
        for (w, c) in &p.terms {
            let c = c.as_cyc().ok_or(QGroupError::LaurentCoefficient)?;
            out = out.add(&self.normal_form_word(w)?.scale(&c));
        }
        Ok(out)
    }

    /// Normal form of a free polynomial whose coefficients may involve `t`.
    pub fn normal_form_laurent(
        &self,
        p: &NCPoly,
    ) -> Result<BTreeMap<PBWMonomial, LaurentScalar>, QGroupError> {
        let mut out: BTreeMap<PBWMonomial, LaurentScalar> = BTreeMap::new();
        for (w, c) in &p.terms {
            let nf = self.normal_form_word(w)?;
            for (k, ck) in c.terms() {
                for (m, x) in &nf.terms {
                    let term = LaurentScalar::monomial(x * &ck, k, p.working_order);
                    let entry = out
                        .entry(m.clone())
                        .or_insert_with(|| LaurentScalar::zero(self.ell(), p.working_order));
                    *entry += &term;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Normal form of a single free word.
    pub fn normal_form_word(&self, w: &Word) -> Result<AlgebraElement, QGroupError> {
        let mut acc = vec![RawTerm::unit(self)];
        for g in &w.0 {
            self.check_index(g.index)?;
            acc = self.raw_mul_letter(&acc, g);
            self.check_heights(&acc)?;
        }
        self.raw_to_pbw(&acc)
    }

    /// Product in the algebra.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, QGroupError> {
        let mut out = self.zero();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let c = c1 * c2;
                for (m, x) in self.mono_mul(m1, m2)?.iter() {
                    out.add_term(m.clone(), x * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, xs: &[&AlgebraElement]) -> Result<AlgebraElement, QGroupError> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> Result<AlgebraElement, QGroupError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    fn mono_mul(&self, m1: &PBWMonomial, m2: &PBWMonomial) -> Result<MonoProduct, QGroupError> {
        let key = (m1.clone(), m2.clone());
        if let Some(v) = self.mono_mul.lock().get(&key) {
            return Ok(v.clone());
        }
        let a = self.mono_raw(m1);
        let b = self.mono_raw(m2);
        let prod = self.raw_mul(&a, &b);
        self.check_heights(&prod)?;
        let nf = self.raw_to_pbw(&prod)?;
        let v: MonoProduct = Arc::new(nf.terms.into_iter().collect());
        self.mono_mul.lock().insert(key, v.clone());
        Ok(v)
    }

    /// Root vector `𝓔_{i,j}`.
    pub fn build_e(&self, i: usize, j: usize) -> Result<AlgebraElement, QGroupError> {
        let k = self.root_index(i, j)?;
        let mut m = self.unit_mono();
        m.e[k] = 1;
        Ok(AlgebraElement::monomial(m, self.one_scalar()))
    }

    /// Root vector `𝓕_{i,j}`.
    pub fn build_f(&self, i: usize, j: usize) -> Result<AlgebraElement, QGroupError> {
        let k = self.root_index(i, j)?;
        let mut m = self.unit_mono();
        m.f[k] = 1;
        Ok(AlgebraElement::monomial(m, self.one_scalar()))
    }

    /// Monomial with exponent vector `exps` on the plus (or minus) root vectors.
    pub fn root_monomial(&self, side: Side, exps: &[u32]) -> PBWMonomial {
        let mut m = self.unit_mono();
        match side {
            Side::Plus => m.e = exps.to_vec(),
            Side::Minus => m.f = exps.to_vec(),
        }
        m
    }

    /// `ℓ`-truncated PBW monomials of degree `ζ` on the plus side, in lex order.
    pub fn pbw_basis_plus(&self, zeta: &RootVector) -> Vec<PBWMonomial> {
        self.truncated_exponents(zeta)
            .into_iter()
            .map(|e| self.root_monomial(Side::Plus, &e))
            .collect()
    }

    /// Mirror of [`pbw_basis_plus`](Self::pbw_basis_plus) in `U⁻_{−ζ}`.
    pub fn pbw_basis_minus(&self, zeta: &RootVector) -> Vec<PBWMonomial> {
        self.truncated_exponents(zeta)
            .into_iter()
            .map(|e| self.root_monomial(Side::Minus, &e))
            .collect()
    }

    /// Degrees `ζ` with nonzero truncated space, in lex order.
    pub fn truncated_degrees(&self) -> Vec<RootVector> {
        let mut seen: Vec<RootVector> = self
            .all_truncated_exponents()
            .iter()
            .map(|e| self.exp_degree(e))
            .collect();
        seen.sort();
        seen.dedup();
        seen
    }

    fn all_truncated_exponents(&self) -> Vec<Vec<u32>> {
        let nr = self.roots.len();
        let l = self.ell();
        let mut out = vec![Vec::new()];
        for _ in 0..nr {
            let mut next = Vec::new();
            for p in &out {
                for a in 0..l {
                    let mut q: Vec<u32> = p.clone();
                    q.push(a);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    pub(crate) fn exp_degree(&self, e: &[u32]) -> RootVector {
        let mut d = vec![0i64; self.rank()];
        for (k, &(i, j)) in self.roots.iter().enumerate() {
            for c in j..=i {
                d[c - 1] += e[k] as i64;
            }
        }
        RootVector(d)
    }

    fn truncated_exponents(&self, zeta: &RootVector) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self
            .all_truncated_exponents()
            .into_iter()
            .filter(|e| &self.exp_degree(e) == zeta)
            .collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests;
