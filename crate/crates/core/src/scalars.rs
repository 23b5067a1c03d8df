//! Exact arithmetic in the cyclotomic field `Q(θ)` and in truncated Laurent
//! series over it.
//!
//! `CycScalar` stores a reduced representative of `Q[x]/Φ_ℓ(x)`. `LaurentScalar`
//! stores finitely many `t`-coefficients and drops everything above its working
//! order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Default truncation order for Laurent computations.
pub const DEFAULT_WORKING_ORDER: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("working order mismatch: {0} vs {1}")]
    WorkingOrderMismatch(i64, i64),
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// polynomials over Q (coefficient vectors, lowest degree first)

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

/// Integer coefficients of the cyclotomic polynomial `Φ_ℓ`, lowest degree first.
///
/// Computed by dividing `x^ℓ − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(ell: u32) -> Vec<BigInt> {
    assert!(ell >= 1, "cyclotomic order must be positive");
    let mut p: Vec<Rational> = vec![Rational::zero(); ell as usize + 1];
    p[0] = rat(-1);
    p[ell as usize] = rat(1);
    for d in 1..ell {
        if ell.is_multiple_of(d) {
            let phi_d: Vec<Rational> = cyclotomic_poly(d)
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            let (q, r) = poly_divrem(&p, &phi_d);
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p.into_iter().map(|c| c.to_integer()).collect()
}

/// Per-order tables shared by all scalars of that order.
pub struct CycData {
    ell: u32,
    deg: usize,
    phi: Vec<Rational>,
    /// `x^k mod Φ_ℓ` for `deg <= k < 2*deg - 1`.
    reduce: Vec<Vec<Rational>>,
    /// `θ^k` for `0 <= k < ℓ`, as coefficient vectors.
    powers: Vec<Vec<Rational>>,
}

impl fmt::Debug for CycData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycData(ell={})", self.ell)
    }
}

static CYC_TABLES: Lazy<RwLock<HashMap<u32, Arc<CycData>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Shared tables for `Q(θ_ℓ)`, built on first use.
pub fn cyc_data(ell: u32) -> Arc<CycData> {
    if let Some(d) = CYC_TABLES.read().get(&ell) {
        return d.clone();
    }
    let built = build_cyc_data(ell);
    CYC_TABLES.write().entry(ell).or_insert(built).clone()
}

fn build_cyc_data(ell: u32) -> Arc<CycData> {
    let phi: Vec<Rational> = cyclotomic_poly(ell)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let deg = phi.len() - 1;
    let reduce_x = |k: usize| {
        let mut xk = vec![Rational::zero(); k + 1];
        xk[k] = rat(1);
        let (_, mut r) = poly_divrem(&xk, &phi);
        r.resize(deg, Rational::zero());
        r
    };
    let reduce = (deg..(2 * deg).max(deg + 1)).map(reduce_x).collect();
    let powers = (0..ell as usize).map(reduce_x).collect();
    Arc::new(CycData {
        ell,
        deg,
        phi,
        reduce,
        powers,
    })
}

// ---------------------------------------------------------------------------

/// Element of `Q(θ_ℓ) = Q[x]/Φ_ℓ(x)`.
#[derive(Clone)]
pub struct CycScalar {
    data: Arc<CycData>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.data.ell == other.data.ell && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc<{}>({})", self.data.ell, self)
    }
}

impl CycScalar {
    pub fn zero(ell: u32) -> Self {
        let data = cyc_data(ell);
        let coeffs = vec![Rational::zero(); data.deg];
        CycScalar { data, coeffs }
    }

    pub fn one(ell: u32) -> Self {
        Self::from_rational(ell, rat(1))
    }

    pub fn from_int(ell: u32, n: i64) -> Self {
        Self::from_rational(ell, rat(n))
    }

    pub fn from_rational(ell: u32, q: Rational) -> Self {
        let mut z = Self::zero(ell);
        z.coeffs[0] = q;
        z
    }

    /// Builds a scalar from polynomial coefficients in `θ`, reducing modulo `Φ_ℓ`.
    pub fn from_poly(ell: u32, poly: &[Rational]) -> Self {
        let data = cyc_data(ell);
        let mut out = vec![Rational::zero(); data.deg];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &data.powers[k % ell as usize];
            for (o, pc) in out.iter_mut().zip(p) {
                *o += c * pc;
            }
        }
        CycScalar { data, coeffs: out }
    }

    /// `θ^k` for a primitive `ℓ`-th root of unity `θ`.
    pub fn theta_power(ell: u32, k: i64) -> Self {
        let data = cyc_data(ell);
        let coeffs = data.powers[k.rem_euclid(ell as i64) as usize].clone();
        CycScalar { data, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.data.ell
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.data.ell != other.data.ell {
            Err(ScalarError::OrderMismatch(self.data.ell, other.data.ell))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycScalar {
            data: self.data.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let d = self.data.deg;
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.data.reduce[k]) {
                *o += c * r;
            }
        }
        Ok(CycScalar {
            data: self.data.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycScalar {
            data: self.data.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_ℓ`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.data.ell, q.recip()));
        }
        // invariant: s_i * a ≡ r_i (mod Φ)
        let mut r0 = self.data.phi.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![rat(1)];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r1 is a nonzero constant since Φ_ℓ is irreducible
        let c = r1[0].recip();
        let scaled: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.data.ell, &scaled))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.data.ell);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order when the scalar is a root of unity of order dividing `ℓ`.
    pub fn root_order(&self) -> Option<u32> {
        let ell = self.data.ell;
        let mut acc = self.clone();
        for k in 1..=ell {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

fn fmt_rat(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycScalar {
    /// Canonical text form `c0 + c1*th + c2*th^2 ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => "th".to_string(),
                _ => format!("th^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{}*{mon}", fmt_rat(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, o: &CycScalar) -> CycScalar {
        self.try_add(o).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, o: &CycScalar) -> CycScalar {
        self.check(o).expect("cyclotomic order mismatch");
        CycScalar {
            data: self.data.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, o: &CycScalar) -> CycScalar {
        self.try_mul(o).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            data: self.data.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, o: &CycScalar) {
        self.check(o).expect("cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, o: CycScalar) -> CycScalar {
        &self + &o
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, o: CycScalar) -> CycScalar {
        &self - &o
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, o: CycScalar) -> CycScalar {
        &self * &o
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

/// Free-function forms.
pub fn theta_power(ell: u32, k: i64) -> CycScalar {
    CycScalar::theta_power(ell, k)
}

pub fn cyc_mul(a: &CycScalar, b: &CycScalar) -> Result<CycScalar, ScalarError> {
    a.try_mul(b)
}

pub fn cyc_inv(a: &CycScalar) -> Result<CycScalar, ScalarError> {
    a.inv()
}

// ---------------------------------------------------------------------------

/// Truncated Laurent series `Σ c_k t^k` over `Q(θ_ℓ)`.
///
/// Terms with exponent above `working_order` are dropped after every operation.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentScalar {
    ell: u32,
    working_order: i64,
    low: i64,
    coeffs: Vec<CycScalar>,
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent<{},{}>({})", self.ell, self.working_order, self)
    }
}

impl LaurentScalar {
    pub fn zero(ell: u32, working_order: i64) -> Self {
        LaurentScalar {
            ell,
            working_order,
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ell: u32, working_order: i64) -> Self {
        Self::from_cyc(CycScalar::one(ell), working_order)
    }

    pub fn from_cyc(c: CycScalar, working_order: i64) -> Self {
        Self::monomial(c, 0, working_order)
    }

    /// `c * t^k`.
    pub fn monomial(c: CycScalar, k: i64, working_order: i64) -> Self {
        let ell = c.order();
        let mut out = LaurentScalar {
            ell,
            working_order,
            low: k,
            coeffs: vec![c],
        };
        out.normalize();
        out
    }

    pub fn t_power(ell: u32, k: i64, working_order: i64) -> Self {
        Self::monomial(CycScalar::one(ell), k, working_order)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(ell: u32, working_order: i64, terms: &[(i64, CycScalar)]) -> Self {
        let mut acc = Self::zero(ell, working_order);
        for (k, c) in terms {
            acc = &acc + &Self::monomial(c.clone(), *k, working_order);
        }
        acc
    }

    fn normalize(&mut self) {
        let keep = (self.working_order - self.low + 1).max(0) as usize;
        if self.coeffs.len() > keep {
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn working_order(&self) -> i64 {
        self.working_order
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero series).
    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> CycScalar {
        let idx = k - self.low;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            self.coeffs[idx as usize].clone()
        } else {
            CycScalar::zero(self.ell)
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, CycScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    /// The constant coefficient when the series has no other terms.
    pub fn as_cyc(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return Some(CycScalar::zero(self.ell));
        }
        if self.low == 0 && self.coeffs.len() == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-truncates at a different working order.
    pub fn with_order(&self, working_order: i64) -> Self {
        let mut out = self.clone();
        out.working_order = working_order;
        out.normalize();
        out
    }

    fn check(&self, o: &Self) -> Result<(), ScalarError> {
        if self.working_order != o.working_order {
            return Err(ScalarError::WorkingOrderMismatch(
                self.working_order,
                o.working_order,
            ));
        }
        if self.ell != o.ell {
            return Err(ScalarError::OrderMismatch(self.ell, o.ell));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        let low = self.low.min(o.low);
        let high = self.highest_exponent().unwrap().max(o.highest_exponent().unwrap());
        let mut coeffs = Vec::with_capacity((high - low + 1) as usize);
        for k in low..=high {
            coeffs.push(&self.coeff(k) + &o.coeff(k));
        }
        let mut out = LaurentScalar {
            ell: self.ell,
            working_order: self.working_order,
            low,
            coeffs,
        };
        out.normalize();
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.ell, self.working_order));
        }
        let low = self.low + o.low;
        let keep = (self.working_order - low + 1).max(0) as usize;
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(keep);
        let mut coeffs = vec![CycScalar::zero(self.ell); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        let mut out = LaurentScalar {
            ell: self.ell,
            working_order: self.working_order,
            low,
            coeffs,
        };
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = LaurentScalar {
            ell: self.ell,
            working_order: self.working_order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        };
        out.normalize();
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.low += k;
        }
        out.normalize();
        out
    }

    /// Inverse of a series with invertible lowest coefficient, exact up to the working order.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let c0inv = self.coeffs[0].inv()?;
        // (c0 t^low)(1 + u) with u = Σ_{k≥1} (c_k/c0) t^k; invert 1 + u by geometric series.
        let n = (self.working_order + self.low + 1).max(1) as usize;
        let mut u = vec![CycScalar::zero(self.ell); n];
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if k < n {
                u[k] = c * &c0inv;
            }
        }
        let mut inv = vec![CycScalar::zero(self.ell); n];
        inv[0] = CycScalar::one(self.ell);
        for k in 1..n {
            let mut acc = CycScalar::zero(self.ell);
            for j in 1..=k {
                if !u[j].is_zero() && !inv[k - j].is_zero() {
                    acc += &(&u[j] * &inv[k - j]);
                }
            }
            inv[k] = -acc;
        }
        let mut out = LaurentScalar {
            ell: self.ell,
            working_order: self.working_order,
            low: -self.low,
            coeffs: inv.into_iter().map(|c| &c * &c0inv).collect(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.ell, self.working_order);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentScalar {
    /// Canonical text form `(c)*t^k + ...` with explicit exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, o: &LaurentScalar) -> LaurentScalar {
        self.try_add(o).expect("laurent operand mismatch")
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, o: &LaurentScalar) -> LaurentScalar {
        self.try_add(&-o).expect("laurent operand mismatch")
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: &LaurentScalar) -> LaurentScalar {
        self.try_mul(o).expect("laurent operand mismatch")
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            ell: self.ell,
            working_order: self.working_order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, o: &LaurentScalar) {
        *self = &*self + o;
    }
}

pub fn laurent_mul(a: &LaurentScalar, b: &LaurentScalar) -> Result<LaurentScalar, ScalarError> {
    a.try_mul(b)
}

pub fn laurent_coeff(a: &LaurentScalar, k: i64) -> CycScalar {
    a.coeff(k)
}

/// `gcd` on machine integers, used for root-of-unity orders.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polys() {
        let ints = |v: Vec<BigInt>| v.into_iter().map(|b| b.to_string()).collect::<Vec<_>>();
        assert_eq!(ints(cyclotomic_poly(1)), ["-1", "1"]);
        assert_eq!(ints(cyclotomic_poly(2)), ["1", "1"]);
        assert_eq!(ints(cyclotomic_poly(3)), ["1", "1", "1"]);
        assert_eq!(ints(cyclotomic_poly(4)), ["1", "0", "1"]);
        assert_eq!(ints(cyclotomic_poly(6)), ["1", "-1", "1"]);
        assert_eq!(cyclotomic_poly(12).len(), 5);
    }

    #[test]
    fn theta_power_examples() {
        assert_eq!(theta_power(2, 1), CycScalar::from_int(2, -1));
        assert_eq!(theta_power(3, 3), CycScalar::one(3));
        assert_eq!(theta_power(4, 2), CycScalar::from_int(4, -1));
        assert!(theta_power(5, 0).is_one());
    }

    #[test]
    fn cyc_mul_inv_examples() {
        let th = theta_power(3, 1);
        let th2 = theta_power(3, 2);
        assert!(cyc_mul(&th, &th2).unwrap().is_one());
        assert_eq!(cyc_inv(&th).unwrap(), th2);
        let one_plus = &CycScalar::one(4) + &theta_power(4, 1);
        let expected = CycScalar::from_poly(4, &[q(1, 2), q(-1, 2)]);
        assert_eq!(cyc_inv(&one_plus).unwrap(), expected);
    }

    #[test]
    fn order_mismatch_is_error() {
        let a = CycScalar::one(3);
        let b = CycScalar::one(4);
        assert_eq!(cyc_mul(&a, &b), Err(ScalarError::OrderMismatch(3, 4)));
        assert_eq!(cyc_inv(&CycScalar::zero(3)), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        let x = CycScalar::from_poly(3, &[q(3, 2), q(-1, 1)]);
        assert_eq!(x.to_string(), "3/2 - th");
        assert_eq!(CycScalar::zero(3).to_string(), "0");
        let l = LaurentScalar::from_terms(
            3,
            8,
            &[(-1, CycScalar::from_int(3, 3)), (2, CycScalar::from_int(3, 5))],
        );
        assert_eq!(l.to_string(), "(3)*t^-1 + (5)*t^2");
    }

    #[test]
    fn laurent_examples() {
        let a = LaurentScalar::t_power(2, -1, 8);
        let b = LaurentScalar::t_power(2, 2, 8);
        assert_eq!(laurent_mul(&a, &b).unwrap(), LaurentScalar::t_power(2, 1, 8));
        let one_t = &LaurentScalar::one(2, 1) + &LaurentScalar::t_power(2, 1, 1);
        let sq = laurent_mul(&one_t, &one_t).unwrap();
        let expected = LaurentScalar::from_terms(
            2,
            1,
            &[(0, CycScalar::one(2)), (1, CycScalar::from_int(2, 2))],
        );
        assert_eq!(sq, expected);
        let c = LaurentScalar::from_terms(
            2,
            8,
            &[(-1, CycScalar::from_int(2, 3)), (2, CycScalar::from_int(2, 5))],
        );
        assert_eq!(laurent_coeff(&c, -1), CycScalar::from_int(2, 3));
        assert!(laurent_coeff(&c, 0).is_zero());
    }

    #[test]
    fn laurent_order_mismatch() {
        let a = LaurentScalar::one(2, 3);
        let b = LaurentScalar::one(2, 4);
        assert_eq!(
            laurent_mul(&a, &b),
            Err(ScalarError::WorkingOrderMismatch(3, 4))
        );
    }

    #[test]
    fn laurent_inverse() {
        let x = &LaurentScalar::t_power(3, -1, 5) + &LaurentScalar::one(3, 5);
        let y = x.inv().unwrap();
        // the t^-1 factor costs one order of precision at the top
        assert!((&x * &y).with_order(4).is_one());
        let u = &LaurentScalar::one(3, 5) + &LaurentScalar::t_power(3, 2, 5);
        assert!((&u * &u.inv().unwrap()).is_one());
    }
}
