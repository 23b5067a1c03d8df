//! Module algebras in category N and the catalog of examples.
//!
//! An algebra is a finite basis of labelled, degree-graded vectors with a sparse
//! product table and one action column per generator letter. Most catalog
//! algebras are given by the action on a generating set and extended to the
//! rest of the basis through `b.(x·a) = Σ (b₍₁₎.x)(b₍₂₎.a)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use parking_lot::Mutex;
use thiserror::Error;

use crate::linalg::{Echelon, SparseRow};
use crate::ncalg::{GenKind, GenSymbol, NCPoly, RootVector};
use crate::pairing::group_exponents;
use crate::qgroup::{AlgebraElement, PBWMonomial, QGroup, QGroupError, QGroupParams};
use crate::report::CheckReport;
use crate::rtwist::{lambda_hat, WeightChar};
use crate::scalars::{CycScalar, LaurentScalar, DEFAULT_WORKING_ORDER};

#[derive(Debug, Error)]
pub enum ModAlgError {
    #[error("product {0} * {1} exceeds the degree cap {2}")]
    DegreeOverflow(String, String, u32),
    #[error("{0} carries no product")]
    NoProduct(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("ideal is not stable under the action: {0}")]
    Unstable(String),
    #[error("beta_{0} is not an ell-th root of unity")]
    BadBeta(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
}

/// Finite linear combination of basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleElement {
    pub terms: BTreeMap<usize, LaurentScalar>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize, ell: u32, wo: i64) -> Self {
        let mut m = Self::zero();
        m.terms.insert(i, LaurentScalar::one(ell, wo));
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&LaurentScalar> {
        self.terms.get(&i)
    }

    pub fn add_term(&mut self, i: usize, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    /// `self += c·o`.
    pub fn axpy(&mut self, c: &LaurentScalar, o: &ModuleElement) {
        for (i, x) in &o.terms {
            self.add_term(*i, &(c * x));
        }
    }

    pub fn add(&self, o: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (i, x) in &o.terms {
            out.add_term(*i, x);
        }
        out
    }

    pub fn sub(&self, o: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (i, x) in &o.terms {
            out.add_term(*i, &-x);
        }
        out
    }

    pub fn scale(&self, c: &LaurentScalar) -> ModuleElement {
        let mut out = ModuleElement::zero();
        out.axpy(c, self);
        out
    }

    pub fn scale_cyc(&self, c: &CycScalar) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (i, x) in &self.terms {
            out.add_term(*i, &x.scale(c));
        }
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (i, x) in &self.terms {
            out.add_term(*i, &x.shift(k));
        }
        out
    }

    pub fn with_order(&self, wo: i64) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (i, x) in &self.terms {
            out.add_term(*i, &x.with_order(wo));
        }
        out
    }

    /// Lowest power of `t` among the coefficients.
    pub fn lowest_t(&self) -> Option<i64> {
        self.terms.values().map(|c| c.lowest_exponent()).min()
    }

    /// Coefficient of `t^k` in every entry.
    pub fn t_layer(&self, k: i64) -> BTreeMap<usize, CycScalar> {
        self.terms
            .iter()
            .map(|(i, c)| (*i, c.coeff(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn display(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                s.push_str(" + ");
            }
            if c.is_one() {
                s.push_str(&labels[*i]);
            } else {
                let _ = write!(s, "({c})*{}", labels[*i]);
            }
        }
        s
    }
}

/// Generator letters acting on every module: `e_i, f_i, ω_i^{±1}, ω'_i^{±1}`.
pub fn gen_symbols(rank: usize) -> Vec<GenSymbol> {
    let mut out = Vec::new();
    for i in 1..=rank {
        out.push(GenSymbol::e(i));
        out.push(GenSymbol::f(i));
        out.push(GenSymbol::w(i, 1));
        out.push(GenSymbol::w(i, -1));
        out.push(GenSymbol::wp(i, 1));
        out.push(GenSymbol::wp(i, -1));
    }
    out
}

#[derive(Debug)]
struct QuotientData {
    ideal: Echelon,
    parent_to_child: BTreeMap<usize, usize>,
    parent_dim: usize,
}

type GenColumns = BTreeMap<GenSymbol, BTreeMap<usize, ModuleElement>>;

#[derive(Debug)]
pub struct ModuleAlgebra {
    pub name: String,
    pub params: QGroupParams,
    pub working_order: i64,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub maxdeg: u32,
    pub unit: Option<usize>,
    products: Option<BTreeMap<(usize, usize), ModuleElement>>,
    action: BTreeMap<GenSymbol, Vec<ModuleElement>>,
    /// Weight vectors with their characters.
    pub weight_basis: Vec<(ModuleElement, WeightChar)>,
    /// `(χ, λ)` with weight of the `k`-th weight vector equal to `χ·λ̂_k`.
    pub weight_offsets: Option<(WeightChar, Vec<RootVector>)>,
    generators: Vec<usize>,
    decomposition: Vec<Option<(usize, ModuleElement)>>,
    weight_candidates: Vec<ModuleElement>,
    quotient: Option<Arc<QuotientData>>,
    mono_cache: Mutex<BTreeMap<PBWMonomial, Arc<Vec<ModuleElement>>>>,
}

impl Clone for ModuleAlgebra {
    fn clone(&self) -> Self {
        ModuleAlgebra {
            name: self.name.clone(),
            params: self.params.clone(),
            working_order: self.working_order,
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            maxdeg: self.maxdeg,
            unit: self.unit,
            products: self.products.clone(),
            action: self.action.clone(),
            weight_basis: self.weight_basis.clone(),
            weight_offsets: self.weight_offsets.clone(),
            generators: self.generators.clone(),
            decomposition: self.decomposition.clone(),
            weight_candidates: self.weight_candidates.clone(),
            quotient: self.quotient.clone(),
            mono_cache: Mutex::new(BTreeMap::new()),
        }
    }
}

impl ModuleAlgebra {
    fn empty(name: &str, params: &QGroupParams, wo: i64, labels: Vec<String>, degrees: Vec<u32>, maxdeg: u32) -> Self {
        let dim = labels.len();
        ModuleAlgebra {
            name: name.to_string(),
            params: params.clone(),
            working_order: wo,
            labels,
            degrees,
            maxdeg,
            unit: None,
            products: None,
            action: BTreeMap::new(),
            weight_basis: Vec::new(),
            weight_offsets: None,
            generators: Vec::new(),
            decomposition: vec![None; dim],
            weight_candidates: Vec::new(),
            quotient: None,
            mono_cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn ell(&self) -> u32 {
        self.params.ell
    }

    pub fn rank(&self) -> usize {
        self.params.rank()
    }

    pub fn has_product(&self) -> bool {
        self.products.is_some()
    }

    pub fn label_index(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn basis(&self, i: usize) -> ModuleElement {
        ModuleElement::basis(i, self.ell(), self.working_order)
    }

    pub fn scalar(&self, c: CycScalar) -> LaurentScalar {
        LaurentScalar::from_cyc(c, self.working_order)
    }

    fn theta(&self, k: i64) -> LaurentScalar {
        self.scalar(CycScalar::theta_power(self.ell(), k))
    }

    /// Labels of degree at most `d`.
    pub fn labels_up_to(&self, d: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] <= d).collect()
    }

    pub fn degree_of(&self, m: &ModuleElement) -> Option<u32> {
        let mut it = m.terms.keys().map(|&i| self.degrees[i]);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Copy with every coefficient re-truncated at `wo`.
    pub fn with_working_order(&self, wo: i64) -> ModuleAlgebra {
        let mut out = self.clone();
        out.working_order = wo;
        if let Some(p) = &mut out.products {
            for v in p.values_mut() {
                *v = v.with_order(wo);
            }
        }
        for cols in out.action.values_mut() {
            for v in cols.iter_mut() {
                *v = v.with_order(wo);
            }
        }
        for (v, chi) in out.weight_basis.iter_mut() {
            *v = v.with_order(wo);
            for x in chi.values_w.iter_mut().chain(chi.values_wp.iter_mut()) {
                *x = x.with_order(wo);
            }
        }
        for d in out.decomposition.iter_mut().flatten() {
            d.1 = d.1.with_order(wo);
        }
        out.weight_candidates = out.weight_candidates.iter().map(|v| v.with_order(wo)).collect();
        out
    }

    // ---- products ----------------------------------------------------------

    pub fn mul_labels(&self, a: usize, b: usize) -> Result<ModuleElement, ModAlgError> {
        let table = self.products.as_ref().ok_or_else(|| ModAlgError::NoProduct(self.name.clone()))?;
        if let Some(v) = table.get(&(a, b)) {
            return Ok(v.clone());
        }
        Err(ModAlgError::DegreeOverflow(
            self.labels[a].clone(),
            self.labels[b].clone(),
            self.maxdeg,
        ))
    }

    pub fn mul(&self, x: &ModuleElement, y: &ModuleElement) -> Result<ModuleElement, ModAlgError> {
        let mut out = ModuleElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                out.axpy(&(ca * cb), &self.mul_labels(*a, *b)?);
            }
        }
        Ok(out)
    }

    // ---- action ------------------------------------------------------------

    pub fn column(&self, g: &GenSymbol, i: usize) -> &ModuleElement {
        let key = GenSymbol { power: g.power.signum(), ..*g };
        &self.action.get(&key).expect("every generator letter has an action")[i]
    }

    fn act_unit_letter(&self, g: &GenSymbol, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (i, c) in &m.terms {
            out.axpy(c, self.column(g, *i));
        }
        out
    }

    /// Action of one letter; group letters may carry any power.
    pub fn act_letter(&self, g: &GenSymbol, m: &ModuleElement) -> ModuleElement {
        let reps = if g.is_grouplike() { g.power.unsigned_abs() as usize } else { 1 };
        let mut v = m.clone();
        for _ in 0..reps {
            v = self.act_unit_letter(g, &v);
        }
        v
    }

    /// Action of a word; the rightmost letter acts first.
    pub fn act_letters(&self, letters: &[GenSymbol], m: &ModuleElement) -> ModuleElement {
        let mut v = m.clone();
        for g in letters.iter().rev() {
            if v.is_zero() {
                break;
            }
            v = self.act_letter(g, &v);
        }
        v
    }

    fn check_group(&self, qg: &QGroup) {
        let (p, q) = (&self.params, &qg.params);
        assert!(
            p.n == q.n && p.ell == q.ell && p.y == q.y && p.z == q.z,
            "module and quantum group parameters differ"
        );
    }

    /// Matrix of a PBW monomial on the basis, cached.
    pub fn mono_columns(&self, qg: &QGroup, m: &PBWMonomial) -> Arc<Vec<ModuleElement>> {
        self.check_group(qg);
        if let Some(c) = self.mono_cache.lock().get(m) {
            return c.clone();
        }
        let letters = qg.monomial_letters(m);
        let cols: Vec<ModuleElement> = (0..self.dim())
            .map(|i| {
                let b = self.basis(i);
                let mut out = ModuleElement::zero();
                for (w, c) in &letters {
                    out.axpy(&self.scalar(c.clone()), &self.act_letters(w, &b));
                }
                out
            })
            .collect();
        let cols = Arc::new(cols);
        self.mono_cache.lock().insert(m.clone(), cols.clone());
        cols
    }

    pub fn act_mono(&self, qg: &QGroup, mono: &PBWMonomial, m: &ModuleElement) -> ModuleElement {
        let cols = self.mono_columns(qg, mono);
        let mut out = ModuleElement::zero();
        for (i, c) in &m.terms {
            out.axpy(c, &cols[*i]);
        }
        out
    }

    pub fn act(&self, qg: &QGroup, u: &AlgebraElement, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (mono, c) in &u.terms {
            out.axpy(&self.scalar(c.clone()), &self.act_mono(qg, mono, m));
        }
        out
    }

    /// Action of a free polynomial, word by word.
    pub fn act_poly(&self, p: &NCPoly, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (w, c) in &p.terms {
            out.axpy(&c.with_order(self.working_order), &self.act_letters(&w.0, m));
        }
        out
    }

    fn trivial_action(&self, g: &GenSymbol, b: usize) -> ModuleElement {
        match g.kind {
            GenKind::E | GenKind::F => ModuleElement::zero(),
            _ => self.basis(b),
        }
    }

    /// Fills the action columns from the action on generators, degree by degree.
    fn extend_action(&mut self, gen_cols: &GenColumns) -> Result<(), ModAlgError> {
        let syms = gen_symbols(self.rank());
        let dim = self.dim();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&i| (self.degrees[i], !self.generators.contains(&i), i));
        let mut cols: BTreeMap<GenSymbol, Vec<Option<ModuleElement>>> =
            syms.iter().map(|g| (*g, vec![None; dim])).collect();
        let apply = |cols: &BTreeMap<GenSymbol, Vec<Option<ModuleElement>>>, g: &GenSymbol, m: &ModuleElement| {
            let mut out = ModuleElement::zero();
            for (i, c) in &m.terms {
                let col = cols[g][*i].as_ref().expect("lower degrees are filled first");
                out.axpy(c, col);
            }
            out
        };
        for b in order {
            for g in &syms {
                let given = gen_cols.get(g).and_then(|m| m.get(&b));
                let v = if let Some(v) = given {
                    v.clone()
                } else if self.degrees[b] == 0 {
                    self.trivial_action(g, b)
                } else {
                    let (x, rest) = self.decomposition[b].clone().ok_or_else(|| {
                        ModAlgError::Invalid(format!("no decomposition for {}", self.labels[b]))
                    })?;
                    let xv = self.basis(x);
                    let i = g.index;
                    match g.kind {
                        GenKind::E => {
                            let w = GenSymbol::w(i, 1);
                            let a = self.mul(&apply(&cols, g, &xv), &rest)?;
                            let c = self.mul(&apply(&cols, &w, &xv), &apply(&cols, g, &rest))?;
                            a.add(&c)
                        }
                        GenKind::F => {
                            let wp = GenSymbol::wp(i, 1);
                            let a = self.mul(&xv, &apply(&cols, g, &rest))?;
                            let c = self.mul(&apply(&cols, g, &xv), &apply(&cols, &wp, &rest))?;
                            a.add(&c)
                        }
                        _ => self.mul(&apply(&cols, g, &xv), &apply(&cols, g, &rest))?,
                    }
                };
                cols.get_mut(g).expect("symbol")[b] = Some(v);
            }
        }
        self.action = cols
            .into_iter()
            .map(|(g, v)| (g, v.into_iter().map(|x| x.expect("filled")).collect()))
            .collect();
        self.mono_cache.lock().clear();
        Ok(())
    }

    fn generator_columns(&self) -> GenColumns {
        let mut out = GenColumns::new();
        for g in gen_symbols(self.rank()) {
            let m = out.entry(g).or_default();
            for &x in &self.generators {
                m.insert(x, self.column(&g, x).clone());
            }
        }
        out
    }

    /// Eigencharacter of `v` under all `ω_i`, `ω'_i`, if it is a weight vector.
    pub fn eigen_char(&self, v: &ModuleElement) -> Option<WeightChar> {
        let (&k, c0) = v.terms.iter().next()?;
        let c0inv = c0.inv().ok()?;
        let mut w = Vec::new();
        let mut wp = Vec::new();
        for i in 1..=self.rank() {
            for (primed, dst) in [(false, &mut w), (true, &mut wp)] {
                let g = if primed { GenSymbol::wp(i, 1) } else { GenSymbol::w(i, 1) };
                let image = self.act_letter(&g, v);
                let ratio = &image.coeff(k).cloned().unwrap_or_else(|| self.scalar(CycScalar::zero(self.ell()))) * &c0inv;
                if image != v.scale(&ratio) {
                    return None;
                }
                dst.push(ratio);
            }
        }
        Some(WeightChar { values_w: w, values_wp: wp })
    }

    fn assign_weights(&mut self) -> Result<(), ModAlgError> {
        let mut out = Vec::new();
        for v in &self.weight_candidates {
            let chi = self
                .eigen_char(v)
                .ok_or_else(|| ModAlgError::Invalid(format!("{} is not a weight vector", v.display(&self.labels))))?;
            out.push((v.clone(), chi));
        }
        self.weight_basis = out;
        Ok(())
    }

    /// Copy with the action on `(g, label)` replaced; used for negative controls.
    pub fn with_corrupted_action(&self, g: GenSymbol, label: usize, value: ModuleElement) -> ModuleAlgebra {
        let mut out = self.clone();
        out.action.get_mut(&g).expect("symbol")[label] = value;
        out.name = format!("corrupted({})", self.name);
        out
    }

    /// Projects an element of the parent tensor algebra into a quotient.
    pub fn project(&self, parent: &ModuleElement) -> Option<ModuleElement> {
        let q = self.quotient.as_ref()?;
        Some(project_with(q, parent, self.working_order))
    }

    // ---- checks ------------------------------------------------------------

    fn coproduct_rhs(&self, g: &GenSymbol, a: usize, b: usize) -> Result<ModuleElement, ModAlgError> {
        let (x, y) = (self.basis(a), self.basis(b));
        let i = g.index;
        Ok(match g.kind {
            GenKind::E => self
                .mul(&self.act_letter(g, &x), &y)?
                .add(&self.mul(&self.act_letter(&GenSymbol::w(i, 1), &x), &self.act_letter(g, &y))?),
            GenKind::F => self
                .mul(&x, &self.act_letter(g, &y))?
                .add(&self.mul(&self.act_letter(g, &x), &self.act_letter(&GenSymbol::wp(i, 1), &y))?),
            _ => self.mul(&self.act_letter(g, &x), &self.act_letter(g, &y))?,
        })
    }

    /// `b.1 = ε(b)1`, `b.(aa') = Σ(b₍₁₎.a)(b₍₂₎.a')` for generator letters, and
    /// associativity and unit laws of the base product, over labels of total
    /// degree at most `degcap`.
    pub fn check_module_algebra(&self, degcap: u32) -> CheckReport {
        let mut rep = CheckReport::new("module-algebra", &self.name);
        let Some(unit) = self.unit else {
            rep.fail("no product");
            return rep;
        };
        let syms = gen_symbols(self.rank());
        let cap = degcap.min(self.maxdeg);
        for g in &syms {
            let one = self.basis(unit);
            rep.expect(self.act_letter(g, &one) == self.trivial_action(g, unit), || {
                format!("modalg1 at {g}")
            });
        }
        let labels = self.labels_up_to(cap);
        for &a in &labels {
            for &b in &labels {
                if self.degrees[a] + self.degrees[b] > cap {
                    continue;
                }
                let ab = match self.mul_labels(a, b) {
                    Ok(v) => v,
                    Err(e) => {
                        rep.fail(e.to_string());
                        continue;
                    }
                };
                for g in &syms {
                    let ok = match self.coproduct_rhs(g, a, b) {
                        Ok(rhs) => self.act_letter(g, &ab) == rhs,
                        Err(_) => false,
                    };
                    rep.expect(ok, || format!("product rule at b={g}, a={}, a'={}", self.labels[a], self.labels[b]));
                }
                for &c in &labels {
                    if self.degrees[a] + self.degrees[b] + self.degrees[c] > cap {
                        continue;
                    }
                    let l = self.mul(&ab, &self.basis(c));
                    let r = self.mul_labels(b, c).and_then(|bc| self.mul(&self.basis(a), &bc));
                    let ok = matches!((l, r), (Ok(l), Ok(r)) if l == r);
                    rep.expect(ok, || {
                        format!("associativity at ({}, {}, {})", self.labels[a], self.labels[b], self.labels[c])
                    });
                }
            }
            let ua = self.mul_labels(unit, a).ok();
            let au = self.mul_labels(a, unit).ok();
            let e = Some(self.basis(a));
            rep.expect(ua == e && au == e, || format!("unit law at {}", self.labels[a]));
        }
        rep
    }

    /// Every defining relation of `U` acts as zero.
    pub fn check_relations_act(&self) -> Result<CheckReport, ModAlgError> {
        let qg = QGroup::get(&self.params.clone().with_restricted(false))?;
        let mut rep = CheckReport::new("relations-act", &self.name);
        for (name, rel) in qg.relations() {
            for i in 0..self.dim() {
                let v = self.act_poly(&rel, &self.basis(i));
                rep.expect(v.is_zero(), || format!("{name} on {}", self.labels[i]));
            }
        }
        Ok(rep)
    }

    /// (N1): the weight vectors are eigenvectors and span; (N2): `𝓔^ℓ_{i,j}`,
    /// `𝓕^ℓ_{i,j}` annihilate.
    pub fn check_category_n(&self) -> Result<CheckReport, ModAlgError> {
        let mut rep = CheckReport::new("category-N", &self.name);
        for (v, chi) in &self.weight_basis {
            for i in 1..=self.rank() {
                for (g, val) in [
                    (GenSymbol::w(i, 1), chi.values_w[i - 1].clone()),
                    (GenSymbol::wp(i, 1), chi.values_wp[i - 1].clone()),
                ] {
                    let inv = val.inv().map_err(|e| ModAlgError::Invalid(e.to_string()))?;
                    let ok = self.act_letter(&g, v) == v.scale(&val)
                        && self.act_letter(&GenSymbol { power: -1, ..g }, v) == v.scale(&inv);
                    rep.expect(ok, || format!("N1: {} not an eigenvector of {g}", v.display(&self.labels)));
                }
            }
        }
        let mut span = Echelon::new();
        let mut constant = true;
        for (v, _) in &self.weight_basis {
            let mut row = SparseRow::new();
            for (i, c) in &v.terms {
                match c.as_cyc() {
                    Some(c) => {
                        row.insert(*i, c);
                    }
                    None => constant = false,
                }
            }
            span.insert(&row);
        }
        rep.expect(constant && span.rank() == self.dim(), || {
            format!("N1: weight vectors span {} of {} dimensions", span.rank(), self.dim())
        });
        let qg = QGroup::get(&self.params.clone().with_restricted(false))?;
        let ell = self.ell();
        for &(i, j) in qg.roots() {
            let el = qg.pow(&qg.build_e(i, j)?, ell)?;
            let fl = qg.pow(&qg.build_f(i, j)?, ell)?;
            for b in 0..self.dim() {
                let v = self.basis(b);
                rep.expect(self.act(&qg, &el, &v).is_zero(), || format!("N2: E({i},{j})^{ell} on {}", self.labels[b]));
                rep.expect(self.act(&qg, &fl, &v).is_zero(), || format!("N2: F({i},{j})^{ell} on {}", self.labels[b]));
            }
        }
        Ok(rep)
    }

    /// Weight vectors grouped by character, as indices into `weight_basis`.
    pub fn weight_decompose(&self) -> Vec<(WeightChar, Vec<usize>)> {
        let mut out: Vec<(WeightChar, Vec<usize>)> = Vec::new();
        for (k, (_, chi)) in self.weight_basis.iter().enumerate() {
            match out.iter_mut().find(|(c, _)| c == chi) {
                Some((_, v)) => v.push(k),
                None => out.push((chi.clone(), vec![k])),
            }
        }
        out
    }

    /// `e_j.M_χ ⊆ M_{χ·α̂_j}` and `f_j.M_χ ⊆ M_{χ·(−α_j)̂}` on every weight vector.
    pub fn check_ejfj(&self) -> CheckReport {
        let mut rep = CheckReport::new("ejfj", &self.name);
        let rank = self.rank();
        let retrunc = |c: WeightChar| WeightChar {
            values_w: c.values_w.iter().map(|x| x.with_order(self.working_order)).collect(),
            values_wp: c.values_wp.iter().map(|x| x.with_order(self.working_order)).collect(),
        };
        for (v, chi) in &self.weight_basis {
            for j in 1..=rank {
                let a = RootVector::simple(rank, j);
                for (g, shift) in [(GenSymbol::e(j), a.clone()), (GenSymbol::f(j), a.scaled(-1))] {
                    let image = self.act_letter(&g, v);
                    if image.is_zero() {
                        rep.tick();
                        continue;
                    }
                    let expect = chi.mul(&retrunc(lambda_hat(&shift, &self.params)));
                    let got = self.eigen_char(&image);
                    rep.expect(got.as_ref() == Some(&expect), || {
                        format!("{g} on {}", v.display(&self.labels))
                    });
                }
            }
        }
        rep
    }

    /// JSON dump of basis, sparse product table and action table.
    pub fn to_json(&self) -> serde_json::Value {
        let elem = |m: &ModuleElement| {
            let mut o = serde_json::Map::new();
            for (i, c) in &m.terms {
                o.insert(self.labels[*i].clone(), serde_json::Value::String(c.to_string()));
            }
            serde_json::Value::Object(o)
        };
        let mut products = Vec::new();
        if let Some(p) = &self.products {
            for ((a, b), v) in p {
                if !v.is_zero() {
                    products.push(serde_json::json!({
                        "left": self.labels[*a], "right": self.labels[*b], "result": elem(v)
                    }));
                }
            }
        }
        let mut action = serde_json::Map::new();
        for (g, cols) in &self.action {
            let mut entries = Vec::new();
            for (i, v) in cols.iter().enumerate() {
                if !v.is_zero() {
                    entries.push(serde_json::json!({ "basis": self.labels[i], "result": elem(v) }));
                }
            }
            action.insert(g.to_string(), serde_json::Value::Array(entries));
        }
        let weights: Vec<serde_json::Value> = self
            .weight_basis
            .iter()
            .map(|(v, chi)| serde_json::json!({ "vector": v.display(&self.labels), "weight": chi.to_string() }))
            .collect();
        serde_json::json!({
            "name": self.name,
            "dimension": self.dim(),
            "basis": self.labels,
            "degrees": self.degrees,
            "unit": self.unit.map(|u| self.labels[u].clone()),
            "products": products,
            "action": action,
            "weights": weights,
        })
    }
}

fn project_with(q: &QuotientData, parent: &ModuleElement, wo: i64) -> ModuleElement {
    let mut row = SparseRow::new();
    for (i, c) in &parent.terms {
        row.insert(*i, c.as_cyc().expect("quotients are taken over t-free coefficients"));
    }
    debug_assert!(parent.terms.keys().all(|&i| i < q.parent_dim));
    let reduced = q.ideal.reduce(&row);
    let mut out = ModuleElement::zero();
    for (i, c) in reduced {
        let j = q.parent_to_child[&i];
        out.add_term(j, &LaurentScalar::from_cyc(c, wo));
    }
    out
}

// ---- catalog ---------------------------------------------------------------

fn letter_label(j: usize) -> String {
    format!("v{j}")
}

fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|&j| letter_label(j)).collect()
    }
}

/// The natural `n`-dimensional module `V`.
pub fn natural_module(params: &QGroupParams) -> ModuleAlgebra {
    natural_module_wo(params, DEFAULT_WORKING_ORDER)
}

pub fn natural_module_wo(params: &QGroupParams, wo: i64) -> ModuleAlgebra {
    let n = params.n;
    let rank = params.rank();
    let labels: Vec<String> = (1..=n).map(letter_label).collect();
    let mut m = ModuleAlgebra::empty("natural", params, wo, labels, vec![1; n], 1);
    let (r, s) = (m.scalar(params.r()), m.scalar(params.s()));
    let d = |a: usize, b: usize| (a == b) as i64;
    let mut gen = GenColumns::new();
    for i in 1..=rank {
        for j in 1..=n {
            let bj = j - 1;
            let mut put = |g: GenSymbol, v: ModuleElement| {
                gen.entry(g).or_default().insert(bj, v);
            };
            put(GenSymbol::e(i), if j == i + 1 { m.basis(i - 1) } else { ModuleElement::zero() });
            put(GenSymbol::f(i), if j == i { m.basis(i) } else { ModuleElement::zero() });
            let w = &r.pow(d(i, j)).expect("unit") * &s.pow(d(i, j - 1)).expect("unit");
            let wp = &r.pow(d(i, j - 1)).expect("unit") * &s.pow(d(i, j)).expect("unit");
            put(GenSymbol::w(i, 1), m.basis(bj).scale(&w));
            put(GenSymbol::w(i, -1), m.basis(bj).scale(&w.inv().expect("unit")));
            put(GenSymbol::wp(i, 1), m.basis(bj).scale(&wp));
            put(GenSymbol::wp(i, -1), m.basis(bj).scale(&wp.inv().expect("unit")));
        }
    }
    m.generators = (0..n).collect();
    m.extend_action(&gen).expect("generators carry the whole action");
    m.weight_candidates = (0..n).map(|i| m.basis(i)).collect();
    m.assign_weights().expect("basis vectors are weight vectors");
    let chi = m.weight_basis[0].1.clone();
    let lambdas = (1..=n)
        .map(|j| RootVector((1..=rank).map(|k| if k < j { -1 } else { 0 }).collect()))
        .collect();
    m.weight_offsets = Some((chi, lambdas));
    m
}

/// Exponent vectors of total degree at most `maxdeg`, by degree then lex.
fn exponent_vectors(n: usize, maxdeg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=maxdeg {
        let mut cur = vec![0u32; n];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(cur.clone());
                return;
            }
            for a in (0..=left).rev() {
                cur[k] = a;
                rec(k + 1, left - a, cur, out);
            }
        }
        rec(0, deg, &mut cur, &mut out);
    }
    out
}

/// The quantum plane `K_r[x_1,…,x_n]`, `x_i x_j = r x_j x_i` for `j > i`, with the
/// printed action.
pub fn quantum_plane(params: &QGroupParams, maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    quantum_plane_wo(params, maxdeg, DEFAULT_WORKING_ORDER)
}

pub fn quantum_plane_wo(params: &QGroupParams, maxdeg: u32, wo: i64) -> Result<ModuleAlgebra, ModAlgError> {
    if maxdeg < 1 {
        return Err(ModAlgError::Invalid("maxdeg must be at least 1".into()));
    }
    let n = params.n;
    let exps = exponent_vectors(n, maxdeg);
    let labels: Vec<String> = exps
        .iter()
        .map(|d| format!("x({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let degrees: Vec<u32> = exps.iter().map(|d| d.iter().sum()).collect();
    let index: BTreeMap<Vec<u32>, usize> = exps.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut m = ModuleAlgebra::empty("qplane", params, wo, labels, degrees, maxdeg);
    let ell = params.ell;
    let rpow = |k: i64| CycScalar::theta_power(ell, params.y as i64 * k);
    let spow = |k: i64| CycScalar::theta_power(ell, params.z as i64 * k);
    let qint = |d: u32| {
        let num = &rpow(d as i64) - &spow(d as i64);
        &num * &(&params.r() - &params.s()).inv().expect("r != s")
    };

    let mut products = BTreeMap::new();
    for (a, da) in exps.iter().enumerate() {
        for (b, db) in exps.iter().enumerate() {
            if m.degrees[a] + m.degrees[b] > maxdeg {
                continue;
            }
            // x_m x_k = r^{-1} x_k x_m for m > k
            let mut k = 0i64;
            for (mi, &am) in da.iter().enumerate() {
                for &bk in &db[..mi] {
                    k += am as i64 * bk as i64;
                }
            }
            let sum: Vec<u32> = da.iter().zip(db).map(|(x, y)| x + y).collect();
            products.insert((a, b), m.basis(index[&sum]).scale_cyc(&rpow(-k)));
        }
    }
    m.products = Some(products);
    m.unit = Some(index[&vec![0; n]]);

    let rank = params.rank();
    let mut cols: BTreeMap<GenSymbol, Vec<ModuleElement>> = BTreeMap::new();
    for i in 1..=rank {
        for (b, d) in exps.iter().enumerate() {
            let (di, dj) = (d[i - 1] as i64, d[i] as i64);
            let e = if dj > 0 {
                let mut t = d.clone();
                t[i - 1] += 1;
                t[i] -= 1;
                m.basis(index[&t]).scale_cyc(&(&rpow(di - dj + 1) * &qint(d[i])))
            } else {
                ModuleElement::zero()
            };
            let f = if di > 0 {
                let mut t = d.clone();
                t[i - 1] -= 1;
                t[i] += 1;
                m.basis(index[&t]).scale_cyc(&(&rpow(dj - di + 1) * &qint(d[i - 1])))
            } else {
                ModuleElement::zero()
            };
            let w = &rpow(di) * &spow(dj);
            let wp = &rpow(dj) * &spow(di);
            let entries = [
                (GenSymbol::e(i), e),
                (GenSymbol::f(i), f),
                (GenSymbol::w(i, 1), m.basis(b).scale_cyc(&w)),
                (GenSymbol::w(i, -1), m.basis(b).scale_cyc(&w.inv().expect("unit"))),
                (GenSymbol::wp(i, 1), m.basis(b).scale_cyc(&wp)),
                (GenSymbol::wp(i, -1), m.basis(b).scale_cyc(&wp.inv().expect("unit"))),
            ];
            for (g, v) in entries {
                cols.entry(g).or_insert_with(|| vec![ModuleElement::zero(); exps.len()])[b] = v;
            }
        }
    }
    m.action = cols;
    for (b, d) in exps.iter().enumerate() {
        if let Some(i) = d.iter().position(|&x| x > 0) {
            let mut unit_i = vec![0; n];
            unit_i[i] = 1;
            let mut rest = d.clone();
            rest[i] -= 1;
            if m.degrees[b] == 1 {
                m.generators.push(b);
            } else {
                m.decomposition[b] = Some((index[&unit_i], m.basis(index[&rest])));
            }
        }
    }
    m.weight_candidates = (0..exps.len()).map(|i| m.basis(i)).collect();
    m.assign_weights()?;
    Ok(m)
}

/// Words of length at most `maxdeg` in `letters` letters, by length then lex.
fn words(letters: usize, maxdeg: u32) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..maxdeg {
        let mut next = Vec::new();
        for w in &layer {
            for j in 1..=letters {
                let mut v: Vec<usize> = w.clone();
                v.push(j);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The tensor algebra `T(V)` on a degree-one module, up to word length `maxdeg`.
pub fn tensor_algebra(v: &ModuleAlgebra, maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    if v.has_product() || v.degrees.iter().any(|&d| d != 1) {
        return Err(ModAlgError::Invalid("tensor_algebra expects a degree-one module".into()));
    }
    let n = v.dim();
    let ws = words(n, maxdeg);
    let index: BTreeMap<Vec<usize>, usize> = ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let labels: Vec<String> = ws
        .iter()
        .map(|w| if w.is_empty() { "1".into() } else { w.iter().map(|&j| v.labels[j - 1].clone()).collect() })
        .collect();
    let degrees = ws.iter().map(|w| w.len() as u32).collect();
    let mut t = ModuleAlgebra::empty("tensor", &v.params, v.working_order, labels, degrees, maxdeg);
    let mut products = BTreeMap::new();
    for (a, wa) in ws.iter().enumerate() {
        for (b, wb) in ws.iter().enumerate() {
            if wa.len() + wb.len() <= maxdeg as usize {
                let mut w = wa.clone();
                w.extend(wb);
                products.insert((a, b), t.basis(index[&w]));
            }
        }
    }
    t.products = Some(products);
    t.unit = Some(0);
    let letter = |j: usize| index[&vec![j + 1]];
    let remap = |m: &ModuleElement| {
        let mut out = ModuleElement::zero();
        for (i, c) in &m.terms {
            out.add_term(letter(*i), c);
        }
        out
    };
    let mut gen = GenColumns::new();
    for g in gen_symbols(v.rank()) {
        for j in 0..n {
            gen.entry(g).or_default().insert(letter(j), remap(v.column(&g, j)));
        }
    }
    t.generators = (0..n).map(letter).collect();
    for (b, w) in ws.iter().enumerate() {
        if w.len() >= 2 {
            t.decomposition[b] = Some((index[&vec![w[0]]], t.basis(index[&w[1..].to_vec()])));
        }
    }
    t.extend_action(&gen)?;
    t.weight_candidates = (0..ws.len()).map(|i| t.basis(i)).collect();
    t.assign_weights()?;
    Ok(t)
}

/// `T / W_p`: drops every label of degree `≥ p`.
pub fn truncate_ideal(t: &ModuleAlgebra, p: u32) -> Result<ModuleAlgebra, ModAlgError> {
    if p < 2 || t.maxdeg + 1 < p {
        return Err(ModAlgError::Invalid(format!("need maxdeg >= p - 1 and p >= 2, got p = {p}")));
    }
    let keep: Vec<usize> = (0..t.dim()).filter(|&i| t.degrees[i] < p).collect();
    let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let remap = |m: &ModuleElement| {
        let mut out = ModuleElement::zero();
        for (i, c) in &m.terms {
            if let Some(&j) = map.get(i) {
                out.add_term(j, c);
            }
        }
        out
    };
    let labels = keep.iter().map(|&i| t.labels[i].clone()).collect();
    let degrees = keep.iter().map(|&i| t.degrees[i]).collect();
    let mut out = ModuleAlgebra::empty(&format!("{}/W{p}", t.name), &t.params, t.working_order, labels, degrees, p - 1);
    let mut products = BTreeMap::new();
    for (ka, &a) in keep.iter().enumerate() {
        for (kb, &b) in keep.iter().enumerate() {
            let v = if t.degrees[a] + t.degrees[b] < p { remap(&t.mul_labels(a, b)?) } else { ModuleElement::zero() };
            products.insert((ka, kb), v);
        }
    }
    out.products = Some(products);
    out.unit = t.unit.and_then(|u| map.get(&u).copied());
    out.action = t
        .action
        .iter()
        .map(|(g, cols)| (*g, keep.iter().map(|&i| remap(&cols[i])).collect()))
        .collect();
    out.generators = t.generators.iter().filter_map(|g| map.get(g).copied()).collect();
    for (k, &i) in keep.iter().enumerate() {
        out.decomposition[k] = t.decomposition[i].as_ref().map(|(x, rest)| (map[x], remap(rest)));
    }
    out.weight_candidates = t.weight_candidates.iter().filter_map(|v| {
        let r = remap(v);
        (!r.is_zero() && r.terms.len() == v.terms.len()).then_some(r)
    }).collect();
    out.assign_weights()?;
    Ok(out)
}

/// Quotient of a tensor algebra by the two-sided ideal generated by homogeneous
/// `relations`, computed degree by degree.
pub fn quotient(t: &ModuleAlgebra, relations: &[ModuleElement], name: &str) -> Result<ModuleAlgebra, ModAlgError> {
    let mut ideal = Echelon::new();
    let to_row = |m: &ModuleElement| -> SparseRow {
        m.terms
            .iter()
            .map(|(i, c)| (*i, c.as_cyc().expect("t-free relation")))
            .collect()
    };
    for rel in relations {
        let Some(dr) = t.degree_of(rel) else {
            if rel.is_zero() {
                continue;
            }
            return Err(ModAlgError::Invalid("relations must be homogeneous".into()));
        };
        for a in 0..t.dim() {
            for b in 0..t.dim() {
                if t.degrees[a] + dr + t.degrees[b] > t.maxdeg {
                    continue;
                }
                let x = t.mul(&t.mul(&t.basis(a), rel)?, &t.basis(b))?;
                ideal.insert(&to_row(&x));
            }
        }
    }
    for (p, row) in ideal.rows() {
        let v: ModuleElement = ModuleElement {
            terms: row.iter().map(|(i, c)| (*i, t.scalar(c.clone()))).collect(),
        };
        for g in gen_symbols(t.rank()) {
            let image = t.act_letter(&g, &v);
            if !ideal.reduce(&to_row(&image)).is_empty() {
                return Err(ModAlgError::Unstable(format!("{g} on the ideal element with pivot {}", t.labels[*p])));
            }
        }
    }
    let pivots: std::collections::BTreeSet<usize> = ideal.pivots().copied().collect();
    let keep: Vec<usize> = (0..t.dim()).filter(|i| !pivots.contains(i)).collect();
    let parent_to_child: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let q = Arc::new(QuotientData { ideal, parent_to_child, parent_dim: t.dim() });
    let wo = t.working_order;
    let proj = |m: &ModuleElement| project_with(&q, m, wo);
    let labels = keep.iter().map(|&i| t.labels[i].clone()).collect();
    let degrees = keep.iter().map(|&i| t.degrees[i]).collect();
    let mut out = ModuleAlgebra::empty(name, &t.params, wo, labels, degrees, t.maxdeg);
    let mut products = BTreeMap::new();
    for (ka, &a) in keep.iter().enumerate() {
        for (kb, &b) in keep.iter().enumerate() {
            if t.degrees[a] + t.degrees[b] <= t.maxdeg {
                products.insert((ka, kb), proj(&t.mul_labels(a, b)?));
            }
        }
    }
    out.products = Some(products);
    out.unit = t.unit.map(|u| q.parent_to_child[&u]);
    out.action = t
        .action
        .iter()
        .map(|(g, cols)| (*g, keep.iter().map(|&i| proj(&cols[i])).collect()))
        .collect();
    out.generators = t.generators.iter().filter_map(|g| q.parent_to_child.get(g).copied()).collect();
    for (k, &i) in keep.iter().enumerate() {
        out.decomposition[k] = t.decomposition[i].as_ref().map(|(x, rest)| (q.parent_to_child[x], proj(rest)));
    }
    out.weight_candidates = (0..keep.len()).map(|i| out.basis(i)).collect();
    out.quotient = Some(q.clone());
    out.assign_weights()?;
    Ok(out)
}

fn word_element(t: &ModuleAlgebra, terms: &[(&[usize], CycScalar)]) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (w, c) in terms {
        let i = t.label_index(&word_label(w)).expect("word within the degree cap");
        out.add_term(i, &t.scalar(c.clone()));
    }
    out
}

fn require(params: &QGroupParams, ok: bool, what: &str) -> Result<(), ModAlgError> {
    if ok {
        Ok(())
    } else {
        Err(ModAlgError::ParamMismatch(format!(
            "{what} (got n={}, ell={}, y={}, z={})",
            params.n, params.ell, params.y, params.z
        )))
    }
}

/// `T(V)` modulo `v_1²v_2 + s v_1v_2v_1 + s² v_2v_1²` and `v_1v_2² + s v_2v_1v_2 + s² v_2²v_1`.
pub fn downup_quotient(params: &QGroupParams, maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    require(params, params.n == 2 && params.ell == 3 && params.y == 1 && params.z == 2, "down-up needs n=2, ell=3, y=1, z=2")?;
    let t = tensor_algebra(&natural_module(params), maxdeg.max(3))?;
    let gens = [downup_relation(&t, params, 1), downup_relation(&t, params, 2)];
    quotient(&t, &gens, "downup")
}

/// The two cubic down-up relations inside `T(V)`; `which` is 1 or 2.
pub fn downup_relation(t: &ModuleAlgebra, params: &QGroupParams, which: u8) -> ModuleElement {
    y_element(t, params, 1, which as usize, 2).expect("two distinct indices")
}

/// `y(i,j,k)` for `i ≤ j ≤ k` as an element of `T(V)`.
pub fn y_element(t: &ModuleAlgebra, params: &QGroupParams, i: usize, j: usize, k: usize) -> Option<ModuleElement> {
    let ell = params.ell;
    let s = params.s();
    let s2 = &s * &s;
    let one = CycScalar::one(ell);
    let terms: Vec<(Vec<usize>, CycScalar)> = if i == j && j == k {
        return Some(ModuleElement::zero());
    } else if i < j && j < k {
        vec![
            (vec![i, j, k], one.clone()),
            (vec![j, i, k], s.clone()),
            (vec![i, k, j], s.clone()),
            (vec![j, k, i], s2.clone()),
            (vec![k, i, j], s2.clone()),
            (vec![k, j, i], one),
        ]
    } else if i == j && j < k {
        vec![(vec![i, i, k], one), (vec![i, k, i], s.clone()), (vec![k, i, i], s2)]
    } else if i < j && j == k {
        vec![(vec![i, k, k], one), (vec![k, i, k], s.clone()), (vec![k, k, i], s2)]
    } else {
        return None;
    };
    let refs: Vec<(&[usize], CycScalar)> = terms.iter().map(|(w, c)| (w.as_slice(), c.clone())).collect();
    Some(word_element(t, &refs))
}

fn sorted_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                if !(i == j && j == k) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

type TableEntry = Option<(i64, (usize, usize, usize))>;

fn sign(b: bool) -> i64 {
    if b {
        -1
    } else {
        1
    }
}

fn y_table_e(t: usize, (i, j, k): (usize, usize, usize)) -> TableEntry {
    if i == t + 1 && ((t < j && j < k) || (t + 1 < j && j == k)) {
        Some((1, (t, j, k)))
    } else if j == t + 1 && i < t + 1 && t < k {
        Some((sign(i == t), (i, t, k)))
    } else if k == t + 1 && i <= j && j <= t {
        Some((sign(j == t), (i, j, t)))
    } else {
        None
    }
}

fn y_table_f(t: usize, (i, j, k): (usize, usize, usize)) -> TableEntry {
    if i == t && t < j && j <= k {
        Some((sign(j == t + 1), (t + 1, j, k)))
    } else if j == t && i <= t && t < k {
        Some((sign(k == t + 1), (i, t + 1, k)))
    } else if k == t && ((i <= j && j < t) || (i < j && j == t)) {
        Some((1, (i, j, t + 1)))
    } else {
        None
    }
}

/// Compares the action on every `y(i,j,k)` with the printed tables.
pub fn check_y_tables(t: &ModuleAlgebra, params: &QGroupParams) -> CheckReport {
    let mut rep = CheckReport::new("y-tables", format!("n={}", params.n));
    let n = params.n;
    let y = |tr: (usize, usize, usize)| y_element(t, params, tr.0, tr.1, tr.2).expect("sorted");
    for tr in sorted_triples(n) {
        let yv = y(tr);
        let mut total = RootVector::zero(params.rank());
        for idx in [tr.0, tr.1, tr.2] {
            // ε_idx in root coordinates: −(α_1+…+α_{idx−1}) up to the common ε_1 shift
            total = &total + &RootVector((1..=params.rank()).map(|k| if k < idx { -1 } else { 0 }).collect());
        }
        for tt in 1..=params.rank() {
            let wexp = params.y as i64 * eps_total(tr, tt) + params.z as i64 * eps_total(tr, tt + 1);
            let wpexp = params.y as i64 * eps_total(tr, tt + 1) + params.z as i64 * eps_total(tr, tt);
            let wv = t.act_letter(&GenSymbol::w(tt, 1), &yv);
            let wpv = t.act_letter(&GenSymbol::wp(tt, 1), &yv);
            rep.expect(wv == yv.scale(&t.theta(wexp)), || format!("w{tt} on y{tr:?}"));
            rep.expect(wpv == yv.scale(&t.theta(wpexp)), || format!("wp{tt} on y{tr:?}"));
            for (g, entry) in [(GenSymbol::e(tt), y_table_e(tt, tr)), (GenSymbol::f(tt), y_table_f(tt, tr))] {
                let got = t.act_letter(&g, &yv);
                let expect = match entry {
                    Some((sg, tr2)) => y(tr2).scale_cyc(&CycScalar::from_int(params.ell, sg)),
                    None => ModuleElement::zero(),
                };
                rep.expect(got == expect, || format!("{g} on y{tr:?}"));
            }
        }
        let _ = total;
    }
    rep
}

/// `⟨ε_t, ε_i+ε_j+ε_k⟩`.
fn eps_total((i, j, k): (usize, usize, usize), t: usize) -> i64 {
    [i, j, k].iter().filter(|&&x| x == t).count() as i64
}

/// `T(V)/⟨Y⟩` for `r = q`, `s = q⁻¹`, `q` a primitive cube root of unity.
pub fn y_submodule_quotient(params: &QGroupParams, maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    require(params, params.n >= 3 && params.ell == 3 && params.y == 1 && params.z == 2, "Y-quotient needs n>=3, ell=3, y=1, z=2")?;
    let t = tensor_algebra(&natural_module(params), maxdeg.max(3))?;
    let rep = check_y_tables(&t, params);
    if !rep.passed() {
        return Err(ModAlgError::Unstable(rep.witness().unwrap_or_default().to_string()));
    }
    let gens: Vec<ModuleElement> = sorted_triples(params.n)
        .into_iter()
        .map(|(i, j, k)| y_element(&t, params, i, j, k).expect("sorted"))
        .collect();
    quotient(&t, &gens, "ysub")
}

fn smash_label(w: &[usize], k: &[i64]) -> String {
    let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
    format!("{}#a({})", word_label(w), ks.join(","))
}

/// `T(V)#𝔄` with the t-free action `e_i.v_j = δ_{i,j−1}v_i a_i`, `ω_i.v_j = r^{δ_{ij}}s^{δ_{i,j−1}}v_j a_i`, ….
pub fn smash_product_base(params: &QGroupParams, beta: &[CycScalar], maxdeg: u32, wo: i64) -> Result<ModuleAlgebra, ModAlgError> {
    let rank = params.rank();
    let ell = params.ell;
    if beta.len() != rank {
        return Err(ModAlgError::Invalid(format!("need {rank} values of beta, got {}", beta.len())));
    }
    for (i, b) in beta.iter().enumerate() {
        if b.order() != ell || !b.pow(ell as i64).map(|x| x.is_one()).unwrap_or(false) {
            return Err(ModAlgError::BadBeta(i + 1));
        }
    }
    let n = params.n;
    let ws = words(n, maxdeg);
    let ks = group_exponents(rank, ell);
    let mut keys = Vec::new();
    for w in &ws {
        for k in &ks {
            keys.push((w.clone(), k.clone()));
        }
    }
    let index: BTreeMap<(Vec<usize>, Vec<i64>), usize> = keys.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let labels = keys.iter().map(|(w, k)| smash_label(w, k)).collect();
    let degrees = keys.iter().map(|(w, _)| w.len() as u32).collect();
    let mut m = ModuleAlgebra::empty("smash", params, wo, labels, degrees, maxdeg);
    let l = ell as i64;
    let addk = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(l)).collect() };
    let mut products = BTreeMap::new();
    for (a, (wa, ka)) in keys.iter().enumerate() {
        for (b, (wb, kb)) in keys.iter().enumerate() {
            if wa.len() + wb.len() > maxdeg as usize {
                continue;
            }
            // a^k acts on each letter of the right word by Π β_i^{k_i}
            let mut c = CycScalar::one(ell);
            for (bi, &ki) in beta.iter().zip(ka) {
                c = &c * &bi.pow(ki * wb.len() as i64).expect("unit");
            }
            let mut w = wa.clone();
            w.extend(wb);
            products.insert((a, b), m.basis(index[&(w, addk(ka, kb))]).scale_cyc(&c));
        }
    }
    m.products = Some(products);
    let zero_k = vec![0i64; rank];
    m.unit = Some(index[&(Vec::new(), zero_k.clone())]);
    let (r, s) = (params.r(), params.s());
    let d = |a: usize, b: usize| (a == b) as i64;
    let mut gen = GenColumns::new();
    for i in 1..=rank {
        let mut ai = zero_k.clone();
        ai[i - 1] = 1;
        let mut ainv = zero_k.clone();
        ainv[i - 1] = l - 1;
        for j in 1..=n {
            let x = index[&(vec![j], zero_k.clone())];
            let mut put = |g: GenSymbol, v: ModuleElement| {
                gen.entry(g).or_default().insert(x, v);
            };
            let e = if j == i + 1 { m.basis(index[&(vec![i], ai.clone())]) } else { ModuleElement::zero() };
            put(GenSymbol::e(i), e);
            let f = if j == i { m.basis(index[&(vec![i + 1], zero_k.clone())]) } else { ModuleElement::zero() };
            put(GenSymbol::f(i), f);
            let w = &r.pow(d(i, j)).expect("unit") * &s.pow(d(i, j - 1)).expect("unit");
            let wp = &r.pow(d(i, j - 1)).expect("unit") * &s.pow(d(i, j)).expect("unit");
            let plus = m.basis(index[&(vec![j], ai.clone())]);
            let minus = m.basis(index[&(vec![j], ainv.clone())]);
            put(GenSymbol::w(i, 1), plus.scale_cyc(&w));
            put(GenSymbol::w(i, -1), minus.scale_cyc(&w.inv().expect("unit")));
            put(GenSymbol::wp(i, 1), plus.scale_cyc(&wp));
            put(GenSymbol::wp(i, -1), minus.scale_cyc(&wp.inv().expect("unit")));
        }
    }
    m.generators = (1..=n).map(|j| index[&(vec![j], zero_k.clone())]).collect();
    for (b, (w, k)) in keys.iter().enumerate() {
        if !w.is_empty() && !(w.len() == 1 && *k == zero_k) {
            let x = index[&(vec![w[0]], zero_k.clone())];
            m.decomposition[b] = Some((x, m.basis(index[&(w[1..].to_vec(), k.clone())])));
        }
    }
    m.extend_action(&gen)?;
    // word ⊗ p_χ with p_χ = Σ_k χ(a^k)⁻¹ a^k
    let mut cands = Vec::new();
    for w in &ws {
        for c in &ks {
            let mut v = ModuleElement::zero();
            for k in &ks {
                let e: i64 = c.iter().zip(k).map(|(x, y)| x * y).sum();
                v.add_term(index[&(w.clone(), k.clone())], &m.theta(-e));
            }
            cands.push(v);
        }
    }
    m.weight_candidates = cands;
    m.assign_weights()?;
    Ok(m)
}

/// `K[x]` as a module algebra for `u_{1,−1}(sl_2)` factoring through `u_{−1}(sl_2)`:
/// `ω.x = ω'.x = −x` and `e.x = f.x = 1`, so `e = f` is the odd derivation.
pub fn super_line(params: &QGroupParams, maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    require(params, params.n == 2 && params.ell == 2 && params.y == 0 && params.z == 1, "super line needs n=2, ell=2, y=0, z=1")?;
    let labels = (0..=maxdeg).map(|k| format!("x^{k}")).collect();
    let mut m = ModuleAlgebra::empty("superline", params, DEFAULT_WORKING_ORDER, labels, (0..=maxdeg).collect(), maxdeg);
    let mut products = BTreeMap::new();
    for a in 0..=maxdeg as usize {
        for b in 0..=(maxdeg as usize - a) {
            products.insert((a, b), m.basis(a + b));
        }
    }
    m.products = Some(products);
    m.unit = Some(0);
    let minus = m.basis(1).scale_cyc(&CycScalar::from_int(2, -1));
    let mut gen = GenColumns::new();
    for g in gen_symbols(1) {
        let v = match g.kind {
            GenKind::E | GenKind::F => m.basis(0),
            _ => minus.clone(),
        };
        gen.entry(g).or_default().insert(1, v);
    }
    m.generators = vec![1];
    for k in 2..=maxdeg as usize {
        m.decomposition[k] = Some((1, m.basis(k - 1)));
    }
    m.extend_action(&gen)?;
    m.weight_candidates = (0..=maxdeg as usize).map(|i| m.basis(i)).collect();
    m.assign_weights()?;
    Ok(m)
}

fn xy_label(a: u32, b: u32) -> String {
    let part = |v: &str, k: u32| match k {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{k}")),
    };
    let parts: Vec<String> = [part("x", a), part("y", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Inverse of the `K[x, y]` labels: `"x^2*y"` gives `(2, 1)`.
pub fn parse_xy_label(s: &str) -> Option<(u32, u32)> {
    if s == "1" {
        return Some((0, 0));
    }
    let (mut a, mut b) = (0, 0);
    for part in s.split('*') {
        let (v, k) = match part.split_once('^') {
            Some((v, k)) => (v, k.parse().ok()?),
            None => (part, 1),
        };
        match v {
            "x" => a = k,
            "y" => b = k,
            _ => return None,
        }
    }
    Some((a, b))
}

/// Commutative `K[x, y]` with the trivial action; the base of the
/// `exp(t ∂_x ⊗ ∂_y)` example.
pub fn commutative_plane(maxdeg: u32, wo: i64) -> ModuleAlgebra {
    let params = QGroupParams::new(2, 2, 0, 1).expect("valid parameters");
    let mut exps = Vec::new();
    for d in 0..=maxdeg {
        for a in (0..=d).rev() {
            exps.push((a, d - a));
        }
    }
    let labels = exps.iter().map(|&(a, b)| xy_label(a, b)).collect();
    let degrees = exps.iter().map(|&(a, b)| a + b).collect();
    let mut m = ModuleAlgebra::empty("K[x,y]", &params, wo, labels, degrees, maxdeg);
    let index: BTreeMap<(u32, u32), usize> = exps.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut products = BTreeMap::new();
    for (i, &(a, b)) in exps.iter().enumerate() {
        for (j, &(c, d)) in exps.iter().enumerate() {
            if let Some(&k) = index.get(&(a + c, b + d)) {
                products.insert((i, j), m.basis(k));
            }
        }
    }
    m.products = Some(products);
    m.unit = Some(0);
    for g in gen_symbols(1) {
        let cols = (0..exps.len())
            .map(|i| if g.is_grouplike() { m.basis(i) } else { ModuleElement::zero() })
            .collect();
        m.action.insert(g, cols);
    }
    m.weight_candidates = (0..exps.len()).map(|i| m.basis(i)).collect();
    m.assign_weights().expect("trivial action");
    m
}

/// The smash product with the printed `t`-scaled action.
pub fn smash_product(params: &QGroupParams, beta: &[CycScalar], maxdeg: u32) -> Result<ModuleAlgebra, ModAlgError> {
    smash_product_wo(params, beta, maxdeg, DEFAULT_WORKING_ORDER)
}

pub fn smash_product_wo(params: &QGroupParams, beta: &[CycScalar], maxdeg: u32, wo: i64) -> Result<ModuleAlgebra, ModAlgError> {
    let base = smash_product_base(params, beta, maxdeg, wo)?;
    let mut out = star_action(&base)?;
    out.name = "smash".into();
    Ok(out)
}

/// `e_i * x = (e_i.x)t`, `f_i * x = f_i.x`, `ω^{±1} * x = (ω^{±1}.x)t^{±1}` on
/// generators, extended by the product rule.
pub fn star_action(a: &ModuleAlgebra) -> Result<ModuleAlgebra, ModAlgError> {
    if a.generators.is_empty() {
        return Err(ModAlgError::Invalid(format!("{} has no generating set", a.name)));
    }
    let mut gen = a.generator_columns();
    for (g, cols) in gen.iter_mut() {
        let k = match g.kind {
            GenKind::E => 1,
            GenKind::F => 0,
            _ => g.power as i64,
        };
        for v in cols.values_mut() {
            if v.terms.values().any(|c| c.as_cyc().is_none()) {
                return Err(ModAlgError::Invalid(format!("{} already carries t on generators", a.name)));
            }
            *v = v.shift(k);
        }
    }
    let mut out = a.clone();
    out.name = format!("star({})", a.name);
    out.extend_action(&gen)?;
    out.assign_weights()?;
    out.weight_offsets = None;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(rep: CheckReport) {
        assert!(rep.passed(), "{rep}");
    }

    fn params(n: usize, ell: u32, y: u32, z: u32) -> QGroupParams {
        QGroupParams::restricted(n, ell, y, z).unwrap()
    }

    #[test]
    fn natural_module_actions() {
        let p = params(3, 3, 1, 2);
        let v = natural_module(&p);
        assert_eq!(v.act_letter(&GenSymbol::e(1), &v.basis(1)), v.basis(0));
        assert!(v.act_letter(&GenSymbol::e(1), &v.basis(0)).is_zero());
        assert_eq!(v.act_letter(&GenSymbol::w(1, 1), &v.basis(0)), v.basis(0).scale_cyc(&p.r()));
        let (chi, lambdas) = v.weight_offsets.clone().unwrap();
        for (k, (_, w)) in v.weight_basis.iter().enumerate() {
            assert_eq!(&chi.mul(&lambda_hat(&lambdas[k], &p)), w);
        }
        ok(v.check_category_n().unwrap());
        ok(v.check_ejfj());
    }

    #[test]
    fn quantum_plane_examples() {
        let p = params(2, 3, 1, 2);
        let a = quantum_plane(&p, 4).unwrap();
        let x1 = a.label_index("x(1,0)").unwrap();
        let x2 = a.label_index("x(0,1)").unwrap();
        let x12 = a.label_index("x(1,1)").unwrap();
        assert_eq!(a.mul_labels(x1, x2).unwrap(), a.basis(x12));
        let x1x2 = a.mul_labels(x1, x2).unwrap();
        let x2x1 = a.mul_labels(x2, x1).unwrap();
        assert_eq!(x1x2, x2x1.scale_cyc(&p.r()));
        assert_eq!(a.act_letter(&GenSymbol::e(1), &a.basis(x2)), a.basis(x1));
        assert_eq!(a.act_letter(&GenSymbol::w(1, 1), &a.basis(x1)), a.basis(x1).scale_cyc(&p.r()));
        ok(a.check_module_algebra(4));
        ok(a.check_category_n().unwrap());
        ok(a.check_relations_act().unwrap());
        ok(a.check_ejfj());
        assert!(matches!(a.mul_labels(a.label_index("x(4,0)").unwrap(), x1), Err(ModAlgError::DegreeOverflow(..))));
    }

    #[test]
    fn tensor_and_truncation() {
        let p = params(2, 2, 0, 1);
        let t = tensor_algebra(&natural_module(&p), 3).unwrap();
        let v1v2 = t.label_index("v1v2").unwrap();
        let v1v1 = t.label_index("v1v1").unwrap();
        assert_eq!(t.act_letter(&GenSymbol::e(1), &t.basis(v1v2)), t.basis(v1v1).scale_cyc(&p.r()));
        assert_eq!(t.act_letter(&GenSymbol::w(1, 1), &t.basis(0)), t.basis(0));
        ok(t.check_module_algebra(3));
        let w = truncate_ideal(&t, 2).unwrap();
        let (a, b) = (w.label_index("v1").unwrap(), w.label_index("v2").unwrap());
        assert!(w.mul_labels(a, b).unwrap().is_zero());
        ok(w.check_module_algebra(3));
    }

    #[test]
    fn downup_examples() {
        let p = params(2, 3, 1, 2);
        let d = downup_quotient(&p, 4).unwrap();
        let t = tensor_algebra(&natural_module(&p), 4).unwrap();
        assert!(d.project(&downup_relation(&t, &p, 1)).unwrap().is_zero());
        assert_eq!(d.labels_up_to(2).len(), 1 + 2 + 4);
        ok(d.check_module_algebra(4));
        ok(d.check_category_n().unwrap());
    }

    #[test]
    fn y_submodule_examples() {
        let p = params(3, 3, 1, 2);
        let t = tensor_algebra(&natural_module(&p), 3).unwrap();
        assert!(y_element(&t, &p, 2, 2, 2).unwrap().is_zero());
        let e1 = t.act_letter(&GenSymbol::e(1), &y_element(&t, &p, 2, 3, 3).unwrap());
        assert_eq!(e1, y_element(&t, &p, 1, 3, 3).unwrap());
        let f1 = t.act_letter(&GenSymbol::f(1), &y_element(&t, &p, 1, 2, 3).unwrap());
        assert_eq!(f1, y_element(&t, &p, 2, 2, 3).unwrap().scale_cyc(&CycScalar::from_int(3, -1)));
        ok(check_y_tables(&t, &p));
        let q = y_submodule_quotient(&p, 3).unwrap();
        ok(q.check_module_algebra(3));
    }

    #[test]
    fn smash_examples() {
        let p = params(2, 2, 0, 1);
        let beta = [CycScalar::from_int(2, -1)];
        let a = smash_product(&p, &beta, 3).unwrap();
        let v1a = a.label_index("v1#a(1)").unwrap();
        let v2 = a.label_index("v2#a(0)").unwrap();
        let v1 = a.label_index("v1#a(0)").unwrap();
        let v1v2a = a.label_index("v1v2#a(1)").unwrap();
        assert_eq!(a.mul_labels(v1a, v2).unwrap(), a.basis(v1v2a).scale_cyc(&beta[0]));
        let expect = a.basis(v1a).scale(&LaurentScalar::monomial(p.r(), 1, a.working_order));
        assert_eq!(a.act_letter(&GenSymbol::w(1, 1), &a.basis(v1)), expect);
        let ga = a.label_index("1#a(1)").unwrap();
        assert!(a.act_letter(&GenSymbol::e(1), &a.basis(ga)).is_zero());
        ok(a.check_module_algebra(3));
        ok(a.check_category_n().unwrap());
        ok(a.check_relations_act().unwrap());
        assert!(matches!(
            smash_product(&p, &[CycScalar::from_int(2, 2)], 2),
            Err(ModAlgError::BadBeta(1))
        ));
    }

    #[test]
    fn star_rescales_generators() {
        let p = params(2, 3, 1, 2);
        let a = truncate_ideal(&tensor_algebra(&natural_module(&p), 3).unwrap(), 3).unwrap();
        let b = star_action(&a).unwrap();
        let x = a.label_index("v2").unwrap();
        let e = GenSymbol::e(1);
        assert_eq!(b.act_letter(&e, &b.basis(x)), a.act_letter(&e, &a.basis(x)).shift(1));
        let f = GenSymbol::f(1);
        assert_eq!(b.act_letter(&f, &b.basis(x)), a.act_letter(&f, &a.basis(x)));
        let wi = GenSymbol::w(1, -1);
        assert_eq!(b.act_letter(&wi, &b.basis(x)), a.act_letter(&wi, &a.basis(x)).shift(-1));
        ok(b.check_module_algebra(3));
        ok(b.check_relations_act().unwrap());
        ok(b.check_category_n().unwrap());
    }

    #[test]
    fn star_does_not_descend_to_quantum_plane() {
        // e*(x1 x2) picks up t^2 while e*(x2 x1) picks up t
        let p = params(2, 2, 0, 1);
        let b = star_action(&quantum_plane(&p, 3).unwrap()).unwrap();
        let rep = b.check_module_algebra(2);
        assert!(!rep.passed());
        assert_eq!(rep.witness(), Some("product rule at b=e1, a=x(0,1), a'=x(1,0)"));
        assert!(!b.check_relations_act().unwrap().passed());
    }

    #[test]
    fn super_line_is_a_module_algebra() {
        let p = params(2, 2, 0, 1);
        let a = super_line(&p, 5).unwrap();
        ok(a.check_module_algebra(5));
        ok(a.check_relations_act().unwrap());
        ok(a.check_category_n().unwrap());
        let x3 = a.label_index("x^3").unwrap();
        let x2 = a.label_index("x^2").unwrap();
        assert_eq!(a.act_letter(&GenSymbol::e(1), &a.basis(x3)), a.basis(x2));
        assert!(a.act_letter(&GenSymbol::f(1), &a.basis(x2)).is_zero());
    }

    #[test]
    fn corrupted_action_is_caught() {
        let p = params(2, 3, 1, 2);
        let a = quantum_plane(&p, 3).unwrap();
        let x = a.label_index("x(1,1)").unwrap();
        let bad = a.with_corrupted_action(GenSymbol::e(1), x, ModuleElement::zero());
        let rep = bad.check_module_algebra(3);
        assert!(!rep.passed());
        assert!(rep.witness().unwrap().contains("product rule"));
    }
}
