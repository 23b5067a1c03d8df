//! Twisted products `μ∘F`, their `t`-layers, and the identity checks for twists
//! and braidings on tensor products of module algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::modalg::{ModAlgError, ModuleAlgebra, ModuleElement};
use crate::ncalg::{GenSymbol, RootVector};
use crate::pairing::PairingError;
use crate::qgroup::{PBWMonomial, QGroup, QGroupError, QGroupParams, TensorElement};
use crate::report::CheckReport;
use crate::rtwist::{f_scalar, group_pair_exp, TwistElement, WeightChar};
use crate::scalars::{CycScalar, LaurentScalar, Rational, DEFAULT_WORKING_ORDER};

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("layer {0} exceeds the working order {1}")]
    OrderTooHigh(i64, i64),
    #[error("{0} has no weight offsets; braidings need weight-graded modules")]
    NotWeighted(String),
    #[error(transparent)]
    ModAlg(#[from] ModAlgError),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// One summand `c · left ⊗ right` of a twist.
#[derive(Debug, Clone)]
pub struct TwistTerm {
    pub coeff: LaurentScalar,
    pub left: PBWMonomial,
    pub right: PBWMonomial,
}

/// A twist as an operator on tensor products of modules.
#[derive(Debug, Clone)]
pub struct TwistOperator {
    pub name: String,
    pub params: QGroupParams,
    /// Keyed by the degree `ζ` of the right factor.
    pub components: BTreeMap<RootVector, Vec<TwistTerm>>,
}

fn single_mono(x: &crate::qgroup::AlgebraElement) -> PBWMonomial {
    let (m, _) = x.terms.iter().next().expect("nonzero generator");
    m.clone()
}

impl TwistOperator {
    pub fn from_twist(f: &TwistElement) -> Self {
        let mut components = BTreeMap::new();
        for (zeta, t) in &f.components {
            components.insert(zeta.clone(), tensor_terms(t));
        }
        TwistOperator { name: "F".into(), params: f.params.clone(), components }
    }

    /// An explicit element of `U ⊗ U`, graded by the right factor.
    pub fn from_tensor(t: &TensorElement, params: &QGroupParams, name: &str) -> Self {
        let mut components: BTreeMap<RootVector, Vec<TwistTerm>> = BTreeMap::new();
        for term in tensor_terms(t) {
            components.entry(term.right.degree(params)).or_default().push(term);
        }
        TwistOperator { name: name.into(), params: params.clone(), components }
    }

    pub fn identity(params: &QGroupParams) -> Self {
        let one = PBWMonomial::one(params);
        let term = TwistTerm {
            coeff: LaurentScalar::one(params.ell, DEFAULT_WORKING_ORDER),
            left: one.clone(),
            right: one,
        };
        let mut components = BTreeMap::new();
        components.insert(RootVector::zero(params.rank()), vec![term]);
        TwistOperator { name: "1⊗1".into(), params: params.clone(), components }
    }

    /// `F_c = 1⊗1 + c t f⊗e` for `sl_2`.
    pub fn f_c(params: &QGroupParams, c: i64) -> Result<Self, QGroupError> {
        let qg = QGroup::get(params)?;
        let mut out = Self::identity(params);
        let term = TwistTerm {
            coeff: LaurentScalar::monomial(CycScalar::from_int(params.ell, c), 1, DEFAULT_WORKING_ORDER),
            left: single_mono(&qg.f(1)),
            right: single_mono(&qg.e(1)),
        };
        out.components.insert(RootVector::simple(params.rank(), 1), vec![term]);
        out.name = format!("F_c(c={c})");
        Ok(out)
    }

    pub fn without_component(&self, zeta: &RootVector) -> Self {
        let mut out = self.clone();
        out.components.remove(zeta);
        out.name = format!("{} without F_{zeta}", self.name);
        out
    }

    pub fn component(&self, zeta: &RootVector) -> &[TwistTerm] {
        self.components.get(zeta).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn terms(&self) -> impl Iterator<Item = &TwistTerm> {
        self.components.values().flatten()
    }

    /// Quantum group used to interpret the monomials; always unrestricted so that
    /// group exponents are never reduced modulo `ℓ`.
    fn group(&self) -> Result<Arc<QGroup>, QGroupError> {
        QGroup::get(&self.params.clone().with_restricted(false))
    }
}

fn tensor_terms(t: &TensorElement) -> Vec<TwistTerm> {
    t.terms
        .iter()
        .map(|(k, c)| TwistTerm {
            coeff: LaurentScalar::from_cyc(c.clone(), DEFAULT_WORKING_ORDER),
            left: k[0].clone(),
            right: k[1].clone(),
        })
        .collect()
}

// ---- tensor vectors ----------------------------------------------------------

/// Element of `M_1 ⊗ … ⊗ M_k`, keyed by basis-label tuples.
pub type TensorVec = BTreeMap<Vec<usize>, LaurentScalar>;

fn tv_add(v: &mut TensorVec, k: Vec<usize>, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c.clone());
        }
    }
}

fn tv_sum(a: &TensorVec, b: &TensorVec) -> TensorVec {
    let mut out = a.clone();
    for (k, c) in b {
        tv_add(&mut out, k.clone(), c);
    }
    out
}

fn tv_basis(key: Vec<usize>, wo: i64, ell: u32) -> TensorVec {
    let mut v = TensorVec::new();
    v.insert(key, LaurentScalar::one(ell, wo));
    v
}

/// Slot operator: a PBW monomial or a word of letters.
enum SlotOp<'a> {
    Mono(&'a PBWMonomial),
    Letters(&'a [GenSymbol]),
}

struct Ctx<'a> {
    qg: Arc<QGroup>,
    mods: Vec<&'a ModuleAlgebra>,
    wo: i64,
    ell: u32,
}

impl<'a> Ctx<'a> {
    fn new(qg: Arc<QGroup>, mods: Vec<&'a ModuleAlgebra>) -> Self {
        let wo = mods[0].working_order;
        assert!(mods.iter().all(|m| m.working_order == wo), "modules differ in working order");
        let ell = mods[0].ell();
        Ctx { qg, mods, wo, ell }
    }

    fn act_slot(&self, slot: usize, op: &SlotOp, i: usize) -> ModuleElement {
        let m = self.mods[slot];
        let b = m.basis(i);
        match op {
            SlotOp::Mono(x) => m.act_mono(&self.qg, x, &b),
            SlotOp::Letters(w) => m.act_letters(w, &b),
        }
    }

    /// `c · (op_1 on slot s_1) ⋯ (op_k on slot s_k)`.
    fn apply(&self, v: &TensorVec, ops: &[(usize, SlotOp)], c: &LaurentScalar) -> TensorVec {
        let c = c.with_order(self.wo);
        let mut out = TensorVec::new();
        for (key, x) in v {
            let mut partial = vec![(key.clone(), x * &c)];
            for (slot, op) in ops {
                let mut next = Vec::new();
                for (k, cc) in &partial {
                    let img = self.act_slot(*slot, op, k[*slot]);
                    for (j, d) in &img.terms {
                        let mut k2 = k.clone();
                        k2[*slot] = *j;
                        next.push((k2, cc * d));
                    }
                }
                partial = next;
            }
            for (k, cc) in partial {
                tv_add(&mut out, k, &cc);
            }
        }
        out
    }

    fn letters(&self, v: &TensorVec, slot: usize, letters: &[GenSymbol]) -> TensorVec {
        self.apply(v, &[(slot, SlotOp::Letters(letters))], &LaurentScalar::one(self.ell, self.wo))
    }

    /// Twist terms with left factor on slot `i`, right factor on slot `j`.
    fn twist_terms(&self, terms: &[TwistTerm], v: &TensorVec, i: usize, j: usize) -> TensorVec {
        let mut out = TensorVec::new();
        for t in terms {
            let part = self.apply(v, &[(i, SlotOp::Mono(&t.left)), (j, SlotOp::Mono(&t.right))], &t.coeff);
            out = tv_sum(&out, &part);
        }
        out
    }

    fn twist(&self, f: &TwistOperator, v: &TensorVec, i: usize, j: usize) -> TensorVec {
        let terms: Vec<TwistTerm> = f.terms().cloned().collect();
        self.twist_terms(&terms, v, i, j)
    }

    /// `Δ` applied to the left (`leg = 0`) or right (`leg = 1`) factor of each term,
    /// acting on three slots.
    fn twist_delta(&self, terms: &[TwistTerm], v: &TensorVec, leg: usize) -> Result<TensorVec, QGroupError> {
        let mut out = TensorVec::new();
        for t in terms {
            let split = if leg == 0 { &t.left } else { &t.right };
            let d = self.qg.coproduct_mono(split)?;
            for (pair, c) in &d.terms {
                let coeff = t.coeff.scale(c);
                let ops = if leg == 0 {
                    [(0, SlotOp::Mono(&pair[0])), (1, SlotOp::Mono(&pair[1])), (2, SlotOp::Mono(&t.right))]
                } else {
                    [(0, SlotOp::Mono(&t.left)), (1, SlotOp::Mono(&pair[0])), (2, SlotOp::Mono(&pair[1]))]
                };
                out = tv_sum(&out, &self.apply(v, &ops, &coeff));
            }
        }
        Ok(out)
    }

    fn basis_tuples(&self, degcap: Option<u32>) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for m in &self.mods {
            let mut next = Vec::new();
            for k in &out {
                for i in 0..m.dim() {
                    let mut k2: Vec<usize> = k.clone();
                    k2.push(i);
                    next.push(k2);
                }
            }
            out = next;
        }
        if let Some(cap) = degcap {
            out.retain(|k| k.iter().zip(&self.mods).map(|(i, m)| m.degrees[*i]).sum::<u32>() <= cap);
        }
        out
    }

    fn show(&self, key: &[usize]) -> String {
        key.iter().zip(&self.mods).map(|(i, m)| m.labels[*i].clone()).collect::<Vec<_>>().join("⊗")
    }
}

// ---- twisted products -------------------------------------------------------

/// `A_F`: the product `μ∘F` on the basis of `A`, truncated at `working_order`.
#[derive(Debug, Clone)]
pub struct DeformedProduct {
    pub base: ModuleAlgebra,
    pub twist_name: String,
    pub working_order: i64,
    pub table: BTreeMap<(usize, usize), ModuleElement>,
}

pub fn twisted_product(a: &ModuleAlgebra, f: &TwistOperator, working_order: i64) -> Result<DeformedProduct, DeformError> {
    let base = a.with_working_order(working_order);
    let qg = f.group()?;
    let terms: Vec<TwistTerm> = f.terms().cloned().collect();
    let mut table = BTreeMap::new();
    for x in 0..base.dim() {
        for y in 0..base.dim() {
            if base.mul_labels(x, y).is_err() {
                continue;
            }
            let mut out = ModuleElement::zero();
            for t in &terms {
                let l = base.act_mono(&qg, &t.left, &base.basis(x));
                if l.is_zero() {
                    continue;
                }
                let r = base.act_mono(&qg, &t.right, &base.basis(y));
                if r.is_zero() {
                    continue;
                }
                out.axpy(&t.coeff.with_order(working_order), &base.mul(&l, &r)?);
            }
            table.insert((x, y), out);
        }
    }
    Ok(DeformedProduct { base, twist_name: f.name.clone(), working_order, table })
}

impl DeformedProduct {
    pub fn mul_labels(&self, a: usize, b: usize) -> Result<ModuleElement, ModAlgError> {
        self.table.get(&(a, b)).cloned().ok_or_else(|| {
            ModAlgError::DegreeOverflow(self.base.labels[a].clone(), self.base.labels[b].clone(), self.base.maxdeg)
        })
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

    fn instance(&self) -> String {
        format!("{} twisted by {}, order {}", self.base.name, self.twist_name, self.working_order)
    }

    /// Unit law: `1 ∗ a = a ∗ 1 = a`.
    pub fn check_unit(&self) -> CheckReport {
        let mut rep = CheckReport::new("unit", self.instance());
        let Some(u) = self.base.unit else {
            rep.fail("no unit");
            return rep;
        };
        for a in 0..self.base.dim() {
            let e = Some(self.base.basis(a));
            let ok = self.mul_labels(u, a).ok() == e && self.mul_labels(a, u).ok() == e;
            rep.expect(ok, || format!("unit law at {}", self.base.labels[a]));
        }
        rep
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels = &self.base.labels;
        let entries: Vec<serde_json::Value> = self
            .table
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((a, b), v)| serde_json::json!({ "left": labels[*a], "right": labels[*b], "result": v.display(labels) }))
            .collect();
        serde_json::json!({
            "algebra": self.base.name,
            "twist": self.twist_name,
            "working_order": self.working_order,
            "table": entries,
        })
    }
}

/// Exhaustive `(a∗b)∗c = a∗(b∗c)` over labels with total degree at most `degcap`.
pub fn check_associativity(d: &DeformedProduct, degcap: u32) -> CheckReport {
    let mut rep = CheckReport::new("associativity", d.instance());
    let a = &d.base;
    let labels = a.labels_up_to(degcap);
    for &x in &labels {
        for &y in &labels {
            if a.degrees[x] + a.degrees[y] > degcap {
                continue;
            }
            let Ok(xy) = d.mul_labels(x, y) else {
                rep.fail(format!("undefined product {} * {}", a.labels[x], a.labels[y]));
                continue;
            };
            for &z in &labels {
                if a.degrees[x] + a.degrees[y] + a.degrees[z] > degcap {
                    continue;
                }
                let l = d.mul(&xy, &a.basis(z));
                let r = d.mul_labels(y, z).and_then(|yz| d.mul(&a.basis(x), &yz));
                let ok = matches!((&l, &r), (Ok(l), Ok(r)) if l == r);
                rep.expect(ok, || format!("({}, {}, {})", a.labels[x], a.labels[y], a.labels[z]));
            }
        }
    }
    rep
}

/// Exact bilinear map on base labels with `t`-free coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinear {
    pub working_order: i64,
    pub entries: BTreeMap<(usize, usize), ModuleElement>,
}

impl Bilinear {
    pub fn apply(&self, x: &ModuleElement, y: &ModuleElement) -> Option<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                out.axpy(&(ca * cb), self.entries.get(&(*a, *b))?);
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }
}

/// The `t^i` layer `μ_i` of a deformed product.
pub fn deformation_coeffs(d: &DeformedProduct, i: i64) -> Result<Bilinear, DeformError> {
    if i > d.working_order {
        return Err(DeformError::OrderTooHigh(i, d.working_order));
    }
    let wo = d.working_order;
    let entries = d
        .table
        .iter()
        .map(|(k, v)| {
            let mut m = ModuleElement::zero();
            for (j, c) in v.t_layer(i) {
                m.add_term(j, &LaurentScalar::from_cyc(c, wo));
            }
            (*k, m)
        })
        .collect();
    Ok(Bilinear { working_order: wo, entries })
}

/// `μ_0` equals the base product wherever both are defined.
pub fn check_mu0(d: &DeformedProduct) -> Result<CheckReport, DeformError> {
    let mut rep = CheckReport::new("mu0-is-base-product", d.instance());
    let mu0 = deformation_coeffs(d, 0)?;
    for ((a, b), v) in &mu0.entries {
        let base = d.base.mul_labels(*a, *b)?;
        rep.expect(*v == base, || format!("{} * {}", d.base.labels[*a], d.base.labels[*b]));
    }
    Ok(rep)
}

/// `μ_1(a⊗b)c + μ_1(ab⊗c) = aμ_1(b⊗c) + μ_1(a⊗bc)` over labels of total degree at
/// most `degcap`.
pub fn check_hochschild_cocycle(mu1: &Bilinear, a: &ModuleAlgebra, degcap: u32) -> CheckReport {
    let mut rep = CheckReport::new("hochschild-cocycle", &a.name);
    let a = &a.with_working_order(mu1.working_order);
    let labels = a.labels_up_to(degcap);
    for &x in &labels {
        for &y in &labels {
            for &z in &labels {
                if a.degrees[x] + a.degrees[y] + a.degrees[z] > degcap {
                    continue;
                }
                let (bx, by, bz) = (a.basis(x), a.basis(y), a.basis(z));
                let lhs = (|| {
                    let p = mu1.apply(&bx, &by)?;
                    let q = a.mul(&bx, &by).ok()?;
                    Some(a.mul(&p, &bz).ok()?.add(&mu1.apply(&q, &bz)?))
                })();
                let rhs = (|| {
                    let p = mu1.apply(&by, &bz)?;
                    let q = a.mul(&by, &bz).ok()?;
                    Some(a.mul(&bx, &p).ok()?.add(&mu1.apply(&bx, &q)?))
                })();
                let ok = matches!((&lhs, &rhs), (Some(l), Some(r)) if l == r);
                rep.expect(ok, || format!("({}, {}, {})", a.labels[x], a.labels[y], a.labels[z]));
            }
        }
    }
    rep
}

/// `[(Δ⊗id)(F)](F⊗id) = [(id⊗Δ)(F)](id⊗F)` on basis triples of total degree at most
/// `degcap`.
pub fn check_twist_identity(
    f: &TwistOperator,
    mods: (&ModuleAlgebra, &ModuleAlgebra, &ModuleAlgebra),
    degcap: u32,
) -> Result<CheckReport, DeformError> {
    let ctx = Ctx::new(f.group()?, vec![mods.0, mods.1, mods.2]);
    let names = format!("{} on {}⊗{}⊗{}", f.name, mods.0.name, mods.1.name, mods.2.name);
    let mut rep = CheckReport::new("twist-identity", names);
    let terms: Vec<TwistTerm> = f.terms().cloned().collect();
    for key in ctx.basis_tuples(Some(degcap)) {
        let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
        let lhs = ctx.twist_delta(&terms, &ctx.twist_terms(&terms, &v, 0, 1), 0)?;
        let rhs = ctx.twist_delta(&terms, &ctx.twist_terms(&terms, &v, 1, 2), 1)?;
        rep.expect(lhs == rhs, || ctx.show(&key));
    }
    Ok(rep)
}

/// Each non-identity component raises the `t`-degree on `A ⊗ A` by at least one;
/// the identity component must be exactly `1⊗1`.
pub fn check_udf_degree(f: &TwistOperator, a: &ModuleAlgebra) -> Result<CheckReport, DeformError> {
    let ctx = Ctx::new(f.group()?, vec![a, a]);
    let mut rep = CheckReport::new("udf-degree", format!("{} on {}", f.name, a.name));
    let zero = RootVector::zero(f.params.rank());
    let id = f.component(&zero);
    let exact_identity = id.len() == 1 && id[0].left.is_one() && id[0].right.is_one() && id[0].coeff.is_one();
    rep.expect(exact_identity, || "identity component is not 1⊗1".into());
    for (zeta, terms) in &f.components {
        if *zeta == zero {
            continue;
        }
        for key in ctx.basis_tuples(Some(a.maxdeg)) {
            let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
            let out = ctx.twist_terms(terms, &v, 0, 1);
            let low = out.values().map(|c| c.lowest_exponent()).min();
            rep.expect(low.is_none_or(|k| k >= 1), || {
                format!("not a UDF for this category: F_{zeta} on {} has t-degree {}", ctx.show(&key), low.unwrap_or(0))
            });
        }
    }
    Ok(rep)
}

// ---- braidings ---------------------------------------------------------------

/// Weight data of a weight-graded module: the character `χ` and the offset
/// `λ` of each basis label.
struct Graded<'a> {
    chi: &'a WeightChar,
    lambda: BTreeMap<usize, &'a RootVector>,
}

fn graded(m: &ModuleAlgebra) -> Result<Graded<'_>, DeformError> {
    let (chi, lambdas) = m.weight_offsets.as_ref().ok_or_else(|| DeformError::NotWeighted(m.name.clone()))?;
    let mut lambda = BTreeMap::new();
    for ((v, _), l) in m.weight_basis.iter().zip(lambdas) {
        if v.terms.len() != 1 {
            return Err(DeformError::NotWeighted(m.name.clone()));
        }
        lambda.insert(*v.terms.keys().next().expect("one term"), l);
    }
    Ok(Graded { chi, lambda })
}

struct Braider<'a> {
    f: &'a TwistOperator,
    params: QGroupParams,
    qg: Arc<QGroup>,
}

impl<'a> Braider<'a> {
    fn new(f: &'a TwistOperator) -> Result<Self, DeformError> {
        Ok(Braider { f, params: f.params.clone(), qg: f.group()? })
    }

    fn ctx<'m>(&self, mods: &[&'m ModuleAlgebra]) -> Ctx<'m> {
        Ctx::new(self.qg.clone(), mods.to_vec())
    }

    /// `f̃` on slots `(i, j)`: `χ` from the module in slot `i`, `ψ` from slot `j`.
    fn ftilde(&self, mods: &[&ModuleAlgebra], v: &TensorVec, i: usize, j: usize) -> Result<TensorVec, DeformError> {
        let (gi, gj) = (graded(mods[i])?, graded(mods[j])?);
        let mut out = TensorVec::new();
        for (k, c) in v {
            let s = f_scalar(gi.chi, gj.chi, gi.lambda[&k[i]], gj.lambda[&k[j]], &self.params);
            tv_add(&mut out, k.clone(), &(c * &s.with_order(c.working_order())));
        }
        Ok(out)
    }

    fn tau(&self, mods: &mut [&ModuleAlgebra], v: &TensorVec, i: usize, j: usize) -> TensorVec {
        mods.swap(i, j);
        v.iter()
            .map(|(k, c)| {
                let mut k2 = k.clone();
                k2.swap(i, j);
                (k2, c.clone())
            })
            .collect()
    }

    /// `R = F∘f̃∘τ` on slots `(i, i+1)`.
    fn r(&self, mods: &mut Vec<&ModuleAlgebra>, v: &TensorVec, i: usize) -> Result<TensorVec, DeformError> {
        let v = self.tau(mods, v, i, i + 1);
        let v = self.ftilde(mods, &v, i, i + 1)?;
        Ok(self.ctx(mods).twist(self.f, &v, i, i + 1))
    }

    fn omega_letters(&self, zeta: &RootVector, primed: bool) -> Vec<GenSymbol> {
        let mut out = Vec::new();
        for (i, &k) in zeta.0.iter().enumerate() {
            let g = if primed { GenSymbol::wp(i + 1, k.signum() as i8) } else { GenSymbol::w(i + 1, k.signum() as i8) };
            out.extend(std::iter::repeat_n(g, k.unsigned_abs() as usize));
        }
        out
    }
}

/// Matrix of `R_{M',M} = F∘f̃∘τ : M'⊗M → M⊗M'`.
#[derive(Debug, Clone)]
pub struct BraidingMap {
    pub m_prime: ModuleAlgebra,
    pub m: ModuleAlgebra,
    pub twist: TwistOperator,
    /// Image of each basis tensor `m'_a ⊗ m_b`.
    pub matrix: BTreeMap<(usize, usize), TensorVec>,
}

pub fn braiding(m_prime: &ModuleAlgebra, m: &ModuleAlgebra, f: &TwistOperator) -> Result<BraidingMap, DeformError> {
    let b = Braider::new(f)?;
    let mut matrix = BTreeMap::new();
    for x in 0..m_prime.dim() {
        for y in 0..m.dim() {
            let mut mods = vec![m_prime, m];
            let v = tv_basis(vec![x, y], m.working_order, m.ell());
            matrix.insert((x, y), b.r(&mut mods, &v, 0)?);
        }
    }
    Ok(BraidingMap { m_prime: m_prime.clone(), m: m.clone(), twist: f.clone(), matrix })
}

impl BraidingMap {
    pub fn apply(&self, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::new();
        for (k, c) in v {
            for (k2, d) in &self.matrix[&(k[0], k[1])] {
                tv_add(&mut out, k2.clone(), &(c * d));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let show = |k: &[usize]| format!("{}⊗{}", self.m.labels[k[0]], self.m_prime.labels[k[1]]);
        let rows: Vec<serde_json::Value> = self
            .matrix
            .iter()
            .map(|((a, b), v)| {
                let img: serde_json::Map<String, serde_json::Value> =
                    v.iter().map(|(k, c)| (show(k), serde_json::Value::String(c.to_string()))).collect();
                serde_json::json!({
                    "source": format!("{}⊗{}", self.m_prime.labels[*a], self.m.labels[*b]),
                    "image": img,
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// `B∘Δ(g) = Δ(g)∘B` for every generator letter `g`.
pub fn check_module_hom(b: &BraidingMap) -> Result<CheckReport, DeformError> {
    let qg = b.twist.group()?;
    let mut rep = CheckReport::new("module-hom", format!("R_{{{},{}}} from {}", b.m_prime.name, b.m.name, b.twist.name));
    let src = Ctx::new(qg.clone(), vec![&b.m_prime, &b.m]);
    let dst = Ctx::new(qg.clone(), vec![&b.m, &b.m_prime]);
    for g in crate::modalg::gen_symbols(b.twist.params.rank()) {
        let x = qg.gen(g.kind, g.index, g.power as i64)?;
        let d = qg.coproduct(&x)?;
        let act = |ctx: &Ctx, v: &TensorVec| {
            let mut out = TensorVec::new();
            for (k, c) in &d.terms {
                let coeff = LaurentScalar::from_cyc(c.clone(), ctx.wo);
                out = tv_sum(&out, &ctx.apply(v, &[(0, SlotOp::Mono(&k[0])), (1, SlotOp::Mono(&k[1]))], &coeff));
            }
            out
        };
        for key in src.basis_tuples(None) {
            let v = tv_basis(key.clone(), src.wo, src.ell);
            let lhs = b.apply(&act(&src, &v));
            let rhs = act(&dst, &b.apply(&v));
            rep.expect(lhs == rhs, || format!("{g} at {}", src.show(&key)));
        }
    }
    Ok(rep)
}

/// `R^{12}R^{23}R^{12} = R^{23}R^{12}R^{23}` on `M⊗M'⊗M''`.
pub fn check_qybe(m: &ModuleAlgebra, mp: &ModuleAlgebra, mpp: &ModuleAlgebra, f: &TwistOperator) -> Result<CheckReport, DeformError> {
    let br = Braider::new(f)?;
    let mut rep = CheckReport::new("qybe", format!("{} on {}⊗{}⊗{}", f.name, m.name, mp.name, mpp.name));
    let ctx = br.ctx(&[m, mp, mpp]);
    for key in ctx.basis_tuples(None) {
        let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
        let mut ml = vec![m, mp, mpp];
        let l = br.r(&mut ml, &v, 0)?;
        let l = br.r(&mut ml, &l, 1)?;
        let l = br.r(&mut ml, &l, 0)?;
        let mut mr = vec![m, mp, mpp];
        let r = br.r(&mut mr, &v, 1)?;
        let r = br.r(&mut mr, &r, 0)?;
        let r = br.r(&mut mr, &r, 1)?;
        rep.expect(l == r, || ctx.show(&key));
    }
    Ok(rep)
}

/// Both hexagon identities on `M⊗M'⊗M''`, with `(id⊗Δ)(F)` and `(Δ⊗id)(F)` taken
/// from the coproduct of `U`.
pub fn check_hexagon(m: &ModuleAlgebra, mp: &ModuleAlgebra, mpp: &ModuleAlgebra, f: &TwistOperator) -> Result<CheckReport, DeformError> {
    let br = Braider::new(f)?;
    let mut rep = CheckReport::new("hexagon", format!("{} on {}⊗{}⊗{}", f.name, m.name, mp.name, mpp.name));
    let terms: Vec<TwistTerm> = f.terms().cloned().collect();
    let ctx = br.ctx(&[m, mp, mpp]);
    for key in ctx.basis_tuples(None) {
        let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
        // (i) R12∘R23 = (id⊗Δ)(F)∘f̃12∘f̃13∘τ12∘τ23
        let mut ml = vec![m, mp, mpp];
        let l = br.r(&mut ml, &v, 1)?;
        let l = br.r(&mut ml, &l, 0)?;
        let mut mr = vec![m, mp, mpp];
        let r = br.tau(&mut mr, &v, 1, 2);
        let r = br.tau(&mut mr, &r, 0, 1);
        let r = br.ftilde(&mr, &r, 0, 2)?;
        let r = br.ftilde(&mr, &r, 0, 1)?;
        let r = br.ctx(&mr).twist_delta(&terms, &r, 1)?;
        rep.expect(l == r, || format!("(i) at {}", ctx.show(&key)));
        // (ii) R23∘R12 = (Δ⊗id)(F)∘f̃23∘f̃13∘τ23∘τ12
        let mut ml = vec![m, mp, mpp];
        let l = br.r(&mut ml, &v, 0)?;
        let l = br.r(&mut ml, &l, 1)?;
        let mut mr = vec![m, mp, mpp];
        let r = br.tau(&mut mr, &v, 0, 1);
        let r = br.tau(&mut mr, &r, 1, 2);
        let r = br.ftilde(&mr, &r, 0, 2)?;
        let r = br.ftilde(&mr, &r, 1, 2)?;
        let r = br.ctx(&mr).twist_delta(&terms, &r, 0)?;
        rep.expect(l == r, || format!("(ii) at {}", ctx.show(&key)));
    }
    Ok(rep)
}

/// The three identities relating `F_ζ`, `F_{ζ−α_i}` and the generators, as
/// operators on `M⊗M'`.
pub fn check_wef(zeta: &RootVector, i: usize, pair: (&ModuleAlgebra, &ModuleAlgebra), f: &TwistOperator) -> Result<CheckReport, DeformError> {
    let br = Braider::new(f)?;
    let ctx = br.ctx(&[pair.0, pair.1]);
    let mut rep = CheckReport::new("wef", format!("zeta={zeta}, i={i} on {}⊗{}", pair.0.name, pair.1.name));
    let fz = f.component(zeta);
    let shifted = zeta - &RootVector::simple(zeta.rank(), i);
    let fs = f.component(&shifted);
    let (e, ff) = ([GenSymbol::e(i)], [GenSymbol::f(i)]);
    let (w, wp) = ([GenSymbol::w(i, 1)], [GenSymbol::wp(i, 1)]);
    let l2 = |v: &TensorVec, a: &[GenSymbol], b: &[GenSymbol]| {
        let one = LaurentScalar::one(ctx.ell, ctx.wo);
        ctx.apply(v, &[(0, SlotOp::Letters(a)), (1, SlotOp::Letters(b))], &one)
    };
    for key in ctx.basis_tuples(None) {
        let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
        for g in [&w, &wp] {
            let lhs = l2(&ctx.twist_terms(fz, &v, 0, 1), g, g);
            let rhs = ctx.twist_terms(fz, &l2(&v, g, g), 0, 1);
            rep.expect(lhs == rhs, || format!("(i) {} at {}", g[0], ctx.show(&key)));
        }
        let lhs = tv_sum(
            &ctx.letters(&ctx.twist_terms(fz, &v, 0, 1), 0, &e),
            &l2(&ctx.twist_terms(fs, &v, 0, 1), &w, &e),
        );
        let rhs = tv_sum(
            &ctx.twist_terms(fz, &ctx.letters(&v, 0, &e), 0, 1),
            &ctx.twist_terms(fs, &l2(&v, &wp, &e), 0, 1),
        );
        rep.expect(lhs == rhs, || format!("(ii) at {}", ctx.show(&key)));
        let lhs = tv_sum(
            &ctx.letters(&ctx.twist_terms(fz, &v, 0, 1), 1, &ff),
            &l2(&ctx.twist_terms(fs, &v, 0, 1), &ff, &wp),
        );
        let rhs = tv_sum(
            &ctx.twist_terms(fz, &ctx.letters(&v, 1, &ff), 0, 1),
            &ctx.twist_terms(fs, &l2(&v, &ff, &w), 0, 1),
        );
        rep.expect(lhs == rhs, || format!("(iii) at {}", ctx.show(&key)));
    }
    Ok(rep)
}

/// The coproduct expansions of `F_γ` and the commutation of `f̃` past `(F_ζ)^{13}`,
/// as operators on `M⊗M'⊗M''`.
pub fn check_moreids(
    gamma: &RootVector,
    triple: (&ModuleAlgebra, &ModuleAlgebra, &ModuleAlgebra),
    f: &TwistOperator,
) -> Result<CheckReport, DeformError> {
    let br = Braider::new(f)?;
    let mods = [triple.0, triple.1, triple.2];
    let ctx = br.ctx(&mods);
    let mut rep = CheckReport::new(
        "moreids",
        format!("gamma={gamma} on {}⊗{}⊗{}", triple.0.name, triple.1.name, triple.2.name),
    );
    let fg = f.component(gamma);
    let below: Vec<RootVector> = RootVector::box_below(gamma);
    for key in ctx.basis_tuples(None) {
        let v = tv_basis(key.clone(), ctx.wo, ctx.ell);
        for (leg, primed, label) in [(0usize, true, "(i)"), (1usize, false, "(ii)")] {
            let lhs = ctx.twist_delta(fg, &v, leg)?;
            let mut rhs = TensorVec::new();
            for zeta in &below {
                let rest = gamma - zeta;
                let x = ctx.letters(&v, 1, &br.omega_letters(zeta, primed));
                let x = ctx.twist_terms(f.component(zeta), &x, 0, 2);
                let x = if leg == 0 {
                    ctx.twist_terms(f.component(&rest), &x, 1, 2)
                } else {
                    ctx.twist_terms(f.component(&rest), &x, 0, 1)
                };
                rhs = tv_sum(&rhs, &x);
            }
            rep.expect(lhs == rhs, || format!("{label} at {}", ctx.show(&key)));
        }
        for (slots, primed, label) in [((0usize, 1usize), false, "(iii)"), ((1, 2), true, "(iv)")] {
            let fz = f.component(gamma);
            let lhs = br.ftilde(&mods, &ctx.twist_terms(fz, &v, 0, 2), slots.0, slots.1)?;
            let x = br.ftilde(&mods, &v, slots.0, slots.1)?;
            let x = ctx.letters(&x, 1, &br.omega_letters(gamma, primed));
            let rhs = ctx.twist_terms(fz, &x, 0, 2);
            rep.expect(lhs == rhs, || format!("{label} at {}", ctx.show(&key)));
        }
    }
    Ok(rep)
}

/// The three shift identities of `f_{χ,ψ}` for offsets of height at most `h`, over
/// all root-of-unity characters of the given parameters.
pub fn check_fid(params: &QGroupParams, h: i64) -> CheckReport {
    let mut rep = CheckReport::new("fid", format!("n={}, ell={}", params.n, params.ell));
    let rank = params.rank();
    let chars = crate::rtwist::root_of_unity_characters(params);
    let mut vecs = Vec::new();
    for k in 0..=h {
        vecs.extend(RootVector::of_height(rank, k));
    }
    let th = |k: i64| CycScalar::theta_power(params.ell, k);
    let step = (chars.len() / 4).max(1);
    for chi in chars.iter().step_by(step) {
        for psi in chars.iter().rev().step_by(step) {
            for l in &vecs {
                for m in &vecs {
                    let neg = l.scaled(-1);
                    let a = LaurentScalar::from_cyc(th(group_pair_exp(params, m, &neg)), DEFAULT_WORKING_ORDER);
                    let b = crate::rtwist::lambda_hat(m, params).eval(&neg, false);
                    let c = crate::rtwist::lambda_hat(l, params).eval(m, true);
                    rep.expect(a == b && b == c, || format!("hat symmetry at {l}, {m}"));
                    for nu in &vecs {
                        let lhs = f_scalar(chi, psi, &(l + m), nu, params);
                        let rhs = (&f_scalar(chi, psi, l, nu, params) * &psi.eval(&m.scaled(-1), false))
                            .scale(&th(group_pair_exp(params, nu, &m.scaled(-1))));
                        rep.expect(lhs == rhs, || format!("first shift at {l}, {m}, {nu}"));
                        let lhs = f_scalar(chi, psi, l, &(m + nu), params);
                        let rhs = (&f_scalar(chi, psi, l, m, params) * &chi.eval(nu, true))
                            .scale(&th(group_pair_exp(params, nu, &l.scaled(-1))));
                        rep.expect(lhs == rhs, || format!("second shift at {l}, {m}, {nu}"));
                    }
                }
            }
        }
    }
    rep
}

// ---- exp(t ∂_x ⊗ ∂_y) ---------------------------------------------------------

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn falling(a: u32, k: u32) -> BigInt {
    (0..k).map(|j| BigInt::from(a as i64 - j as i64)).product()
}

/// `K[x, y]` twisted by `exp(t ∂_x ⊗ ∂_y)`, truncated at `working_order`.
pub fn exp_udf_demo(working_order: i64) -> Result<DeformedProduct, DeformError> {
    let maxdeg = (working_order.max(1) as u32).max(3);
    let base = crate::modalg::commutative_plane(maxdeg, working_order);
    let ell = base.ell();
    let exps: Vec<(u32, u32)> = base
        .labels
        .iter()
        .map(|l| {
            let (a, b) = crate::modalg::parse_xy_label(l).expect("x^a*y^b label");
            (a, b)
        })
        .collect();
    let index: BTreeMap<(u32, u32), usize> = exps.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut table = BTreeMap::new();
    for (p, &(a, b)) in exps.iter().enumerate() {
        for (q, &(c, d)) in exps.iter().enumerate() {
            if a + b + c + d > maxdeg {
                continue;
            }
            let mut out = ModuleElement::zero();
            for k in 0..=a.min(d) {
                if k as i64 > working_order {
                    break;
                }
                let coeff = Rational::new(falling(a, k) * falling(d, k), factorial(k));
                let c0 = CycScalar::from_rational(ell, coeff);
                let target = index[&(a - k + c, b + d - k)];
                out.add_term(target, &LaurentScalar::monomial(c0, k as i64, working_order));
            }
            table.insert((p, q), out);
        }
    }
    Ok(DeformedProduct { base, twist_name: "exp(t d/dx ⊗ d/dy)".into(), working_order, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modalg::{natural_module, quantum_plane, star_action, super_line, tensor_algebra, truncate_ideal};
    use crate::rtwist::twisting_element;

    fn ok(rep: CheckReport) {
        assert!(rep.passed(), "{rep}");
    }

    fn params(n: usize, ell: u32, y: u32, z: u32) -> QGroupParams {
        QGroupParams::new(n, ell, y, z).unwrap()
    }

    fn twist(p: &QGroupParams) -> TwistOperator {
        TwistOperator::from_twist(&twisting_element(p).unwrap())
    }

    #[test]
    fn identity_twist_is_base_product() {
        let p = params(2, 3, 1, 2);
        let a = quantum_plane(&p, 3).unwrap();
        let d = twisted_product(&a, &TwistOperator::identity(&p), 4).unwrap();
        ok(check_mu0(&d).unwrap());
        assert!(deformation_coeffs(&d, 1).unwrap().is_zero());
        ok(check_associativity(&d, 3));
        assert!(matches!(deformation_coeffs(&d, 5), Err(DeformError::OrderTooHigh(5, 4))));
    }

    #[test]
    fn r_fe_on_quantum_plane_pair() {
        // x2 ∗ x1 = x2x1 − 2 (f.x2)(e.x1), and f.x2 = 0
        let p = params(2, 2, 0, 1);
        let a = quantum_plane(&p, 3).unwrap();
        let d = twisted_product(&a, &twist(&p), 4).unwrap();
        let (x1, x2) = (a.label_index("x(1,0)").unwrap(), a.label_index("x(0,1)").unwrap());
        assert_eq!(d.mul_labels(x2, x1).unwrap(), a.mul_labels(x2, x1).unwrap().with_order(4));
        // x1 ∗ x2 = x1x2 − 2 (f.x1)(e.x2) = x1x2 − 2 x2 x1
        let expect = a
            .mul_labels(x1, x2)
            .unwrap()
            .sub(&a.mul_labels(x2, x1).unwrap().scale_cyc(&CycScalar::from_int(2, 2)))
            .with_order(4);
        assert_eq!(d.mul_labels(x1, x2).unwrap(), expect);
        ok(check_associativity(&d, 3));
    }

    #[test]
    fn restricted_twist_identity_on_quantum_plane() {
        let p = QGroupParams::restricted(2, 2, 0, 1).unwrap();
        let a = quantum_plane(&p, 2).unwrap();
        ok(check_twist_identity(&twist(&p), (&a, &a, &a), 3).unwrap());
    }

    #[test]
    fn f_c_on_super_line() {
        let p = params(2, 2, 0, 1);
        let a = super_line(&p, 4).unwrap();
        for c in [1, -2, 3] {
            let f = TwistOperator::f_c(&p, c).unwrap();
            ok(check_twist_identity(&f, (&a, &a, &a), 3).unwrap());
            ok(check_udf_degree(&f, &a).unwrap());
            let d = twisted_product(&a, &f, 4).unwrap();
            ok(check_associativity(&d, 4));
            let mu1 = deformation_coeffs(&d, 1).unwrap();
            ok(check_hochschild_cocycle(&mu1, &a, 4));
            // x ∗ x = x² + c t
            let x = a.label_index("x^1").unwrap();
            let expect = a
                .basis(a.label_index("x^2").unwrap())
                .with_order(4)
                .add(&a.basis(0).with_order(4).shift(1).scale_cyc(&CycScalar::from_int(2, c)));
            assert_eq!(d.mul_labels(x, x).unwrap(), expect);
        }
    }

    #[test]
    fn f_c_fails_where_omega_differs_from_omega_prime() {
        let p = params(2, 2, 0, 1);
        let a = quantum_plane(&p, 3).unwrap();
        let rep = check_twist_identity(&TwistOperator::f_c(&p, 1).unwrap(), (&a, &a, &a), 3).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn truncated_tensor_deformation() {
        let p = params(2, 3, 1, 2);
        let w = star_action(&truncate_ideal(&tensor_algebra(&natural_module(&p), 3).unwrap(), 3).unwrap()).unwrap();
        let f = twist(&p);
        ok(check_udf_degree(&f, &w).unwrap());
        ok(check_twist_identity(&f, (&w, &w, &w), 3).unwrap());
        let d = twisted_product(&w, &f, 4).unwrap();
        ok(check_associativity(&d, 3));
        ok(check_mu0(&d).unwrap());
        ok(check_unit(&d));
        let mu1 = deformation_coeffs(&d, 1).unwrap();
        assert!(!mu1.is_zero());
        ok(check_hochschild_cocycle(&mu1, &d.base, 3));
    }

    fn check_unit(d: &DeformedProduct) -> CheckReport {
        d.check_unit()
    }

    #[test]
    fn negative_controls() {
        let p = params(2, 3, 1, 2);
        let w = star_action(&truncate_ideal(&tensor_algebra(&natural_module(&p), 3).unwrap(), 3).unwrap()).unwrap();
        let f = twist(&p);
        let alpha = RootVector(vec![1]);
        let bad = f.without_component(&alpha);
        let rep = check_twist_identity(&bad, (&w, &w, &w), 4).unwrap();
        assert!(!rep.passed() && rep.witness().is_some());
        let tfree = truncate_ideal(&tensor_algebra(&natural_module(&p), 3).unwrap(), 3).unwrap();
        let rep = check_udf_degree(&f, &tfree).unwrap();
        assert!(!rep.passed());
        assert!(rep.witness().unwrap().contains("not a UDF"));
    }

    #[test]
    fn cocycle_controls() {
        let p = params(2, 3, 1, 2);
        let a = quantum_plane(&p, 3).unwrap();
        let labels = a.labels_up_to(3);
        let wo = a.working_order;
        let mut coboundary = Bilinear { working_order: wo, entries: BTreeMap::new() };
        let mut unit_proj = Bilinear { working_order: wo, entries: BTreeMap::new() };
        for &x in &labels {
            for &y in &labels {
                if a.degrees[x] + a.degrees[y] <= 3 {
                    coboundary.entries.insert((x, y), a.mul_labels(x, y).unwrap());
                    let mut u = ModuleElement::zero();
                    if let Some(c) = a.mul_labels(x, y).unwrap().coeff(a.unit.unwrap()) {
                        u.add_term(a.unit.unwrap(), c);
                    }
                    unit_proj.entries.insert((x, y), u);
                }
            }
        }
        ok(check_hochschild_cocycle(&coboundary.clone_zero(), &a, 3));
        ok(check_hochschild_cocycle(&coboundary, &a, 3));
        assert!(!check_hochschild_cocycle(&unit_proj, &a, 3).passed());
    }

    impl Bilinear {
        fn clone_zero(&self) -> Bilinear {
            let entries = self.entries.keys().map(|k| (*k, ModuleElement::zero())).collect();
            Bilinear { working_order: self.working_order, entries }
        }
    }

    #[test]
    fn braiding_suite_sl2() {
        let p = params(2, 2, 0, 1);
        let v = natural_module(&p);
        let f = twist(&p);
        let b = braiding(&v, &v, &f).unwrap();
        ok(check_module_hom(&b).unwrap());
        ok(check_qybe(&v, &v, &v, &f).unwrap());
        ok(check_hexagon(&v, &v, &v, &f).unwrap());
    }

    #[test]
    fn operator_lemmas_sl2() {
        let p = params(2, 3, 1, 2);
        let v = natural_module(&p);
        let f = twist(&p);
        for k in 0..=3 {
            ok(check_wef(&RootVector(vec![k]), 1, (&v, &v), &f).unwrap());
            ok(check_moreids(&RootVector(vec![k]), (&v, &v, &v), &f).unwrap());
        }
        ok(check_fid(&p, 2));
    }

    #[test]
    fn exp_demo() {
        let d = exp_udf_demo(3).unwrap();
        ok(check_associativity(&d, d.base.maxdeg));
        let x = d.base.label_index("x").unwrap();
        let y = d.base.label_index("y").unwrap();
        let diff = d.mul_labels(x, y).unwrap().sub(&d.mul_labels(y, x).unwrap());
        assert_eq!(diff, d.base.basis(d.base.unit.unwrap()).with_order(3).shift(1));
        let xx = d.base.label_index("x^2").unwrap();
        assert_eq!(d.mul_labels(x, x).unwrap(), d.base.basis(xx).with_order(3));
    }
}
