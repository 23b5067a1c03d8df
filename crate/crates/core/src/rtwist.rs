//! Twisting data: the element `F = Σ_ζ F_ζ`, the restricted R-matrix factors,
//! the weight scalars `f_{χ,ψ}` and the group cocycle `ξ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::ncalg::RootVector;
use crate::pairing::{dual_basis_plus, group_dual_basis, group_exponents, PairingError};
use crate::qgroup::{AlgebraElement, QGroup, QGroupParams, TensorElement};
use crate::scalars::{CycScalar, LaurentScalar, DEFAULT_WORKING_ORDER};

/// Character of `U⁰`: values on `ω_1..ω_{n−1}` and `ω'_1..ω'_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightChar {
    pub values_w: Vec<LaurentScalar>,
    pub values_wp: Vec<LaurentScalar>,
}

impl WeightChar {
    pub fn trivial(rank: usize, ell: u32, wo: i64) -> Self {
        WeightChar {
            values_w: vec![LaurentScalar::one(ell, wo); rank],
            values_wp: vec![LaurentScalar::one(ell, wo); rank],
        }
    }

    /// Character with `θ`-exponent values.
    pub fn from_exponents(ell: u32, wo: i64, w: &[i64], wp: &[i64]) -> Self {
        let v = |k: &i64| LaurentScalar::from_cyc(CycScalar::theta_power(ell, *k), wo);
        WeightChar { values_w: w.iter().map(v).collect(), values_wp: wp.iter().map(v).collect() }
    }

    pub fn rank(&self) -> usize {
        self.values_w.len()
    }

    pub fn mul(&self, o: &WeightChar) -> WeightChar {
        WeightChar {
            values_w: self.values_w.iter().zip(&o.values_w).map(|(a, b)| a * b).collect(),
            values_wp: self.values_wp.iter().zip(&o.values_wp).map(|(a, b)| a * b).collect(),
        }
    }

    /// `χ(ω_λ)` (or `χ(ω'_λ)`) for a possibly negative exponent vector.
    pub fn eval(&self, lambda: &RootVector, primed: bool) -> LaurentScalar {
        let vals = if primed { &self.values_wp } else { &self.values_w };
        let mut acc = LaurentScalar::one(vals[0].ell(), vals[0].working_order());
        for (v, &k) in vals.iter().zip(&lambda.0) {
            acc = &acc * &v.pow(k).expect("character values are invertible");
        }
        acc
    }
}

impl fmt::Display for WeightChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.values_w.iter().map(|v| v.to_string()).collect();
        let wp: Vec<String> = self.values_wp.iter().map(|v| v.to_string()).collect();
        write!(f, "w: [{}], wp: [{}]", w.join(", "), wp.join(", "))
    }
}

/// `λ̂(ω_j) = r^{⟨ε_j,λ⟩} s^{⟨ε_{j+1},λ⟩}`, `λ̂(ω'_j) = r^{⟨ε_{j+1},λ⟩} s^{⟨ε_j,λ⟩}`.
pub fn lambda_hat(lambda: &RootVector, params: &QGroupParams) -> WeightChar {
    let rank = params.rank();
    let w: Vec<i64> = (1..=rank).map(|j| params.hat_exp(lambda, j, false)).collect();
    let wp: Vec<i64> = (1..=rank).map(|j| params.hat_exp(lambda, j, true)).collect();
    WeightChar::from_exponents(params.ell, DEFAULT_WORKING_ORDER, &w, &wp)
}

/// `F = Σ_ζ F_ζ` with `F_ζ = Σ_k v_k ⊗ u_k`.
#[derive(Debug, Clone)]
pub struct TwistElement {
    pub params: QGroupParams,
    pub components: BTreeMap<RootVector, TensorElement>,
}

impl TwistElement {
    pub fn component(&self, zeta: &RootVector) -> Option<&TensorElement> {
        self.components.get(zeta)
    }

    /// `F_ζ`, or zero when `ζ ∉ Q⁺` or `Ū⁺_ζ = 0`.
    pub fn component_or_zero(&self, zeta: &RootVector) -> TensorElement {
        self.components
            .get(zeta)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(self.params.ell, 2))
    }

    pub fn total(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.params.ell, 2);
        for c in self.components.values() {
            out = out.add(c);
        }
        out
    }

    /// Copy with one component removed.
    pub fn without(&self, zeta: &RootVector) -> TwistElement {
        let mut t = self.clone();
        t.components.remove(zeta);
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut comps = serde_json::Map::new();
        for (z, t) in &self.components {
            let terms: Vec<serde_json::Value> = t
                .terms
                .iter()
                .map(|(k, c)| {
                    serde_json::json!({
                        "left": k[0].display(&self.params),
                        "right": k[1].display(&self.params),
                        "coeff": c.to_string(),
                    })
                })
                .collect();
            comps.insert(z.to_string(), serde_json::Value::Array(terms));
        }
        serde_json::Value::Object(comps)
    }
}

/// The twisting element built from dual PBW bases.
pub fn twisting_element(params: &QGroupParams) -> Result<TwistElement, PairingError> {
    let qg = QGroup::get(params)?;
    let mut components = BTreeMap::new();
    for zeta in qg.truncated_degrees() {
        let u = qg.pbw_basis_plus(&zeta);
        let v = dual_basis_plus(&qg, &zeta)?;
        let mut t = TensorElement::zero(params.ell, 2);
        for (vk, uk) in v.iter().zip(&u) {
            let ue = AlgebraElement::monomial(uk.clone(), qg.one_scalar());
            t = t.add(&TensorElement::pure(vk, &ue));
        }
        components.insert(zeta, t);
    }
    Ok(TwistElement { params: params.clone(), components })
}

#[derive(Debug, Clone)]
pub struct RFactors {
    pub r_ef: TensorElement,
    pub r_fe: TensorElement,
    pub r_w: TensorElement,
    pub r_wp: TensorElement,
}

/// `R_{e,f} = Σ ε⊗ε*`, `R_{f,e} = Σ ε*⊗ε`, `R_{ω,ω'} = Σ w⊗w*` and its flip.
pub fn r_factors(params: &QGroupParams) -> Result<RFactors, PairingError> {
    let params = params.clone().with_restricted(true);
    let qg = QGroup::get(&params)?;
    let f = twisting_element(&params)?;
    let r_fe = f.total();
    let mut r_ef = TensorElement::zero(params.ell, 2);
    for (k, c) in &r_fe.terms {
        r_ef.add_term(vec![k[1].clone(), k[0].clone()], c.clone());
    }
    let mut r_w = TensorElement::zero(params.ell, 2);
    let mut r_wp = TensorElement::zero(params.ell, 2);
    for (w, dual) in group_dual_basis(&qg)? {
        let we = AlgebraElement::monomial(w, qg.one_scalar());
        r_w = r_w.add(&TensorElement::pure(&we, &dual));
        r_wp = r_wp.add(&TensorElement::pure(&dual, &we));
    }
    Ok(RFactors { r_ef, r_fe, r_w, r_wp })
}

/// `(ω'_μ | ω_λ)` for arbitrary integer vectors, as a `θ`-exponent.
pub fn group_pair_exp(params: &QGroupParams, mu: &RootVector, lambda: &RootVector) -> i64 {
    let rank = params.rank();
    let mut k = 0;
    for i in 0..rank {
        for j in 0..rank {
            k += mu.0[i] * lambda.0[j] * params.pair_exp(i + 1, j + 1);
        }
    }
    k
}

/// `f_{χ,ψ}(λ, μ) = ψ(ω_λ^{−1}) χ(ω'_μ) (ω'_μ | ω_λ^{−1})`.
pub fn f_scalar(
    chi: &WeightChar,
    psi: &WeightChar,
    lambda: &RootVector,
    mu: &RootVector,
    params: &QGroupParams,
) -> LaurentScalar {
    let neg = lambda.scaled(-1);
    let p = CycScalar::theta_power(params.ell, group_pair_exp(params, mu, &neg));
    let a = psi.eval(&neg, false);
    let b = chi.eval(mu, true);
    (&a * &b).scale(&p)
}

/// `ξ(χ, ψ) = Σ_{w∈Ω} χ(w*) ψ(w)`.
pub fn xi(chi: &WeightChar, psi: &WeightChar, params: &QGroupParams) -> Result<LaurentScalar, PairingError> {
    let qg = QGroup::get(&params.clone().with_restricted(true))?;
    let ell = params.ell;
    let wo = chi.values_w[0].working_order();
    let mut acc = LaurentScalar::zero(ell, wo);
    for (w, dual) in group_dual_basis(&qg)? {
        let mut chi_dual = LaurentScalar::zero(ell, wo);
        for (m, c) in &dual.terms {
            chi_dual += &chi.eval(&RootVector(m.wp.clone()), true).scale(c);
        }
        acc += &(&chi_dual * &psi.eval(&RootVector(w.w.clone()), false));
    }
    Ok(acc)
}

/// All characters whose values on `ω_i`, `ω'_i` are `ℓ`-th roots of unity.
pub fn root_of_unity_characters(params: &QGroupParams) -> Vec<WeightChar> {
    let rank = params.rank();
    group_exponents(2 * rank, params.ell)
        .into_iter()
        .map(|e| WeightChar::from_exponents(params.ell, DEFAULT_WORKING_ORDER, &e[..rank], &e[rank..]))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct XiReport {
    pub characters: usize,
    pub nowhere_zero: bool,
    pub cocycle_failures: usize,
}

/// Nonvanishing and the 2-cocycle identity over all root-of-unity character triples.
pub fn check_xi_cocycle(params: &QGroupParams) -> Result<XiReport, PairingError> {
    let chars = root_of_unity_characters(params);
    let k = chars.len();
    let mut table = vec![vec![None; k]; k];
    let index = |c: &WeightChar| chars.iter().position(|d| d == c).expect("closed under products");
    let mut nowhere_zero = true;
    for a in 0..k {
        for b in 0..k {
            let v = xi(&chars[a], &chars[b], params)?;
            nowhere_zero &= !v.is_zero();
            table[a][b] = Some(v);
        }
    }
    let x = |a: usize, b: usize| table[a][b].clone().expect("filled");
    let mut failures = 0;
    for a in 0..k {
        for b in 0..k {
            let ab = index(&chars[a].mul(&chars[b]));
            for c in 0..k {
                let bc = index(&chars[b].mul(&chars[c]));
                if &x(ab, c) * &x(a, b) != &x(a, bc) * &x(b, c) {
                    failures += 1;
                }
            }
        }
    }
    Ok(XiReport { characters: k, nowhere_zero, cocycle_failures: failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, ell: u32, y: u32, z: u32) -> QGroupParams {
        QGroupParams::restricted(n, ell, y, z).unwrap()
    }

    #[test]
    fn lambda_hat_examples() {
        let params = p(2, 2, 0, 1);
        let c = lambda_hat(&RootVector(vec![1]), &params);
        let minus = LaurentScalar::from_cyc(CycScalar::from_int(2, -1), DEFAULT_WORKING_ORDER);
        assert_eq!(c.values_w[0], minus);
        assert_eq!(c.values_wp[0], minus);
        let params3 = p(3, 3, 1, 2);
        let c = lambda_hat(&RootVector(vec![0, 1]), &params3);
        assert_eq!(c.values_w[0].as_cyc().unwrap(), params3.s());
    }

    #[test]
    fn sl2_twist_is_r_fe() {
        let params = p(2, 2, 0, 1);
        let f = twisting_element(&params).unwrap();
        let qg = QGroup::get(&params).unwrap();
        let expect = TensorElement::pure(&qg.one(), &qg.one())
            .add(&TensorElement::pure(&qg.f(1), &qg.e(1)).scale(&CycScalar::from_int(2, -2)));
        assert_eq!(f.total(), expect);
        assert_eq!(r_factors(&params).unwrap().r_fe, expect);
    }

    #[test]
    fn f_scalar_shift_identity() {
        let params = p(3, 3, 1, 2);
        let chi = WeightChar::from_exponents(3, 8, &[1, 2], &[0, 1]);
        let psi = WeightChar::from_exponents(3, 8, &[2, 0], &[1, 1]);
        let (l, m, nu) = (RootVector(vec![1, -1]), RootVector(vec![0, 2]), RootVector(vec![1, 1]));
        let lhs = f_scalar(&chi, &psi, &(&l + &m), &nu, &params);
        let shift = CycScalar::theta_power(3, group_pair_exp(&params, &nu, &m.scaled(-1)));
        let rhs = (&f_scalar(&chi, &psi, &l, &nu, &params) * &psi.eval(&m.scaled(-1), false)).scale(&shift);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn xi_examples() {
        let params = p(2, 2, 0, 1);
        let chi = WeightChar::from_exponents(2, 8, &[0], &[1]);
        let psi = WeightChar::from_exponents(2, 8, &[1], &[0]);
        assert_eq!(xi(&chi, &psi, &params).unwrap(), psi.values_w[0]);
        let report = check_xi_cocycle(&params).unwrap();
        assert!(report.nowhere_zero);
        assert_eq!(report.cocycle_failures, 0);
    }
}
