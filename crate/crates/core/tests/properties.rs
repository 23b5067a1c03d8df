use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use qdeform_core::deform::{deformation_coeffs, twisted_product, DeformedProduct, TwistOperator};
use qdeform_core::modalg::{natural_module, quantum_plane, star_action, tensor_algebra, truncate_ideal, ModuleElement};
use qdeform_core::ncalg::{graded_component, ncpoly_add, ncpoly_mul, word_degree, GenSymbol, NCPoly, RootVector, Word};
use qdeform_core::pairing::{dual_basis_plus, pair};
use qdeform_core::qgroup::{AlgebraElement, QGroup, QGroupParams};
use qdeform_core::rtwist::twisting_element;
use qdeform_core::scalars::{gcd, CycScalar, LaurentScalar, Rational};

fn cyc(ell: u32, coeffs: &[i64]) -> CycScalar {
    let q: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
    CycScalar::from_poly(ell, &q)
}

fn cyc_strategy(ell: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec(-5i64..=5, ell as usize).prop_map(move |c| cyc(ell, &c))
}

fn laurent_strategy(ell: u32, wo: i64) -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((0i64..=wo, prop::collection::vec(-3i64..=3, 2)), 0..4).prop_map(move |ts| {
        let terms: Vec<(i64, CycScalar)> = ts.iter().map(|(k, c)| (*k, cyc(ell, c))).collect();
        LaurentScalar::from_terms(ell, wo, &terms)
    })
}

fn letter_strategy() -> impl Strategy<Value = GenSymbol> {
    (0u8..4, 1usize..=2, prop::bool::ANY).prop_map(|(k, i, pos)| match k {
        0 => GenSymbol::e(i),
        1 => GenSymbol::f(i),
        2 => GenSymbol::w(i, if pos { 1 } else { -1 }),
        _ => GenSymbol::wp(i, if pos { 1 } else { -1 }),
    })
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(), 0..4).prop_map(Word)
}

fn poly_strategy() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word_strategy(), -3i64..=3), 0..4).prop_map(|ts| {
        let mut p = NCPoly::zero(3, 4);
        for (w, c) in ts {
            p.add_term(w, LaurentScalar::from_cyc(CycScalar::from_int(3, c), 4));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyc_field_axioms((a, b, c) in prop::sample::select(vec![2u32, 3, 4, 5, 6])
        .prop_flat_map(|ell| (cyc_strategy(ell), cyc_strategy(ell), cyc_strategy(ell))))
    {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn theta_power_order(ell in 2u32..=12, k in -30i64..30) {
        let expect = ell as i64 / gcd(ell as i64, k.rem_euclid(ell as i64));
        prop_assert_eq!(CycScalar::theta_power(ell, k).root_order(), Some(expect as u32));
    }

    #[test]
    fn laurent_ring_laws(a in laurent_strategy(3, 5), b in laurent_strategy(3, 5), c in laurent_strategy(3, 5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn laurent_truncation_commutes(a in laurent_strategy(2, 6), b in laurent_strategy(2, 6)) {
        let (n, m) = (4, 6);
        let high = &a.with_order(m) * &b.with_order(m);
        let low = &a.with_order(n) * &b.with_order(n);
        prop_assert_eq!(high.with_order(n), low);
    }

    #[test]
    fn word_degree_additive(u in word_strategy(), v in word_strategy()) {
        prop_assert_eq!(word_degree(&u.concat(&v), 2), &word_degree(&u, 2) + &word_degree(&v, 2));
    }

    #[test]
    fn ncpoly_associative_and_graded(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(ncpoly_mul(&ncpoly_mul(&p, &q), &r), ncpoly_mul(&p, &ncpoly_mul(&q, &r)));
        let pq = ncpoly_mul(&p, &q);
        let pdeg: BTreeSet<RootVector> = p.terms.keys().map(|w| word_degree(w, 2)).collect();
        let qdeg: BTreeSet<RootVector> = q.terms.keys().map(|w| word_degree(w, 2)).collect();
        for a in &pdeg {
            for b in &qdeg {
                let zeta = a + b;
                let mut sum = NCPoly::zero(3, 4);
                for eta in &pdeg {
                    let piece = ncpoly_mul(&graded_component(&p, eta), &graded_component(&q, &(&zeta - eta)));
                    sum = ncpoly_add(&sum, &piece);
                }
                prop_assert_eq!(graded_component(&pq, &zeta), sum);
            }
        }
    }
}

fn truncated_w3() -> DeformedProduct {
    let p = QGroupParams::new(2, 3, 1, 2).unwrap();
    let w = star_action(&truncate_ideal(&tensor_algebra(&natural_module(&p), 3).unwrap(), 3).unwrap()).unwrap();
    let f = TwistOperator::from_twist(&twisting_element(&p).unwrap());
    twisted_product(&w, &f, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The `t^i` layer of `x ∗ y` for `t`-free combinations is `μ_i(x, y)`, and
    /// `μ_i` is bilinear.
    #[test]
    fn deformation_layers_bilinear(
        xs in prop::collection::vec(-3i64..=3, 7),
        ys in prop::collection::vec(-3i64..=3, 7),
        zs in prop::collection::vec(-3i64..=3, 7),
        alpha in -3i64..=3,
        layer in 0i64..=2,
    ) {
        use std::sync::OnceLock;
        static D: OnceLock<DeformedProduct> = OnceLock::new();
        let d = D.get_or_init(truncated_w3);
        let wo = d.working_order;
        let combo = |cs: &[i64]| {
            let mut m = ModuleElement::zero();
            for (i, &c) in cs.iter().enumerate().take(d.base.dim()) {
                m.add_term(i, &LaurentScalar::from_cyc(CycScalar::from_int(3, c), wo));
            }
            m
        };
        let (x, y, z) = (combo(&xs), combo(&ys), combo(&zs));
        let mu = deformation_coeffs(d, layer).unwrap();
        let full = d.mul(&x, &y).unwrap();
        let mut from_layer = ModuleElement::zero();
        for (j, c) in full.t_layer(layer) {
            from_layer.add_term(j, &LaurentScalar::from_cyc(c, wo));
        }
        prop_assert_eq!(mu.apply(&x, &y).unwrap(), from_layer);
        let a = CycScalar::from_int(3, alpha);
        let lhs = mu.apply(&x.scale_cyc(&a).add(&z), &y).unwrap();
        let rhs = mu.apply(&x, &y).unwrap().scale_cyc(&a).add(&mu.apply(&z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = mu.apply(&y, &x.scale_cyc(&a).add(&z)).unwrap();
        let rhs = mu.apply(&y, &x).unwrap().scale_cyc(&a).add(&mu.apply(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn deformed_unit_law() {
    let d = truncated_w3();
    let rep = d.check_unit();
    assert!(rep.passed(), "{rep}");
    let p = QGroupParams::new(2, 2, 0, 1).unwrap();
    let qp = quantum_plane(&p, 3).unwrap();
    let f = TwistOperator::from_twist(&twisting_element(&p).unwrap());
    let rep = twisted_product(&qp, &f, 4).unwrap().check_unit();
    assert!(rep.passed(), "{rep}");
}

fn param_sets() -> Vec<QGroupParams> {
    [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)]
        .into_iter()
        .map(|(n, ell, y, z)| QGroupParams::new(n, ell, y, z).unwrap())
        .collect()
}

#[test]
fn pairing_degree_orthogonality() {
    for p in param_sets() {
        let qg = QGroup::get(&p).unwrap();
        let one = qg.one_scalar();
        let mut degrees = Vec::new();
        for h in 1..=3 {
            degrees.extend(RootVector::of_height(p.rank(), h));
        }
        for a in &degrees {
            for b in &degrees {
                if a == b {
                    continue;
                }
                for ym in qg.pbw_basis_minus(a) {
                    for xm in qg.pbw_basis_plus(b) {
                        let y = AlgebraElement::monomial(ym.clone(), one.clone());
                        let x = AlgebraElement::monomial(xm, one.clone());
                        assert!(pair(&qg, &y, &x).unwrap().is_zero(), "{a} vs {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn pairing_duality() {
    for p in param_sets() {
        let qg = QGroup::get(&p).unwrap();
        for zeta in qg.truncated_degrees() {
            let plus = qg.pbw_basis_plus(&zeta);
            let dual = dual_basis_plus(&qg, &zeta).unwrap();
            for (k, v) in dual.iter().enumerate() {
                for (j, u) in plus.iter().enumerate() {
                    let val = pair(&qg, v, &AlgebraElement::monomial(u.clone(), qg.one_scalar())).unwrap();
                    assert_eq!(val.is_one(), k == j, "{zeta}: ({k}, {j})");
                    assert!(val.is_one() || val.is_zero());
                }
            }
        }
    }
}

/// `(ε⊗id)(F) = 1 = (id⊗ε)(F)`.
#[test]
fn twist_counit_law() {
    for p in param_sets() {
        let qg = QGroup::get(&p).unwrap();
        let f = twisting_element(&p).unwrap().total();
        let mut left = qg.zero();
        let mut right = qg.zero();
        for (k, c) in &f.terms {
            let a = AlgebraElement::monomial(k[1].clone(), c.clone()).scale(&qg.counit_mono(&k[0]));
            let b = AlgebraElement::monomial(k[0].clone(), c.clone()).scale(&qg.counit_mono(&k[1]));
            left = left.add(&a);
            right = right.add(&b);
        }
        assert_eq!(left, qg.one());
        assert_eq!(right, qg.one());
    }
}
