use super::*;
use crate::ncalg::GenSymbol;

fn qg(n: usize, ell: u32, y: u32, z: u32) -> Arc<QGroup> {
    QGroup::get(&QGroupParams::new(n, ell, y, z).unwrap()).unwrap()
}

#[test]
fn params_validation() {
    assert!(QGroupParams::new(2, 2, 0, 1).is_ok());
    assert!(QGroupParams::new(2, 4, 0, 2).is_err());
    assert!(QGroupParams::new(2, 3, 1, 1).is_err());
    assert!(QGroupParams::new(1, 3, 1, 2).is_err());
    assert_eq!(QGroupParams::default_height_bound(3, 2), 5);
}

#[test]
fn ef_commutator() {
    let g = qg(2, 3, 1, 2);
    let ef = g.mul(&g.e(1), &g.f(1)).unwrap();
    let fe = g.mul(&g.f(1), &g.e(1)).unwrap();
    let inv = (&g.params.r() - &g.params.s()).inv().unwrap();
    let expect = g.w(1).sub(&g.wp(1)).scale(&inv);
    assert_eq!(ef.sub(&fe), expect);
}

#[test]
fn group_conjugation() {
    let g = qg(3, 3, 1, 2);
    // ω_1 e_1 ω_1⁻¹ = r^{⟨ε_1,α_1⟩} s^{⟨ε_2,α_1⟩} e_1 = r s⁻¹ e_1
    let winv = g.gen(GenKind::W, 1, -1).unwrap();
    let x = g.mul_all(&[&g.w(1), &g.e(1), &winv]).unwrap();
    let c = &g.params.r() * &g.params.s().inv().unwrap();
    assert_eq!(x, g.e(1).scale(&c));
}

#[test]
fn relations_hold() {
    for (n, ell, y, z) in [(2, 2, 0, 1), (3, 2, 0, 1), (2, 3, 1, 2)] {
        let g = qg(n, ell, y, z);
        assert!(g.check_relations().unwrap().is_empty(), "{n} {ell}");
    }
}

#[test]
fn pbw_dimensions() {
    let g = qg(3, 2, 0, 1);
    assert!(g.check_pbw_dimension(4).unwrap() > 0);
    let zeta = RootVector(vec![1, 1]);
    assert_eq!(g.pbw_basis_plus(&zeta).len(), 2);
}

#[test]
fn root_vector_words() {
    let g = qg(3, 3, 1, 2);
    let e21 = g.build_e(2, 1).unwrap();
    let w: Word = "e2*e1".parse().unwrap();
    let v: Word = "e1*e2".parse().unwrap();
    let rinv = g.params.r().inv().unwrap();
    let direct = g
        .normal_form_word(&w)
        .unwrap()
        .sub(&g.normal_form_word(&v).unwrap().scale(&rinv));
    assert_eq!(e21, direct);
}

#[test]
fn restricted_truncation() {
    let p = QGroupParams::restricted(2, 2, 0, 1).unwrap();
    let g = QGroup::get(&p).unwrap();
    assert!(g.mul(&g.e(1), &g.e(1)).unwrap().is_zero());
    let w2 = g.pow(&g.w(1), 2).unwrap();
    assert_eq!(w2, g.one());
}

#[test]
fn hopf_axioms_small() {
    let g = qg(2, 3, 1, 2);
    assert!(g.check_hopf_axioms(2).unwrap().is_empty());
}

#[test]
fn closed_coproducts() {
    let g = qg(3, 2, 0, 1);
    assert!(g.check_delta_closed_forms().unwrap().is_empty());
}

#[test]
fn p_parts_commutator() {
    let g = qg(3, 2, 0, 1);
    let x = g.mul(&g.e(1), &g.e(2)).unwrap();
    let parts = g.extract_p_plus(&x).unwrap();
    let inv = (&g.params.s() - &g.params.r()).inv().unwrap();
    for i in 1..=2 {
        let lhs = g.mul(&g.f(i), &x).unwrap().sub(&g.mul(&x, &g.f(i)).unwrap());
        let rhs = g
            .mul(&parts.p[i - 1], &g.w(i))
            .unwrap()
            .sub(&g.mul(&g.wp(i), &parts.p_prime[i - 1]).unwrap())
            .scale(&inv);
        assert_eq!(lhs, rhs, "i = {i}");
    }
}

#[test]
fn monomial_display() {
    let g = qg(3, 2, 0, 1);
    let x = g.mul_all(&[&g.build_f(2, 1).unwrap(), &g.w(1), &g.e(2)]).unwrap();
    let (m, _) = x.terms.iter().next().unwrap();
    assert_eq!(m.display(&g.params), "F(2,1)*w1*e2");
    let _ = GenSymbol::e(1);
}

#[test]
fn xy_identities() {
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)] {
        let p = QGroupParams::restricted(n, ell, y, z).unwrap();
        let g = QGroup::get(&p).unwrap();
        assert!(g.check_xy_identities(3).unwrap().is_empty(), "{n} {ell}");
    }
}
