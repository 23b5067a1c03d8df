//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use qdeform_core::deform::{
    check_associativity, check_hexagon, check_hochschild_cocycle, check_moreids, check_module_hom, check_mu0,
    check_qybe, check_twist_identity, check_udf_degree, check_wef, deformation_coeffs, exp_udf_demo, braiding,
    twisted_product, TwistOperator,
};
use qdeform_core::modalg::{
    natural_module, quantum_plane, smash_product, star_action, super_line, tensor_algebra, truncate_ideal, ModuleAlgebra,
};
use qdeform_core::ncalg::RootVector;
use qdeform_core::pairing::{check_relprime, gram_plus, group_dual_basis, radical_check, PairingError};
use qdeform_core::qgroup::{QGroup, QGroupParams, TensorElement};
use qdeform_core::report::CheckReport;
use qdeform_core::rtwist::{check_xi_cocycle, twisting_element};
use qdeform_core::scalars::CycScalar;

type Outcome = Result<(bool, Vec<String>), String>;

fn params(n: usize, ell: u32, y: u32, z: u32) -> QGroupParams {
    QGroupParams::new(n, ell, y, z).expect("valid parameters")
}

fn twist(p: &QGroupParams) -> Result<TwistOperator, String> {
    Ok(TwistOperator::from_twist(&twisting_element(p).map_err(|e| e.to_string())?))
}

/// Collects sub-check results; failures become notes.
struct Tally {
    ok: bool,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, notes: Vec::new() }
    }

    fn report(&mut self, rep: CheckReport) {
        if !rep.passed() {
            self.ok = false;
            self.notes.push(rep.to_string());
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn done(self) -> Outcome {
        Ok((self.ok, self.notes))
    }
}

fn c1() -> Outcome {
    let p = QGroupParams::restricted(2, 2, 0, 1).map_err(|e| e.to_string())?;
    let qg = QGroup::get(&p).map_err(|e| e.to_string())?;
    let f = twisting_element(&p).map_err(|e| e.to_string())?;
    let expect = TensorElement::pure(&qg.one(), &qg.one())
        .add(&TensorElement::pure(&qg.f(1), &qg.e(1)).scale(&CycScalar::from_int(2, -2)));
    let mut t = Tally::new();
    t.require(f.total() == expect, format!("got {}", f.total().display(&p)));
    t.done()
}

fn c2() -> Outcome {
    let p = params(2, 2, 0, 1);
    let qp = star_action(&quantum_plane(&p, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let line = super_line(&p, 3).map_err(|e| e.to_string())?;
    let mut t = Tally::new();
    for c in [1, -2, 3] {
        let f = TwistOperator::f_c(&p, c).map_err(|e| e.to_string())?;
        t.report(check_twist_identity(&f, (&qp, &qp, &qp), 3).map_err(|e| e.to_string())?);
        t.report(check_udf_degree(&f, &qp).map_err(|e| e.to_string())?);
        let control = check_twist_identity(&f, (&line, &line, &line), 3).map_err(|e| e.to_string())?;
        if !t.ok {
            t.note(format!("control with omega = omega' on every factor: {control}"));
        }
    }
    t.done()
}

fn c3() -> Outcome {
    let mut t = Tally::new();
    t.require(check_relprime(2, 0, 1, 2), "relprime(2,0,1,2) should hold");
    t.require(!check_relprime(3, 1, 2, 3), "relprime(3,1,2,3) should fail");
    let e = |e: PairingError| e.to_string();
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)] {
        let qg = QGroup::get(&params(n, ell, y, z)).map_err(|e| e.to_string())?;
        for zeta in qg.truncated_degrees() {
            if qg.pbw_basis_plus(&zeta).is_empty() {
                continue;
            }
            let g = gram_plus(&qg, &zeta).map_err(e)?;
            t.require(g.is_invertible(ell), format!("gram_plus({zeta}) singular at ({n},{ell},{y},{z})"));
        }
    }
    let qg = QGroup::get(&params(3, 3, 1, 2)).map_err(|e| e.to_string())?;
    let mut singular = Vec::new();
    for zeta in qg.truncated_degrees() {
        if qg.pbw_basis_plus(&zeta).is_empty() {
            continue;
        }
        if !gram_plus(&qg, &zeta).map_err(e)?.is_invertible(3) {
            singular.push(zeta.to_string());
        }
    }
    t.require(
        !singular.is_empty(),
        "no singular gram_plus(zeta) for (3,1,2,3): every nonzero truncated degree has an invertible Gram matrix",
    );
    if singular.is_empty() {
        match group_dual_basis(&qg) {
            Err(err) => t.note(format!("degeneracy sits in the group part instead: {err}")),
            Ok(_) => t.note("group pairing is nondegenerate as well"),
        }
    }
    t.done()
}

fn c4() -> Outcome {
    let mut t = Tally::new();
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)] {
        for entry in radical_check(&params(n, ell, y, z)).map_err(|e| e.to_string())? {
            t.require(entry.passed && entry.tested > 0, format!("({n},{ell}) {}", entry.generator));
        }
    }
    t.done()
}

fn c5() -> Outcome {
    let mut t = Tally::new();
    for (n, ell, y, z) in [(2, 2, 0, 1), (3, 2, 0, 1), (2, 3, 1, 2)] {
        let p = params(n, ell, y, z);
        let qg = QGroup::get(&p).map_err(|e| e.to_string())?;
        let tag = format!("({n},{ell},{y},{z})");
        let rel = qg.check_relations().map_err(|e| e.to_string())?;
        t.require(rel.is_empty(), format!("{tag} relations: {rel:?}"));
        let dim = qg.check_pbw_dimension(p.height_bound);
        t.require(dim.is_ok(), format!("{tag} PBW dimension: {dim:?}"));
        let hopf = qg.check_hopf_axioms(3).map_err(|e| e.to_string())?;
        t.require(hopf.is_empty(), format!("{tag} Hopf axioms: {hopf:?}"));
        let closed = qg.check_delta_closed_forms().map_err(|e| e.to_string())?;
        t.require(closed.is_empty(), format!("{tag} closed coproducts: {closed:?}"));
    }
    t.done()
}

fn c6() -> Outcome {
    let mut t = Tally::new();
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)] {
        let qg = QGroup::get(&QGroupParams::restricted(n, ell, y, z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let bad = qg.check_xy_identities(3).map_err(|e| e.to_string())?;
        t.require(bad.is_empty(), format!("({n},{ell}) xy identities: {bad:?}"));
    }
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2)] {
        let p = params(n, ell, y, z);
        let v = natural_module(&p);
        let f = twist(&p)?;
        let qg = QGroup::get(&p).map_err(|e| e.to_string())?;
        let degrees = qg.truncated_degrees();
        for zeta in &degrees {
            for i in 1..=p.rank() {
                for z in [zeta.clone(), zeta + &RootVector::simple(p.rank(), i)] {
                    t.report(check_wef(&z, i, (&v, &v), &f).map_err(|e| e.to_string())?);
                }
            }
            t.report(check_moreids(zeta, (&v, &v, &v), &f).map_err(|e| e.to_string())?);
        }
    }
    t.done()
}

fn c7() -> Outcome {
    let mut t = Tally::new();
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2), (3, 2, 0, 1)] {
        let p = params(n, ell, y, z);
        let v = natural_module(&p);
        let f = twist(&p)?;
        let b = braiding(&v, &v, &f).map_err(|e| e.to_string())?;
        t.report(check_module_hom(&b).map_err(|e| e.to_string())?);
        t.report(check_qybe(&v, &v, &v, &f).map_err(|e| e.to_string())?);
        t.report(check_hexagon(&v, &v, &v, &f).map_err(|e| e.to_string())?);
    }
    t.done()
}

fn deformation(t: &mut Tally, tag: &str, a: &ModuleAlgebra, f: &TwistOperator) -> Result<(), String> {
    let d = twisted_product(a, f, 4).map_err(|e| e.to_string())?;
    let mu1 = deformation_coeffs(&d, 1).map_err(|e| e.to_string())?;
    let reps = [
        check_associativity(&d, 3),
        check_mu0(&d).map_err(|e| e.to_string())?,
        check_hochschild_cocycle(&mu1, &d.base, 3),
    ];
    for rep in reps {
        if !rep.passed() {
            t.ok = false;
            t.note(format!("({tag}) {rep}"));
        }
    }
    Ok(())
}

fn c8() -> Outcome {
    let mut t = Tally::new();
    let p2 = params(2, 2, 0, 1);
    let f2 = twist(&p2)?;
    let qp = star_action(&quantum_plane(&p2, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    deformation(&mut t, "a", &qp, &f2)?;
    if !t.ok {
        let rep = qp.check_module_algebra(3);
        t.note(format!("(a) star action itself: {rep}"));
    }
    let p3 = params(2, 3, 1, 2);
    let w = truncate_ideal(&tensor_algebra(&natural_module(&p3), 3).map_err(|e| e.to_string())?, 3).map_err(|e| e.to_string())?;
    let w = star_action(&w).map_err(|e| e.to_string())?;
    deformation(&mut t, "b", &w, &twist(&p3)?)?;
    let sm = smash_product(&p2, &[CycScalar::from_int(2, -1)], 3).map_err(|e| e.to_string())?;
    deformation(&mut t, "c", &sm, &f2)?;
    t.done()
}

fn c9() -> Outcome {
    let mut t = Tally::new();
    for (n, ell, y, z) in [(2, 2, 0, 1), (2, 3, 1, 2)] {
        let rep = check_xi_cocycle(&params(n, ell, y, z)).map_err(|e| e.to_string())?;
        t.require(
            rep.nowhere_zero && rep.cocycle_failures == 0 && rep.characters > 0,
            format!("({n},{ell}): {rep:?}"),
        );
    }
    t.done()
}

fn c10() -> Outcome {
    let mut t = Tally::new();
    let d = exp_udf_demo(3).map_err(|e| e.to_string())?;
    t.report(check_associativity(&d, d.base.maxdeg));
    let (x, y) = (d.base.label_index("x").ok_or("no x")?, d.base.label_index("y").ok_or("no y")?);
    let diff = d.mul_labels(x, y).map_err(|e| e.to_string())?.sub(&d.mul_labels(y, x).map_err(|e| e.to_string())?);
    let t1 = d.base.basis(d.base.unit.ok_or("no unit")?).with_order(3).shift(1);
    t.require(diff == t1, format!("x*y - y*x = {}", diff.display(&d.base.labels)));
    t.done()
}

fn c11() -> Outcome {
    let mut t = Tally::new();
    let p = params(2, 3, 1, 2);
    let f = twist(&p)?;
    let tfree = truncate_ideal(&tensor_algebra(&natural_module(&p), 3).map_err(|e| e.to_string())?, 3).map_err(|e| e.to_string())?;
    let w = star_action(&tfree).map_err(|e| e.to_string())?;
    let bad = f.without_component(&RootVector(vec![1]));
    let rep = check_twist_identity(&bad, (&w, &w, &w), 4).map_err(|e| e.to_string())?;
    t.require(!rep.passed() && rep.witness().is_some(), format!("dropped component not detected: {rep}"));
    let rep = check_udf_degree(&f, &tfree).map_err(|e| e.to_string())?;
    t.require(!rep.passed() && rep.witness().is_some(), format!("t-free action not detected: {rep}"));
    t.done()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("sl2 twisting element equals 1⊗1 - 2f⊗e (exact term maps)", c1),
        ("F_c, c in {1,-2,3}: twist identity and UDF degree on star quantum-plane triples, degcap 3 (exact)", c2),
        ("relprime(2,0,1,2) true, relprime(3,1,2,3) false; Gram invertibility/singularity (exact)", c3),
        ("E^ell, F^ell in the pairing radical for (n,ell) in {(2,2),(2,3),(3,2)} (exact zeros)", c4),
        ("relations, PBW dimensions, Hopf axioms (height 3), closed coproducts (exact)", c5),
        ("operator lemmas: xy (height 3), wef (i)-(iii), moreids (i)-(iv) on natural modules (exact)", c6),
        ("braiding: module hom, QYBE, hexagon on natural-module triples (exact matrices)", c7),
        ("deformations (a) quantum plane (b) W_3 (c) smash: associativity, mu0, mu1 cocycle; degcap 3, order 4 (exact)", c8),
        ("xi nowhere zero and a 2-cocycle for (n,ell) in {(2,2),(2,3)} (exact)", c9),
        ("exp(t d/dx ⊗ d/dy) at order 3: associative, x*y - y*x = t (exact)", c10),
        ("negative controls: dropped F_zeta and t-free action both rejected with witnesses", c11),
    ];
    let mut failed = 0;
    for (k, (desc, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, notes) = match run() {
            Ok(x) => x,
            Err(e) => (false, vec![format!("error: {e}")]),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2}. {desc} [{:.1}s]", k + 1, start.elapsed().as_secs_f64());
        for n in notes.iter().take(8) {
            println!("       {n}");
        }
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
