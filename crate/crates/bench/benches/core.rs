use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qdeform_core::deform::{check_qybe, twisted_product, TwistOperator};
use qdeform_core::modalg::{natural_module, smash_product, star_action, tensor_algebra, truncate_ideal};
use qdeform_core::ncalg::{GenSymbol, Word};
use qdeform_core::qgroup::{QGroup, QGroupParams};
use qdeform_core::rtwist::twisting_element;
use qdeform_core::scalars::CycScalar;

fn params(n: usize, ell: u32, y: u32, z: u32) -> QGroupParams {
    QGroupParams::new(n, ell, y, z).unwrap()
}

fn normal_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_form");
    for (n, ell, y, z) in [(2, 3, 1, 2), (3, 2, 0, 1)] {
        let qg = QGroup::get(&params(n, ell, y, z)).unwrap();
        let rank = n - 1;
        // Anti-PBW order: every letter has to move.
        let mut letters = Vec::new();
        for i in 1..=rank {
            letters.push(GenSymbol::e(i));
        }
        letters.push(GenSymbol::w(1, -1));
        for i in (1..=rank).rev() {
            letters.push(GenSymbol::f(i));
            letters.push(GenSymbol::f(i));
        }
        let word = Word(letters);
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_l{ell}")), &word, |b, w| {
            b.iter(|| qg.normal_form_word(black_box(w)).unwrap())
        });
    }
    g.finish();
}

fn twisting(c: &mut Criterion) {
    let mut g = c.benchmark_group("twisting_element");
    g.sample_size(10);
    for (n, ell, y, z) in [(2, 3, 1, 2), (3, 2, 0, 1)] {
        let p = params(n, ell, y, z);
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_l{ell}")), &p, |b, p| {
            b.iter(|| twisting_element(black_box(p)).unwrap())
        });
    }
    g.finish();
}

fn twisted_products(c: &mut Criterion) {
    let mut g = c.benchmark_group("twisted_product");
    g.sample_size(10);
    let p3 = params(2, 3, 1, 2);
    let w = star_action(&truncate_ideal(&tensor_algebra(&natural_module(&p3), 3).unwrap(), 3).unwrap()).unwrap();
    let f3 = TwistOperator::from_twist(&twisting_element(&p3).unwrap());
    g.bench_function("w3", |b| b.iter(|| twisted_product(black_box(&w), &f3, 4).unwrap()));
    let p2 = params(2, 2, 0, 1);
    let sm = smash_product(&p2, &[CycScalar::from_int(2, -1)], 3).unwrap();
    let f2 = TwistOperator::from_twist(&twisting_element(&p2).unwrap());
    g.bench_function("smash", |b| b.iter(|| twisted_product(black_box(&sm), &f2, 4).unwrap()));
    g.finish();
}

fn qybe(c: &mut Criterion) {
    let mut g = c.benchmark_group("qybe_natural");
    g.sample_size(10);
    for (n, ell, y, z) in [(2, 3, 1, 2), (3, 2, 0, 1)] {
        let p = params(n, ell, y, z);
        let v = natural_module(&p);
        let f = TwistOperator::from_twist(&twisting_element(&p).unwrap());
        g.bench_function(format!("n{n}_l{ell}"), |b| b.iter(|| check_qybe(&v, &v, &v, black_box(&f)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, normal_forms, twisting, twisted_products, qybe);
criterion_main!(benches);
