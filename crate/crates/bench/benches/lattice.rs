use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kumjac::divisors::{self, PolClass};
use kumjac::field::rat;
use kumjac::hodge::{classify_subspace, graph_plane, image_rank};
use kumjac::skew::SkewMap4;
use kumjac::smith::skew_smith;
use kumjac::weil::{self, WeilContext};
use kumjac::ThetaTriple;

fn smith(c: &mut Criterion) {
    for (div, e) in [(1, 10), (6, 10)] {
        let gram = divisors::gram_on_standard_basis(&PolClass::template(div, e).unwrap());
        c.bench_function(&format!("skew_smith div={div} e={e}"), |b| {
            b.iter(|| skew_smith(black_box(&gram)).unwrap())
        });
    }
}

fn planes(c: &mut Criterion) {
    let t = ThetaTriple::kummer(2, [-1, -3, 3]).unwrap();
    // Pf = 1/3 = ϑ₁/ϑ₂
    let f = SkewMap4::from_upper([rat(1), rat(2), rat(-1), rat(1), rat(0), rat(4) / rat(3)]);
    let g = graph_plane(&f);
    c.bench_function("classify_subspace graph", |b| {
        b.iter(|| classify_subspace(&t, black_box(&g)).unwrap())
    });
    c.bench_function("image_rank graph", |b| {
        b.iter(|| image_rank(&t, black_box(&g)))
    });
}

fn weil_type(c: &mut Criterion) {
    let t = ThetaTriple::kummer(2, [-1, -3, 3]).unwrap();
    let ctx = WeilContext::new(t, 2, 1, 1).unwrap();
    c.bench_function("hermitian_gram", |b| {
        b.iter(|| weil::hermitian_gram(black_box(&ctx)).unwrap())
    });
    c.bench_function("order_three_example", |b| {
        b.iter(|| weil::order_three_example(black_box(3)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = smith, planes, weil_type
}
criterion_main!(benches);
