use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kumjac::kummer::{self, Backend};
use kumjac::lehn_sorger::{c_class, c_square_expand, mu_class};
use kumjac::surface::eta;

fn products(c: &mut Criterion) {
    for m in [3, 4] {
        let x = c_class(m, &eta(&[1, 2])).unwrap();
        let y = c_class(m, &eta(&[3]))
            .unwrap()
            .mul(&mu_class(m, &eta(&[4])));
        c.bench_function(&format!("ls_multiply m={m}"), |b| {
            b.iter(|| black_box(&x).mul(black_box(&y)))
        });
        let (b1, b2) = (eta(&[1, 3]), eta(&[2]));
        c.bench_function(&format!("c_square_expand m={m}"), |b| {
            b.iter(|| c_square_expand(m, black_box(&b1), black_box(&b2)).unwrap())
        });
    }
}

fn integrals(c: &mut Criterion) {
    c.bench_function("bellaform n=3 l=1", |b| {
        b.iter(|| kummer::bellaform_check(3, black_box(1)).unwrap())
    });
    c.bench_function("theta n=3 ring", |b| {
        b.iter(|| kummer::compute_theta_with(black_box(3), Backend::Ring).unwrap())
    });
    c.bench_function("theta n=5 closed form", |b| {
        b.iter(|| kummer::compute_theta_with(black_box(5), Backend::ClosedForm).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = products, integrals
}
criterion_main!(benches);
