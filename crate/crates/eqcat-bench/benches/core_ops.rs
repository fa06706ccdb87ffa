use criterion::{criterion_group, criterion_main, Criterion};
use eqcat_core::group::{preset, subgroup_classes};

fn bench_subgroup_classes(c: &mut Criterion) {
    let q8 = preset("Q8").unwrap();
    let s3 = preset("S3").unwrap();
    c.bench_function("subgroup_classes Q8", |b| {
        b.iter(|| subgroup_classes(std::hint::black_box(&q8)))
    });
    c.bench_function("subgroup_classes S3", |b| {
        b.iter(|| subgroup_classes(std::hint::black_box(&s3)))
    });
}

fn bench_verify_operad(c: &mut Criterion) {
    let op = eqcat_core::operad::barratt_eccles(4);
    c.bench_function("verify_operad plain jmax 4", |b| {
        b.iter(|| eqcat_core::operad::verify_operad(std::hint::black_box(&op), 4))
    });
    let g = preset("C2").unwrap();
    let twisted = eqcat_core::operad::og_operad(&g, 3, 10_000_000).unwrap();
    c.bench_function("verify_operad twisted C2 jmax 3", |b| {
        b.iter(|| eqcat_core::operad::verify_operad(std::hint::black_box(&twisted), 3))
    });
}

fn bench_table_of_marks(c: &mut Criterion) {
    let q8 = preset("Q8").unwrap();
    c.bench_function("table_of_marks Q8", |b| {
        b.iter(|| eqcat_core::burnside::table_of_marks(std::hint::black_box(&q8)).unwrap())
    });
}

fn bench_canonical_bijection(c: &mut Criterion) {
    let g = preset("S3").unwrap();
    let u = eqcat_core::pqr::Universe::new(&g, 2);
    let pts = u.prefix(2);
    c.bench_function("canonical bijection round-trip (S3, arity 3)", |b| {
        b.iter(|| {
            let xs = [pts[1], pts[7], pts[3]];
            let y = u.power_forward(3, std::hint::black_box(&xs)).unwrap();
            u.power_backward(3, y).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_subgroup_classes,
    bench_verify_operad,
    bench_table_of_marks,
    bench_canonical_bijection
);
criterion_main!(benches);
