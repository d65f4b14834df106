use criterion::{black_box, criterion_group, criterion_main, Criterion};
use legz::descent::parametric_family;
use legz::normform::primitivize;
use legz::{
    brute_force_search, holzer_reduce, samet_solvable, GaussianInt, LegendreEquation, Solution,
};

fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

fn golden() -> LegendreEquation {
    LegendreEquation::try_normal(g(0, 1), g(7, 0), g(1, 0)).unwrap()
}

fn bench_search(c: &mut Criterion) {
    let eq = golden();
    c.bench_function("search golden bound 8", |b| {
        b.iter(|| brute_force_search(black_box(&eq), 8))
    });
    // No solution exists, so the whole box is scanned.
    let dead = LegendreEquation::try_normal(g(1, 0), g(1, 1), g(3, 0)).unwrap();
    c.bench_function("search exhaustive bound 200", |b| {
        b.iter(|| brute_force_search(black_box(&dead), 200))
    });
}

fn bench_samet(c: &mut Criterion) {
    let eq = LegendreEquation::try_normal(g(3, 2), g(7, 0), g(1, 1)).unwrap();
    c.bench_function("samet (3+2i, 7, 1+i)", |b| {
        b.iter(|| samet_solvable(black_box(&eq)))
    });
}

fn bench_descent(c: &mut Criterion) {
    let eq = golden();
    let base = Solution::new(g(2, 2), g(1, 0), g(1, 0)).unwrap();
    let [x, y, z] = parametric_family(&eq, &base, &g(17, -9), &g(5, 22), &g(-31, 8));
    let seed = primitivize(&Solution::new(x, y, z).unwrap());
    c.bench_function("holzer_reduce inflated golden", |b| {
        b.iter(|| holzer_reduce(black_box(&eq), black_box(&seed)).unwrap())
    });
}

criterion_group!(benches, bench_search, bench_samet, bench_descent);
criterion_main!(benches);
