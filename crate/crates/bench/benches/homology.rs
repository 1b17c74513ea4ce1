use criterion::{criterion_group, criterion_main, Criterion};
use ihss::algebra::{homology, oracle_homology, smith_normal_form};
use ihss::corpus;
use ihss::perverse::{intersection_chain_complex, Perversity};
use ihss::spectral::analyze_corpus_space;
use ihss::Ring;
use ihss_bench::random_matrix;

fn snf(c: &mut Criterion) {
    for n in [10, 25, 40] {
        let m = random_matrix(n, 7);
        c.bench_function(&format!("snf {n}x{n}"), |b| b.iter(|| smith_normal_form(&m)));
    }
}

fn intersection_homology(c: &mut Criterion) {
    let space = corpus::get("cone_t2").unwrap();
    let p = Perversity::zero(3);
    c.bench_function("ih cone_t2 over Z", |b| {
        b.iter(|| homology(&intersection_chain_complex(&space.space, &p, Ring::Integers).unwrap().chain))
    });
    let ic = intersection_chain_complex(&space.space, &p, Ring::Integers).unwrap();
    c.bench_function("ih cone_t2 reduced", |b| b.iter(|| homology(&ic.chain)));
    c.bench_function("ih cone_t2 full snf", |b| b.iter(|| oracle_homology(&ic.chain)));
}

fn pages(c: &mut Criterion) {
    let mut group = c.benchmark_group("neighborhood");
    group.sample_size(10);
    let space = corpus::get("twisted_cone_bundle").unwrap();
    group.bench_function("twisted_cone_bundle over Q", |b| {
        b.iter(|| analyze_corpus_space(&space, &Perversity::zero(3), Ring::Rationals).unwrap())
    });
    group.finish();
}

criterion_group!(benches, snf, intersection_homology, pages);
criterion_main!(benches);
