//! Benchmarks for the hot paths of the pipeline: coset enumeration, normal
//! quotient search, canonical labeling, symmetry analysis, and a small
//! end-to-end census run.

use criterion::{criterion_group, criterion_main, Criterion};
use lat34_bench::largest_amalgam;
use lat34_core::lins::normal_quotients;
use lat34_core::subdouble::subdivided_double;
use lat34_core::{builtin_amalgams, canonical_form, fixture, run_census, symmetry_report, Side};

fn bench_coset_enumeration(c: &mut Criterion) {
    let a = largest_amalgam();
    let mut group = c.benchmark_group("coset_enumeration");
    for (label, side, order) in [("L17", Side::Left, 36), ("R17", Side::Right, 48)] {
        let pres = a.side_pres(side).clone();
        group.bench_function(label, |b| {
            b.iter(|| {
                let table = pres.coset_enumerate(&[], 1024).unwrap();
                assert_eq!(table.coset_count(), order);
                table
            })
        });
    }
    group.finish();
}

fn bench_validation(c: &mut Criterion) {
    let amalgams = builtin_amalgams();
    c.bench_function("validate_all_amalgams", |b| {
        b.iter(|| {
            for a in &amalgams {
                assert!(a.validate().passed());
            }
        })
    });
}

fn bench_normal_quotients(c: &mut Criterion) {
    let u0 = builtin_amalgams().remove(0).universal;
    c.bench_function("normal_quotients_free_product_at_48", |b| {
        b.iter(|| normal_quotients(&u0, 48).unwrap().len())
    });
}

fn bench_canonical_form(c: &mut Criterion) {
    let double = subdivided_double(&fixture("Petersen").unwrap()).unwrap();
    c.bench_function("canonical_form_double_petersen", |b| {
        b.iter(|| canonical_form(&double).bytes.len())
    });
}

fn bench_symmetry_report(c: &mut Criterion) {
    let k34 = fixture("K34").unwrap();
    let double = subdivided_double(&fixture("Petersen").unwrap()).unwrap();
    let mut group = c.benchmark_group("symmetry_report");
    group.bench_function("k34", |b| b.iter(|| symmetry_report(&k34).unwrap()));
    group.bench_function("double_petersen", |b| {
        b.iter(|| symmetry_report(&double).unwrap())
    });
    group.finish();
}

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("max_vertices_14", |b| {
        b.iter(|| {
            let records = run_census(None, 14).unwrap();
            assert_eq!(records.len(), 3);
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_coset_enumeration,
    bench_validation,
    bench_normal_quotients,
    bench_canonical_form,
    bench_symmetry_report,
    bench_census
);
criterion_main!(benches);
