//! Benchmarks for the hot paths: axiom verification on the largest tables,
//! exhaustive enumeration with and without deduplication, full-catalog
//! classification, and the Yang–Baxter checks. Sample sizes are kept small;
//! these runs are minutes, not statistics-grade.

use braces_core::abelian::AbelianGroup;
use braces_core::brace::verify_brace;
use braces_core::catalog::{catalog_p3, entry_by_id};
use braces_core::classify::{classify_catalog, enumerate_braces, EnumerateOptions};
use braces_core::ybe::{solution_from_brace, verify_yang_baxter};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_verify(c: &mut Criterion) {
    let (_, small) = entry_by_id("p3.zp_p2.socp.family5(p=3,a=2)").expect("catalog id");
    c.bench_function("verify_order_27", |b| {
        b.iter(|| verify_brace(black_box(&small)))
    });
    let (_, big) = catalog_p3(5).pop().expect("nonempty catalog");
    c.bench_function("verify_order_125", |b| {
        b.iter(|| verify_brace(black_box(&big)))
    });
}

fn bench_enumerate(c: &mut Criterion) {
    let g = AbelianGroup::new(2, &[2, 4]).expect("standard shape");
    let raw = EnumerateOptions {
        up_to_iso: false,
        node_budget: None,
    };
    c.bench_function("enumerate_z2xz4_raw", |b| {
        b.iter(|| enumerate_braces(black_box(&g), &raw))
    });
    let dedup = EnumerateOptions {
        up_to_iso: true,
        node_budget: None,
    };
    c.bench_function("enumerate_z2xz4_classes", |b| {
        b.iter(|| enumerate_braces(black_box(&g), &dedup))
    });
    let g27 = AbelianGroup::new(3, &[3, 9]).expect("standard shape");
    c.bench_function("enumerate_z3xz9_classes", |b| {
        b.iter(|| enumerate_braces(black_box(&g27), &dedup))
    });
}

fn bench_classify(c: &mut Criterion) {
    c.bench_function("classify_catalog_p2", |b| b.iter(|| classify_catalog(2)));
    c.bench_function("classify_catalog_p3", |b| b.iter(|| classify_catalog(3)));
}

fn bench_ybe(c: &mut Criterion) {
    let (_, brace) = entry_by_id("p3.zp_p_p.socp.family1(p=3)").expect("catalog id");
    let s = solution_from_brace(&brace);
    c.bench_function("yang_baxter_check_order_27", |b| {
        b.iter(|| verify_yang_baxter(black_box(&s)))
    });
    c.bench_function("solution_from_brace_order_27", |b| {
        b.iter(|| solution_from_brace(black_box(&brace)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_verify, bench_enumerate, bench_classify, bench_ybe
}
criterion_main!(benches);
