use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gerbeforge::abelian::smith_normal_form_i64;
use gerbeforge::cohomology::cohomology_cx;
use gerbeforge::group::catalog::{dihedral, sym};
use gerbeforge::groupoid::{build_action_groupoid, gerbe_bijection_check};
use gerbeforge::rep::{character_table, frules_check};
use gerbeforge::{GroupAction, SubgroupDatum};
use gerbeforge_bench::bench_groups;

fn schur(c: &mut Criterion) {
    let mut group = c.benchmark_group("schur multiplier");
    for g in bench_groups().into_iter().take(3) {
        group.bench_function(g.name().to_string(), |b| b.iter(|| cohomology_cx(black_box(&g), 2).unwrap()));
    }
    group.finish();
}

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character table");
    for g in bench_groups() {
        group.bench_function(g.name().to_string(), |b| b.iter(|| character_table(black_box(&g)).unwrap()));
    }
    group.finish();
}

fn smith(c: &mut Criterion) {
    let m: Vec<Vec<i64>> = (0..12).map(|i| (0..12).map(|j| ((i * 7 + j * 13) % 17) as i64 - 8).collect()).collect();
    c.bench_function("smith 12x12", |b| b.iter(|| smith_normal_form_i64(black_box(&m), 12).unwrap()));
}

fn gerbes(c: &mut Criterion) {
    let d4 = dihedral(4).unwrap();
    let a = GroupAction::on_cosets(d4.clone(), &SubgroupDatum::center(&d4)).unwrap();
    let gd = build_action_groupoid(&a);
    c.bench_function("bijection D4 on cosets of center", |b| b.iter(|| gerbe_bijection_check(black_box(&gd)).unwrap()));
}

fn clifford(c: &mut Criterion) {
    let s4 = sym(4).unwrap();
    let v4 = SubgroupDatum::normal_subgroups(&s4).into_iter().find(|k| k.order() == 4).unwrap();
    let mut group = c.benchmark_group("clifford");
    group.sample_size(10);
    group.bench_function("S4 over V4", |b| b.iter(|| frules_check(&s4, &v4, 0).unwrap()));
    group.finish();
}

criterion_group!(benches, schur, character_tables, smith, gerbes, clifford);
criterion_main!(benches);
