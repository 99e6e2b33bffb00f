use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use normlike::abelian::smith_normal_form;
use normlike::action::ActionOracle;
use normlike::autgroup::{automorphism_count, enumerate_automorphisms};
use normlike::quadratic::{class_group, pid_chain};
use normlike::{FiniteAbelianGroup, GroupSpec, IntegerMatrix};

fn snf(c: &mut Criterion) {
    let m = IntegerMatrix::from_rows(&[
        vec![2i64, 4, 4, 6],
        vec![-6, 6, 12, 10],
        vec![10, -4, -16, 8],
        vec![3, 9, -27, 81],
    ]);
    c.bench_function("smith normal form 4x4", |b| b.iter(|| smith_normal_form(black_box(&m))));
    let g = FiniteAbelianGroup::new(&[12, 18, 30, 8]).unwrap();
    c.bench_function("normal form of Z/12 x Z/18 x Z/30 x Z/8", |b| {
        b.iter(|| FiniteAbelianGroup::new(black_box(&[12, 18, 30, 8])).unwrap())
    });
    let gens = vec![g.element(&[1, 1, 0, 0]).unwrap(), g.element(&[0, 2, 3, 0]).unwrap()];
    c.bench_function("quotient by two elements", |b| b.iter(|| g.quotient(black_box(&gens)).unwrap()));
}

fn automorphisms(c: &mut Criterion) {
    for spec in ["2,2,2", "2,4", "3,9", "2,2,4"] {
        let a = FiniteAbelianGroup::parse(spec).unwrap();
        c.bench_function(&format!("enumerate Aut({spec})"), |b| {
            b.iter(|| enumerate_automorphisms(black_box(&a)).unwrap())
        });
    }
    let a = FiniteAbelianGroup::parse("2,2,2,2,4,8").unwrap();
    c.bench_function("count Aut by formula", |b| b.iter(|| automorphism_count(black_box(&a))));
}

fn action_search(c: &mut Criterion) {
    let cases = [("cyclic:3", "13"), ("dihedral:3", "2,2"), ("cyclic:4", "2,2,2"), ("quaternion", "3,3")];
    for (g, spec) in cases {
        let table = g.parse::<GroupSpec>().unwrap().build().unwrap();
        let a = FiniteAbelianGroup::parse(spec).unwrap();
        c.bench_function(&format!("count actions of {g} on [{spec}]"), |b| {
            b.iter(|| ActionOracle::default().count(black_box(&table), black_box(&a)).unwrap())
        });
    }
}

fn class_groups(c: &mut Criterion) {
    for d in [-56i64, -4_004, -99_995] {
        c.bench_function(&format!("class group D = {d}"), |b| b.iter(|| class_group(black_box(d)).unwrap()));
    }
    c.bench_function("localization chain D = -420", |b| b.iter(|| pid_chain(black_box(-420)).unwrap()));
}

criterion_group!(benches, snf, automorphisms, action_search, class_groups);
criterion_main!(benches);
