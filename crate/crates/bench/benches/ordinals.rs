use criterion::{criterion_group, criterion_main, Criterion};
use ordram::ordinal::milner_rado_sum;
use ordram::{format_ordinal, parse_ordinal, pcl_number};
use std::hint::black_box;

fn arithmetic(c: &mut Criterion) {
    let a = parse_ordinal("w^(w^2+w*3+1)*4+w^w*2+w^5+w*7+3").unwrap();
    let b = parse_ordinal("w^(w^2+2)*3+w^3+9").unwrap();
    let text = format_ordinal(&a);
    c.bench_function("parse", |z| z.iter(|| parse_ordinal(black_box(&text)).unwrap()));
    c.bench_function("format", |z| z.iter(|| format_ordinal(black_box(&a))));
    c.bench_function("add", |z| z.iter(|| black_box(&a).add(black_box(&b))));
    c.bench_function("mul", |z| z.iter(|| black_box(&a).mul(black_box(&b))));
    c.bench_function("natural_sum", |z| z.iter(|| black_box(&a).natural_sum(black_box(&b))));
    c.bench_function("milner_rado_sum", |z| z.iter(|| milner_rado_sum(black_box(&a), black_box(&b)).unwrap()));
}

fn pigeonhole(c: &mut Criterion) {
    let w1 = vec![parse_ordinal("w+1").unwrap(); 5];
    let mixed = vec![
        parse_ordinal("w*4+3").unwrap(),
        parse_ordinal("w^2*2+w+2").unwrap(),
        parse_ordinal("w^3+1").unwrap(),
    ];
    let big = vec![parse_ordinal("w^4*3+w^3+w^2+w+2").unwrap(); 4];
    c.bench_function("pcl (w+1)_5", |z| z.iter(|| pcl_number(black_box(&w1)).unwrap()));
    c.bench_function("pcl mixed three colors", |z| z.iter(|| pcl_number(black_box(&mixed)).unwrap()));
    let mut g = c.benchmark_group("pcl large");
    g.sample_size(10);
    g.bench_function("four copies of w^4*3+...", |z| z.iter(|| pcl_number(black_box(&big)).unwrap()));
    g.finish();
}

criterion_group!(benches, arithmetic, pigeonhole);
criterion_main!(benches);
