use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kdyn_core::bounds::{bound_d, bound_report, BoundConfig, Variant};
use kdyn_core::distance::log_distance;
use kdyn_core::dynamics::{improve_reduction, isotriviality_diagnostic};
use kdyn_core::field::{scalar, Place};
use kdyn_core::orbits::{classify, preper_set, OrbitCaps, PreperCaps};
use kdyn_core::parse::{parse_map, parse_places, parse_point};
use kdyn_core::sunits::solve_unit_equation;
use kdyn_core::verify::{run_root_oracle, run_suite};

fn field(c: &mut Criterion) {
    let phi = parse_map("(z^3 + t*z + t^2 - 1)/(t*z^2 + 1)").unwrap();
    let p = parse_point("(t^2+1)/(t-2)").unwrap();
    let q = parse_point("t^2-3").unwrap();
    let place = Place::at(scalar(2));
    c.bench_function("resultant degree 3", |b| {
        b.iter(|| parse_map(black_box("(z^3 + t*z + t^2 - 1)/(t*z^2 + 1)")).unwrap().resultant())
    });
    c.bench_function("evaluate degree 3", |b| b.iter(|| phi.evaluate(black_box(&p))));
    c.bench_function("log distance", |b| b.iter(|| log_distance(black_box(&p), black_box(&q), &place)));
}

fn orbits(c: &mut Criterion) {
    let phi = parse_map("z^2-t^2-t-1").unwrap();
    let p = parse_point("-t").unwrap();
    c.bench_function("classify 2-cycle tail", |b| b.iter(|| classify(&phi, black_box(&p), OrbitCaps::default())));
    let phi = parse_map("z^2+t-t^2").unwrap();
    c.bench_function("preperiodic closure", |b| b.iter(|| preper_set(black_box(&phi), PreperCaps::default()).unwrap()));
}

fn reduction(c: &mut Criterion) {
    let phi = parse_map("t*z^2").unwrap();
    let place = Place::at(scalar(0));
    c.bench_function("improve reduction t*z^2", |b| b.iter(|| improve_reduction(black_box(&phi), &place).unwrap()));
    let phi = parse_map("z^2+t").unwrap();
    c.bench_function("isotriviality z^2+t", |b| b.iter(|| isotriviality_diagnostic(black_box(&phi)).unwrap()));
}

fn units(c: &mut Criterion) {
    let lambda = kdyn_core::parse::parse_funcelem("t-1").unwrap();
    let mu = kdyn_core::parse::parse_funcelem("1").unwrap();
    let s = parse_places("0,1,inf").unwrap();
    c.bench_function("unit equation s=3 box 2", |b| {
        b.iter(|| solve_unit_equation(black_box(&lambda), &mu, &s, 2, 1 << 24).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    c.bench_function("bound D(3,2)", |b| b.iter(|| bound_d(black_box(3), 2, Variant::Statement).unwrap()));
    c.bench_function("bound report (2,2)", |b| b.iter(|| bound_report(black_box(2), 2, &BoundConfig::default()).unwrap()));
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("triangle x20", |b| b.iter(|| run_suite("triangle", 20, black_box(1)).unwrap()));
    g.bench_function("root oracle x5", |b| b.iter(|| run_root_oracle(5, black_box(1)).unwrap()));
    g.finish();
}

criterion_group!(benches, field, orbits, reduction, units, bounds, suites);
criterion_main!(benches);
