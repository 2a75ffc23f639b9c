//! Acceptance checks: one PASS/FAIL line per criterion, each with a pinned
//! runtime limit. Exits nonzero if any criterion fails.

use kdyn_cli::analyze;
use kdyn_core::bounds::{bound_a, bound_b, bound_c, bound_d, bound_m, Variant};
use kdyn_core::dynamics::{improve_reduction, Mobius};
use kdyn_core::field::{scalar, FuncElem, Place, ProjPoint};
use kdyn_core::orbits::{classify, orbit, preper_set, Classification, OrbitCaps, PreperCaps};
use kdyn_core::parse::{parse_map, parse_places, parse_point};
use kdyn_core::sunits::{nondegenerate_count, solve_unit_equation};
use kdyn_core::verify::{run_root_oracle, run_suite, SuiteSummary};
use num_bigint::BigUint;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let timing = match limit {
        Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    let (ok, detail) = match result {
        Ok(d) if limit.is_none_or(|l| elapsed <= l) => (true, d),
        Ok(d) => (false, format!("{d}; over time limit")),
        Err(e) => (false, e),
    };
    println!("{} [{id}] {name} ({timing}): {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// Direct evaluation by trial division and repeated multiplication.
fn naive_bounds(d: u64, s: u64) -> [BigUint; 5] {
    let pow = |b: u64, e: u64| (0..e).fold(BigUint::from(1u32), |acc, _| acc * b);
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k));
    let b = (pow(9, s - 1) + 1u32) / 2u32 * (2 * d + 1) + 2u32;
    let w = pow(3, 2 * s - 1);
    let bl: u64 = b.to_string().parse().expect("small");
    let mut c = BigUint::from(1u32);
    for p in (2..=bl).filter(|&p| is_prime(p)) {
        let f = &w * p;
        c *= if f > b { f } else { b.clone() };
    }
    let m = &b + pow(9, s - 1) - 1u32;
    let dd = (pow(9, s + 1) + 1u32) / 2u32 * (2 * d + 2) * &c;
    [b.clone(), b, c, m, dd]
}

fn criterion_1() -> Check {
    let expected: [(u64, u64, [u64; 5]); 2] = [(2, 1, [7, 7, 19845, 7, 4_881_870]), (1, 1, [5, 5, 810, 5, 132_840])];
    let mut parts = Vec::new();
    for (d, s, want) in expected {
        let got = [
            bound_b(d, s),
            bound_a(d, s, Variant::Statement),
            bound_c(d, s),
            bound_m(d, s, Variant::Statement),
            bound_d(d, s, Variant::Statement),
        ]
        .map(|r| r.map_err(|e| e.to_string()));
        let naive = naive_bounds(d, s);
        for (i, label) in ["b", "A", "C", "M", "D"].iter().enumerate() {
            let g = got[i].clone()?;
            ensure(g == BigUint::from(want[i]), format!("{label}({d},{s}) = {g}, expected {}", want[i]))?;
            ensure(g == naive[i], format!("{label}({d},{s}) = {g}, re-evaluation gives {}", naive[i]))?;
        }
        parts.push(format!("({d},{s}): b={} A={} C={} M={} D={}", want[0], want[1], want[2], want[3], want[4]));
    }
    Ok(parts.join("; "))
}

fn criterion_2() -> Check {
    let report = analyze("(t*z^2)/(1)", Some("0,inf")).map_err(|e| e.to_string())?;
    ensure(report.bad_places.contains(&"t".to_string()), format!("bad places {:?}", report.bad_places))?;
    let at_t = report
        .improvements
        .iter()
        .find(|i| i.place == "t")
        .ok_or("no improvement reported at t")?;
    ensure(
        at_t.witness == "t*z" && at_t.conjugate == "(z^2)/(1)",
        format!("report gives A = {}, conjugate {}", at_t.witness, at_t.conjugate),
    )?;
    let phi = parse_map("t*z^2").map_err(|e| e.to_string())?;
    let place = Place::at(scalar(0));
    ensure(phi.resultant_valuation(&place) == Ok(2), "resultant valuation at t is not 2")?;
    let imp = improve_reduction(&phi, &place)
        .map_err(|e| e.to_string())?
        .ok_or("improve_reduction found nothing")?;
    let a = Mobius::affine(&FuncElem::t(), &FuncElem::zero()).map_err(|e| e.to_string())?;
    let z2 = parse_map("z^2").map_err(|e| e.to_string())?;
    ensure(imp.witness == a, format!("witness {}", imp.witness))?;
    ensure(imp.map == z2, format!("conjugate {}", imp.map))?;
    Ok(format!(
        "bad places {{{}}}, A = {}, conjugate {}, verdict {}",
        report.bad_places.join(", "),
        imp.witness,
        imp.map,
        report.isotriviality.verdict
    ))
}

fn suite_line(s: &SuiteSummary) -> String {
    format!("{} {}/{} ({} non-trivial)", s.suite, s.passes, s.instances, s.nontrivial)
}

fn criterion_3(all: &mut Vec<SuiteSummary>) -> Check {
    let mut parts = Vec::new();
    let mut bad = None;
    for name in ["triangle", "expansion", "cycle", "tail", "pgl-invariance"] {
        let s = run_suite(name, 500, 1).map_err(|e| e.to_string())?;
        parts.push(suite_line(&s));
        if s.failures > 0 && bad.is_none() {
            bad = Some(format!("{name}: {} failures, first {:?}", s.failures, s.first_failure));
        }
        all.push(s);
    }
    match bad {
        Some(b) => Err(b),
        None => Ok(parts.join(", ")),
    }
}

fn criterion_4(all: &mut Vec<SuiteSummary>) -> Check {
    let s = run_suite("unit-count", 50, 7).map_err(|e| e.to_string())?;
    let line = suite_line(&s);
    let failures = s.failures;
    let first = s.first_failure.clone();
    all.push(s);
    ensure(failures == 0, format!("{failures} failures, first {first:?}"))?;
    let lambda = kdyn_core::parse::parse_funcelem("t-1").map_err(|e| e.to_string())?;
    let places = parse_places("0,inf").map_err(|e| e.to_string())?;
    let sols = solve_unit_equation(&lambda, &FuncElem::one(), &places, 2, 1 << 20).map_err(|e| e.to_string())?;
    let mut got: Vec<(String, String)> = sols.iter().map(|s| (s.x.value.to_string(), s.y.value.to_string())).collect();
    got.sort();
    let t = FuncElem::t();
    let inv = t.checked_inv().map_err(|e| e.to_string())?;
    let mut want = vec![(FuncElem::from_int(-1).to_string(), t.to_string()), (inv.to_string(), inv.to_string())];
    want.sort();
    ensure(got == want, format!("worked instance gives {got:?}"))?;
    ensure(nondegenerate_count(&sols) == 2, "worked instance solutions are not both nondegenerate")?;
    Ok(format!("{line}; worked instance: (-1, t) and (1/t, 1/t)"))
}

fn pt(s: &str) -> std::result::Result<ProjPoint, String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn criterion_5() -> Check {
    let caps = OrbitCaps::default();
    let phi = parse_map("z^2-t^2-t-1").map_err(|e| e.to_string())?;
    for (start, m, path) in [("t", 0, vec!["t", "-1-t"]), ("-t", 1, vec!["-t", "-1-t", "t"])] {
        let p = pt(start)?;
        let c = classify(&phi, &p, caps);
        ensure(c == Classification::Preperiodic { m, n: 2 }, format!("P = {start}: {c:?}"))?;
        let rec = orbit(&phi, &p, caps.max_iter, caps.height_cap);
        let want: Vec<ProjPoint> = path.iter().map(|s| pt(s)).collect::<std::result::Result<_, _>>()?;
        ensure(rec.points == want, format!("P = {start}: orbit {:?}", rec.points))?;
    }
    let phi = parse_map("z^2+(t-t^2)").map_err(|e| e.to_string())?;
    let g = preper_set(&phi, PreperCaps::default()).map_err(|e| e.to_string())?;
    let mut want: Vec<ProjPoint> = ["inf", "t", "-t", "1-t", "t-1"]
        .iter()
        .map(|s| pt(s))
        .collect::<std::result::Result<_, _>>()?;
    want.sort();
    ensure(!g.incomplete, "closure flagged incomplete")?;
    ensure(g.vertices == want, format!("vertices {:?}", g.vertices))?;
    for v in &g.vertices {
        // Re-verify by evaluation: the forward orbit stays in the set and
        // closes up within its size.
        let mut q = v.clone();
        let mut seen = vec![q.clone()];
        loop {
            q = phi.evaluate(&q);
            ensure(g.vertices.contains(&q), format!("φ^k({v}) = {q} leaves the set"))?;
            if seen.contains(&q) {
                break;
            }
            seen.push(q.clone());
            ensure(seen.len() <= g.vertices.len(), format!("orbit of {v} does not close"))?;
        }
        ensure(g.edges.contains(&(v.clone(), phi.evaluate(v))), format!("edge from {v} missing"))?;
    }
    let shown: Vec<String> = g.vertices.iter().map(|p| p.to_string()).collect();
    Ok(format!("2-cycle {{t, -1-t}} with (0,2) and (1,2); preper set {{{}}}", shown.join(", ")))
}

fn criterion_6(all: &mut Vec<SuiteSummary>) -> Check {
    let s = run_suite("constant-pairs", 100, 3).map_err(|e| e.to_string())?;
    ensure(s.failures == 0, format!("constant-pairs: {} failures, first {:?}", s.failures, s.first_failure))?;
    all.push(s);
    let checks: usize = all.iter().map(|s| s.bound_checks).sum();
    let violations: usize = all.iter().map(|s| s.bound_violations).sum();
    ensure(violations == 0, format!("{violations} classified orbits exceed C(d,s) or D(d,s)"))?;
    ensure(checks > 0, "no classified instances")?;
    Ok(format!(
        "{checks} classified orbits over {} suites within C(d,s) and D(d,s)",
        all.len()
    ))
}

fn criterion_7() -> Check {
    let r = run_root_oracle(100, 7).map_err(|e| e.to_string())?;
    ensure(
        r.disagreements == 0,
        format!("{} disagreements, first {:?}", r.disagreements, r.first_disagreement),
    )?;
    Ok(format!("{} polynomials, {} roots, 0 disagreements", r.instances, r.roots))
}

fn main() {
    let secs = Duration::from_secs;
    let mut all = Vec::new();
    let results = [
        run(1, "bound reproduction", Some(secs(1)), criterion_1),
        run(2, "t*z^2 reduction and improvement", Some(secs(1)), criterion_2),
        run(3, "distance property suites", Some(secs(120)), || criterion_3(&mut all)),
        run(4, "S-unit counting", Some(secs(60)), || criterion_4(&mut all)),
        run(5, "orbit and preperiodic sets", Some(secs(5)), criterion_5),
        run(6, "period and orbit-size bounds", None, || criterion_6(&mut all)),
        run(7, "root finder against oracle", Some(secs(60)), criterion_7),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
