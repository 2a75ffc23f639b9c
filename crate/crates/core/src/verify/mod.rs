//! Seeded property suites and the root-finder oracle.

mod gen;
mod oracle;

pub use gen::{Draw, InstanceGenerator};
pub use oracle::{random_root_instance, run_root_oracle, specialization_oracle_roots, RootOracleSummary};

use crate::bounds::{bound_c, bound_d, Variant};
use crate::distance::{check_cycle_distances, check_expansion, check_tail_inequality, check_triangle, log_distance, DistanceValue};
use crate::dynamics::{conjugate, constant_pairs, isotriviality_diagnostic, ConstantPairs, EndoMap, Isotriviality};
use crate::error::{Error, Result};
use crate::field::{reduce_at, scalar, BasePoly, FuncElem, Place, Poly, ProjPoint, Residue, Scalar};
use crate::orbits::{classify, preimages, Classification, OrbitCaps};
use crate::sunits::{is_s_unit, nondegenerate_count, solve_unit_equation, PlaceSet};
use rayon::prelude::*;
use serde::Serialize;

pub const SUITES: [&str; 7] = [
    "triangle",
    "expansion",
    "cycle",
    "tail",
    "pgl-invariance",
    "unit-count",
    "constant-pairs",
];

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub instances: usize,
    pub passes: usize,
    pub failures: usize,
    pub seed: u64,
    /// Instances where the checked relation had non-trivial content.
    pub nontrivial: usize,
    /// Classified orbits compared against the period and orbit-size bounds.
    pub bound_checks: usize,
    /// Classified orbits exceeding those bounds; also counted as failures.
    pub bound_violations: usize,
    pub first_failure: Option<String>,
}

#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    nontrivial: bool,
    bound_checks: usize,
    bound_violations: usize,
}

impl Outcome {
    fn fail(&mut self, msg: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(msg.into());
        }
    }
}

pub fn run_suite(name: &str, count: usize, seed: u64) -> Result<SuiteSummary> {
    let case: fn(&mut Draw) -> Result<Outcome> = match name {
        "triangle" => triangle_case,
        "expansion" => expansion_case,
        "cycle" => cycle_case,
        "tail" => tail_case,
        "pgl-invariance" => pgl_case,
        "unit-count" => unit_count_case,
        "constant-pairs" => constant_pairs_case,
        _ => return Err(Error::UnknownSuite(name.into())),
    };
    let gen = InstanceGenerator::new(seed);
    let outcomes: Vec<Outcome> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut out = case(&mut gen.draw(i)).unwrap_or_else(|e| Outcome {
                failure: Some(format!("error: {e}")),
                ..Default::default()
            });
            if let Some(f) = out.failure.take() {
                out.failure = Some(format!("instance {i}: {f}"));
            }
            out
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.failure.is_some()).count();
    Ok(SuiteSummary {
        suite: name.into(),
        instances: count,
        passes: count - failures,
        failures,
        seed,
        nontrivial: outcomes.iter().filter(|o| o.nontrivial).count(),
        bound_checks: outcomes.iter().map(|o| o.bound_checks).sum(),
        bound_violations: outcomes.iter().map(|o| o.bound_violations).sum(),
        first_failure: outcomes.into_iter().find_map(|o| o.failure),
    })
}

/// Period and orbit size of a classified point against `C(d, s)` and
/// `D(d, s)`.
fn check_orbit_bounds(phi: &EndoMap, p: &ProjPoint, s: usize, out: &mut Outcome) -> Result<Classification> {
    let c = classify(phi, p, OrbitCaps::default());
    if let Classification::Preperiodic { m, n } = c {
        let d = phi.degree() as u64;
        let s = s.max(1) as u64;
        out.bound_checks += 1;
        if bound_c(d, s)? < n.into() {
            out.bound_violations += 1;
            out.fail(format!("period {n} exceeds C({d},{s})"));
        }
        if bound_d(d, s, Variant::Statement)? < (m + n).into() {
            out.bound_violations += 1;
            out.fail(format!("orbit size {} exceeds D({d},{s})", m + n));
        }
    }
    Ok(c)
}

fn residue(p: &ProjPoint, place: &Place) -> Result<Residue> {
    match p.value() {
        None => Ok(Residue::Infinity),
        Some(v) => reduce_at(&v, place),
    }
}

fn triangle_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let place = g.degree_one_place(0.2);
    let p1 = g.point();
    let k2 = g.int(0, 3) as u32;
    let p2 = g.near(&p1, &place, k2);
    let base = if g.chance(0.5) { p1.clone() } else { p2.clone() };
    let k3 = g.int(0, 3) as u32;
    let p3 = g.near(&base, &place, k3);
    let pts = [&p1, &p2, &p3];
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        if !check_triangle(pts[i], pts[j], pts[k], &place) {
            out.fail(format!("triangle fails for {} {} {} at {place}", pts[i], pts[j], pts[k]));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = log_distance(pts[i], pts[j], &place);
        if d != log_distance(pts[j], pts[i], &place) {
            out.fail("asymmetric distance");
        }
        let same = residue(pts[i], &place)? == residue(pts[j], &place)?;
        if same != (d > DistanceValue::Finite(0)) {
            out.fail(format!("δ = {d} disagrees with reduction for {} and {} at {place}", pts[i], pts[j]));
        }
        if let DistanceValue::Finite(v) = d {
            out.nontrivial |= v > 0;
        }
    }
    Ok(out)
}

fn expansion_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let d = g.int(2, 3) as usize;
    let mut phi = g.monic_map(d);
    if g.chance(0.5) {
        phi = conjugate(&phi, &g.gl2_poly());
    }
    let place = g.degree_one_place(0.0);
    if phi.resultant_valuation(&place)? != 0 {
        out.fail(format!("generated map {phi} has bad reduction at {place}"));
        return Ok(out);
    }
    let p = g.point();
    let k = g.int(0, 3) as u32;
    let q = g.near(&p, &place, k);
    if !check_expansion(&phi, &p, &q, &place)? {
        out.fail(format!("expansion fails for {phi} at {p}, {q}, place {place}"));
    }
    out.nontrivial = matches!(log_distance(&p, &q, &place), DistanceValue::Finite(v) if v > 0);
    check_orbit_bounds(&phi, &p, 1, &mut out)?;
    Ok(out)
}

/// `z^2 + c` with the 2-cycle `a ↦ b ↦ a`, where `a + b = -1` and
/// `ab = c + 1`, or the fixed point `a` of `z^2 + a - a^2`.
fn quadratic_with_cycle(g: &mut Draw) -> (EndoMap, ProjPoint, usize, PlaceSet) {
    let mut s = PlaceSet::infinity();
    let a = if g.chance(0.3) {
        let beta = scalar(g.int(-3, 3));
        s = s.with(Place::at(beta.clone()));
        FuncElem::new(g.nonzero_poly(2), Poly::linear_root(&beta)).expect("nonzero")
    } else {
        let deg = g.int(1, 2) as usize;
        FuncElem::from_poly(g.poly_of_degree(deg))
    };
    let one = FuncElem::one();
    let (c, n) = if g.chance(0.75) {
        let b = &(-&one) - &a;
        (&(&a * &b) - &one, 2)
    } else {
        (&a - &(&a * &a), 1)
    };
    let phi = EndoMap::new(vec![c, FuncElem::zero(), one.clone()], vec![one]).expect("quadratic");
    (phi, ProjPoint::affine(&a), n, s)
}

fn cycle_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (mut phi, mut p, n, s) = quadratic_with_cycle(g);
    if g.chance(0.5) {
        let a = g.gl2_poly();
        phi = conjugate(&phi, &a);
        p = a.apply(&p);
    }
    if !phi.has_simple_good_reduction_outside(&s)? {
        out.fail(format!("generated map {phi} has bad reduction outside S"));
        return Ok(out);
    }
    let report = check_cycle_distances(&phi, &p, n, &s)?;
    if !report.passed() {
        out.fail(format!("{phi}, P = {p}, n = {n}: {}", report.violations.join("; ")));
    }
    out.nontrivial = !report.places.is_empty() && n > 1;
    match check_orbit_bounds(&phi, &p, s.s(), &mut out)? {
        Classification::Preperiodic { m: 0, n: got } if got == n => {}
        c => out.fail(format!("classified {c:?}, expected period {n}")),
    }
    Ok(out)
}

/// `φ(z) = z(z - x^2)/(1 - z)` fixes 0 and sends `x ↦ x^2 ↦ 0`. Its
/// resultant is a constant times `1 - x^2`.
fn tail_instance(g: &mut Draw) -> Result<(EndoMap, Vec<ProjPoint>, PlaceSet)> {
    let alpha = scalar(g.int(-3, 3));
    let x = &FuncElem::constant(g.nonzero_scalar()) * &FuncElem::from_poly(Poly::linear_root(&alpha));
    let x = &x + &FuncElem::constant(g.scalar());
    let x2 = &x * &x;
    let one = FuncElem::one();
    let phi = EndoMap::new(vec![FuncElem::zero(), -&x2, one.clone()], vec![one.clone(), -&one])?;
    let mut places = vec![Place::Infinity];
    for e in [&one - &x, &one + &x] {
        let r = e.num().clone();
        places.push(Place::at(-r.coeff(0) / r.coeff(1)));
    }
    let s = PlaceSet::new(places)?;
    let mut tail = vec![ProjPoint::affine(&x), ProjPoint::affine(&x2), ProjPoint::affine(&FuncElem::zero())];
    for _ in 0..g.int(0, 2) {
        let pre = preimages(&phi, &tail[0])?;
        match pre.into_iter().find(|q| !tail.contains(q)) {
            Some(q) => tail.insert(0, q),
            None => break,
        }
    }
    Ok((phi, tail, s))
}

fn tail_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (mut phi, mut tail, s) = tail_instance(g)?;
    if g.chance(0.6) {
        let a = g.gl2_poly();
        phi = conjugate(&phi, &a);
        tail = tail.iter().map(|p| a.apply(p)).collect();
    }
    if !phi.has_simple_good_reduction_outside(&s)? {
        out.fail(format!("generated map {phi} has bad reduction outside S"));
        return Ok(out);
    }
    let report = check_tail_inequality(&phi, &tail, &s)?;
    if !report.passed() {
        let pts: Vec<String> = tail.iter().map(|p| p.to_string()).collect();
        out.fail(format!("{phi}, tail [{}]: {}", pts.join(", "), report.violations.join("; ")));
    }
    let p0 = tail.last().expect("nonempty");
    out.nontrivial = report.places.iter().any(|pl| {
        !s.contains(pl) && matches!(log_distance(&tail[tail.len() - 2], p0, pl), DistanceValue::Finite(v) if v > 0)
    });
    let m = tail.len() - 1;
    match check_orbit_bounds(&phi, &tail[0], s.s(), &mut out)? {
        Classification::Preperiodic { m: got, n: 1 } if got == m => {}
        c => out.fail(format!("classified {c:?}, expected tail {m} into a fixed point")),
    }
    Ok(out)
}

fn pgl_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let with_inf = g.chance(0.5);
    let size = g.int(1, 3) as usize;
    let s = g.rational_place_set(size.max(if with_inf { 1 } else { 2 }), with_inf);
    let a = g.gl2_rs(&s);
    if !a.in_pgl2_rs(&s) {
        out.fail(format!("generated matrix {a} is not in PGL2(R_S)"));
        return Ok(out);
    }
    let place = loop {
        let p = g.degree_one_place(0.3);
        if !s.contains(&p) {
            break p;
        }
    };
    let p1 = g.point();
    let k = g.int(0, 3) as u32;
    let p2 = g.near(&p1, &place, k);
    let before = log_distance(&p1, &p2, &place);
    let after = log_distance(&a.apply(&p1), &a.apply(&p2), &place);
    if before != after {
        out.fail(format!("A = {a}: δ({p1}, {p2}) = {before} but {after} after A at {place}"));
    }
    out.nontrivial = matches!(before, DistanceValue::Finite(v) if v > 0);
    Ok(out)
}

fn unit_count_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let size = g.int(1, 3) as usize;
    let with_inf = size == 1 || g.chance(0.5);
    let s = g.rational_place_set(size, with_inf);
    let e = g.int(1, 3);
    let x0 = g.s_unit(&s, e);
    let y0 = g.s_unit(&s, e);
    let mu = if g.chance(0.5) { g.s_unit(&s, 1) } else { g.nonzero_element() };
    let lambda = (&FuncElem::one() - &(&mu * &y0)).checked_div(&x0)?;
    if lambda.is_zero() {
        return Ok(out);
    }
    let sols = solve_unit_equation(&lambda, &mu, &s, e as u32, 1 << 20)?;
    let one = FuncElem::one();
    for sol in &sols {
        if &(&lambda * &sol.x.value) + &(&mu * &sol.y.value) != one {
            out.fail(format!("({}, {}) does not solve {lambda}x + {mu}y = 1", sol.x.value, sol.y.value));
        }
        if !is_s_unit(&sol.x.value, &s) || !is_s_unit(&sol.y.value, &s) {
            out.fail(format!("({}, {}) is not a pair of S-units", sol.x.value, sol.y.value));
        }
    }
    let count = nondegenerate_count(&sols);
    let bound = 9usize.pow(s.s() as u32 - 1);
    if count > bound {
        out.fail(format!("{count} nondegenerate solutions exceed 9^(s-1) = {bound} for {lambda}, {mu}"));
    }
    let planted_nondegenerate = !(&lambda * &x0).checked_div(&(&mu * &y0))?.is_constant();
    if planted_nondegenerate && !sols.iter().any(|sol| sol.x.value == x0 && sol.y.value == y0) {
        out.fail(format!("planted solution ({x0}, {y0}) missing for {lambda}, {mu}"));
    }
    out.nontrivial = count > 0;
    Ok(out)
}

/// `f(λ1) - λ2 g(λ1)` as a polynomial in `t`.
fn pair_defect(f: &[BasePoly], g: &[BasePoly], l1: &Scalar, l2: &Scalar) -> BasePoly {
    let eval = |form: &[BasePoly]| {
        form.iter()
            .rev()
            .fold(Poly::zero(), |acc: BasePoly, c| &acc.scale(l1) + c)
    };
    &eval(f) - &eval(g).scale(l2)
}

fn constant_pairs_case(g: &mut Draw) -> Result<Outcome> {
    let mut out = Outcome::default();
    let d = g.int(2, 3) as usize;
    let (phi, planted) = loop {
        let mut f: Vec<BasePoly> = (0..=d).map(|_| g.poly(2)).collect();
        let gd = if g.chance(0.5) { d } else { d - 1 };
        let gg: Vec<BasePoly> = (0..=gd).map(|_| g.poly(2)).collect();
        let mut planted = Vec::new();
        for _ in 0..g.int(0, 2) {
            let (l1, l2) = (scalar(g.int(-3, 3)), g.scalar());
            if planted.iter().any(|(a, _)| *a == l1) {
                continue;
            }
            // Adjust f by a multiple of the product of (z - earlier λ1)
            // so earlier pairs survive.
            let mut shift: Vec<BasePoly> = vec![Poly::one()];
            let mut at = scalar(1);
            for (a, _) in &planted {
                let mut next = vec![Poly::zero(); shift.len() + 1];
                for (i, c) in shift.iter().enumerate() {
                    next[i + 1] = &next[i + 1] + c;
                    next[i] = &next[i] - &c.scale(a);
                }
                shift = next;
                at = &at * &(&l1 - a);
            }
            let e = pair_defect(&f, &gg, &l1, &l2).scale(&(scalar(1) / &at));
            for (i, c) in shift.iter().enumerate() {
                if i < f.len() {
                    f[i] = &f[i] - &(c * &e);
                }
            }
            if shift.len() > f.len() {
                break;
            }
            planted.push((l1, l2));
        }
        if let Ok(phi) = EndoMap::from_polys(f, gg) {
            if phi.degree() == d && !phi.has_constant_coefficients() {
                break (phi, planted);
            }
        }
    };
    let diag = isotriviality_diagnostic(&phi)?;
    if let Isotriviality::IsotrivialOverK { .. } = diag {
        return Ok(out);
    }
    match constant_pairs(&phi)? {
        ConstantPairs::Infinite => out.fail(format!("{phi}: infinite pair set for a non-isotrivial verdict")),
        ConstantPairs::Finite { pairs, closure_count } => {
            if closure_count > 2 * d {
                out.fail(format!("{phi}: {closure_count} pairs exceed 2d = {}", 2 * d));
            }
            for (l1, l2) in &planted {
                if !pairs.iter().any(|(a, b)| a == l1 && b == l2) {
                    out.fail(format!("{phi}: planted pair ({l1}, {l2}) missing"));
                }
            }
            for (a, b) in &pairs {
                if !pair_defect(phi.f(), phi.g(), a, b).is_zero() {
                    out.fail(format!("{phi}: ({a}, {b}) is not a pair"));
                }
            }
            out.nontrivial = !pairs.is_empty();
        }
    }
    Ok(out)
}
