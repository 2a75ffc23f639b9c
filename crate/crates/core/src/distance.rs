//! The p-adic logarithmic distance on `P^1(K)` and checkers for the
//! inequalities it satisfies under maps of good reduction.
//!
//! Points carry coprime polynomial coordinates, so at a finite place the
//! distance is the valuation of the cross term `x1 y2 - x2 y1`. Checkers
//! test each explicit degree-one place in the support of the cross terms,
//! and cover the remaining finite places at once by comparing cross terms
//! with their `S`-part removed (equal valuations everywhere outside `S`
//! means equal up to a constant; inequalities become divisibility).

use crate::dynamics::EndoMap;
use crate::error::{Error, Result};
use crate::field::{rational_roots, BasePoly, Place, ProjPoint};
use crate::sunits::PlaceSet;
use std::collections::BTreeSet;
use std::fmt;

/// `δ_p`: a natural number, or infinity for equal points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DistanceValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Finite(v) => write!(f, "{v}"),
            DistanceValue::Infinite => f.write_str("inf"),
        }
    }
}

fn cross(p: &ProjPoint, q: &ProjPoint) -> BasePoly {
    &(p.x() * q.y()) - &(q.x() * p.y())
}

/// Valuation with `None` for the zero polynomial.
fn val(f: &BasePoly, p: &Place) -> Option<i64> {
    p.poly_valuation(f).ok()
}

fn coord_min(pt: &ProjPoint, p: &Place) -> i64 {
    match (val(pt.x(), p), val(pt.y(), p)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("[0 : 0]"),
    }
}

/// `v_p(x1 y2 - x2 y1) - min(v_p x1, v_p y1) - min(v_p x2, v_p y2)`.
pub fn log_distance(p1: &ProjPoint, p2: &ProjPoint, p: &Place) -> DistanceValue {
    match val(&cross(p1, p2), p) {
        None => DistanceValue::Infinite,
        Some(v) => {
            let d = v - coord_min(p1, p) - coord_min(p2, p);
            DistanceValue::Finite(u64::try_from(d).expect("distance is non-negative"))
        }
    }
}

/// `δ(P1, P3) ≥ min(δ(P1, P2), δ(P2, P3))`.
pub fn check_triangle(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint, p: &Place) -> bool {
    log_distance(p1, p3, p) >= log_distance(p1, p2, p).min(log_distance(p2, p3, p))
}

/// `δ(φ(P), φ(Q)) ≥ δ(P, Q)` at a place of simple good reduction.
pub fn check_expansion(phi: &EndoMap, p: &ProjPoint, q: &ProjPoint, place: &Place) -> Result<bool> {
    if phi.resultant_valuation(place)? != 0 {
        return Err(Error::NotSimpleGoodReduction);
    }
    Ok(log_distance(&phi.evaluate(p), &phi.evaluate(q), place) >= log_distance(p, q, place))
}

/// Outcome of a distance-identity check over a finite orbit.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DistanceReport {
    /// Explicit places examined one by one.
    pub places: Vec<Place>,
    /// Number of distance relations tested (per place or global).
    pub relations: usize,
    pub violations: Vec<String>,
}

impl DistanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Degree-one places outside `S` where some cross term vanishes, plus
/// infinity when it is outside `S`.
fn support_places(terms: &[BasePoly], s: &PlaceSet) -> Vec<Place> {
    let mut roots = BTreeSet::new();
    for c in terms.iter().filter(|c| !c.is_zero()) {
        roots.extend(rational_roots(c).expect("nonzero"));
    }
    let mut out: Vec<Place> = roots.into_iter().map(Place::at).filter(|p| !s.contains(p)).collect();
    if !s.has_infinity() {
        out.push(Place::Infinity);
    }
    out
}

/// `a` and `b` have equal valuation at every finite place outside `S`.
fn same_outside(a: &BasePoly, b: &BasePoly, s: &PlaceSet) -> bool {
    s.strip(a).monic() == s.strip(b).monic()
}

/// `v_p(a) ≤ v_p(b)` at every finite place outside `S`.
fn divides_outside(a: &BasePoly, b: &BasePoly, s: &PlaceSet) -> bool {
    s.strip(a).divides(&s.strip(b))
}

/// Distance identities along a cycle of exact period `n`: invariance under
/// shifting both indices, and `δ(φ^i P, φ^j P) = δ(φ P, P)` whenever
/// `gcd(i - j, n) = 1`.
pub fn check_cycle_distances(phi: &EndoMap, p: &ProjPoint, n: usize, s: &PlaceSet) -> Result<DistanceReport> {
    if n == 0 {
        return Err(Error::NotPeriodic(0));
    }
    let mut pts = vec![p.clone()];
    for _ in 1..n {
        pts.push(phi.evaluate(pts.last().unwrap()));
    }
    if phi.evaluate(&pts[n - 1]) != *p || (1..n).any(|k| pts[k] == *p) {
        return Err(Error::NotPeriodic(n));
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            terms.push(cross(&pts[i], &pts[j]));
        }
    }
    let mut report = DistanceReport {
        places: support_places(&terms, s),
        ..Default::default()
    };
    let idx = |i: usize| i % n;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&pts[i], &pts[j]);
            let (a1, b1) = (&pts[idx(i + 1)], &pts[idx(j + 1)]);
            let coprime = num_integer::gcd(i.abs_diff(j), n) == 1;
            for place in &report.places {
                report.relations += 1;
                let d = log_distance(a, b, place);
                if d != log_distance(a1, b1, place) {
                    report.violations.push(format!("shift: δ(P{i}, P{j}) at {place}"));
                }
                if coprime && d != log_distance(&pts[1 % n], &pts[0], place) {
                    report.violations.push(format!("coprime: δ(P{i}, P{j}) at {place}"));
                }
            }
            report.relations += 1;
            if !same_outside(&cross(a, b), &cross(a1, b1), s) {
                report.violations.push(format!("shift: δ(P{i}, P{j}) at a finite place"));
            }
            if coprime && !same_outside(&cross(a, b), &cross(&pts[1 % n], &pts[0]), s) {
                report.violations.push(format!("coprime: δ(P{i}, P{j}) at a finite place"));
            }
        }
    }
    Ok(report)
}

/// For a tail `P_{-m+1} ↦ … ↦ P_0` ending at a fixed point, checks
/// `δ(P_{-b}, P_{-a}) = δ(P_{-b}, P_0) ≤ δ(P_{-a}, P_0)` for `0 < a < b`.
/// `tail[i]` is `P_{-(m-1)+i}`, so the last entry is `P_0`.
pub fn check_tail_inequality(phi: &EndoMap, tail: &[ProjPoint], s: &PlaceSet) -> Result<DistanceReport> {
    let m = tail.len();
    if m == 0 {
        return Err(Error::BadOrbitShape("empty tail".into()));
    }
    let p0 = &tail[m - 1];
    if phi.evaluate(p0) != *p0 {
        return Err(Error::BadOrbitShape("last point is not fixed".into()));
    }
    for w in tail.windows(2) {
        if phi.evaluate(&w[0]) != w[1] {
            return Err(Error::BadOrbitShape("consecutive points are not images".into()));
        }
    }
    if tail[..m - 1].contains(p0) {
        return Err(Error::BadOrbitShape("tail reaches the fixed point early".into()));
    }
    // P_{-a} = tail[m - 1 - a].
    let at = |a: usize| &tail[m - 1 - a];
    let mut terms = Vec::new();
    for b in 1..m {
        terms.push(cross(at(b), p0));
        for a in 1..b {
            terms.push(cross(at(b), at(a)));
        }
    }
    let mut report = DistanceReport {
        places: support_places(&terms, s),
        ..Default::default()
    };
    for b in 2..m {
        for a in 1..b {
            let (pb, pa) = (at(b), at(a));
            for place in &report.places {
                report.relations += 1;
                let ba = log_distance(pb, pa, place);
                let b0 = log_distance(pb, p0, place);
                let a0 = log_distance(pa, p0, place);
                if ba != b0 || b0 > a0 {
                    report.violations.push(format!("a={a}, b={b} at {place}"));
                }
            }
            report.relations += 1;
            let (cba, cb0, ca0) = (cross(pb, pa), cross(pb, p0), cross(pa, p0));
            if !same_outside(&cba, &cb0, s) || !divides_outside(&cb0, &ca0, s) {
                report.violations.push(format!("a={a}, b={b} at a finite place"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{conjugate, Mobius};
    use crate::field::{scalar, FuncElem, Poly};

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }
    fn pt(cs: &[i64]) -> ProjPoint {
        ProjPoint::affine(&FuncElem::from_poly(p(cs)))
    }
    fn poly_map(f: &[&[i64]], g: &[&[i64]]) -> EndoMap {
        EndoMap::from_polys(f.iter().map(|c| p(c)).collect(), g.iter().map(|c| p(c)).collect()).unwrap()
    }
    fn at0() -> Place {
        Place::at(scalar(0))
    }

    #[test]
    fn distance_examples() {
        assert_eq!(log_distance(&pt(&[]), &pt(&[0, 1]), &at0()), DistanceValue::Finite(1));
        assert_eq!(log_distance(&pt(&[]), &ProjPoint::infinity(), &at0()), DistanceValue::Finite(0));
        let inv_t = ProjPoint::affine(&FuncElem::new(p(&[1]), p(&[0, 1])).unwrap());
        assert_eq!(log_distance(&inv_t, &pt(&[0, 1]), &at0()), DistanceValue::Finite(0));
        assert_eq!(log_distance(&inv_t, &inv_t, &at0()), DistanceValue::Infinite);
        // At infinity 1/t and 1/(t + 1) differ by 1/(t(t + 1)).
        assert_eq!(log_distance(&pt(&[0, 1]), &pt(&[1, 1]), &Place::Infinity), DistanceValue::Finite(2));
    }

    #[test]
    fn triangle_examples() {
        assert!(check_triangle(&pt(&[]), &pt(&[0, 1]), &pt(&[0, 0, 1]), &at0()));
        assert_eq!(log_distance(&pt(&[]), &pt(&[0, 0, 1]), &at0()), DistanceValue::Finite(2));
        assert!(check_triangle(&pt(&[]), &pt(&[1]), &ProjPoint::infinity(), &at0()));
    }

    #[test]
    fn expansion_examples() {
        let quad = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        assert!(check_expansion(&quad, &pt(&[]), &pt(&[0, 1]), &at0()).unwrap());
        assert_eq!(
            log_distance(&quad.evaluate(&pt(&[])), &quad.evaluate(&pt(&[0, 1])), &at0()),
            DistanceValue::Finite(2)
        );
        let tz2 = poly_map(&[&[], &[], &[0, 1]], &[&[1]]);
        assert_eq!(check_expansion(&tz2, &pt(&[]), &pt(&[1]), &at0()), Err(Error::NotSimpleGoodReduction));
    }

    #[test]
    fn cycle_examples() {
        let phi = poly_map(&[&[-1, -1, -1], &[], &[1]], &[&[1]]);
        let r = check_cycle_distances(&phi, &pt(&[0, 1]), 2, &PlaceSet::infinity()).unwrap();
        assert!(r.passed());
        assert_eq!(r.places, vec![Place::at(scalar(-1) / scalar(2))]);
        let quad = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        assert!(check_cycle_distances(&quad, &pt(&[0, 1]), 1, &PlaceSet::infinity()).unwrap().passed());
        assert_eq!(
            check_cycle_distances(&quad, &pt(&[1]), 2, &PlaceSet::infinity()),
            Err(Error::NotPeriodic(2))
        );
    }

    #[test]
    fn tail_examples() {
        // z^2 - t^2 - t - 1 conjugated by z - t puts the cycle point t at 0;
        // under the square of that map, 0 is fixed and -2t maps to 0.
        let phi = poly_map(&[&[-1, -1, -1], &[], &[1]], &[&[1]]);
        let a = Mobius::affine(&FuncElem::one(), &FuncElem::from_poly(p(&[0, -1]))).unwrap();
        let psi = conjugate(&phi, &a);
        let psi2 = psi.compose(&psi);
        let zero = pt(&[]);
        assert_eq!(psi2.evaluate(&zero), zero);
        let pre = a.apply(&pt(&[0, -1]));
        let tail = vec![pre.clone(), psi2.evaluate(&pre)];
        assert_eq!(tail[1], zero);
        let r = check_tail_inequality(&psi2, &tail, &PlaceSet::infinity()).unwrap();
        assert!(r.passed());
        assert!(check_tail_inequality(&psi2, &[zero], &PlaceSet::infinity()).unwrap().passed());
        assert!(check_tail_inequality(&psi2, &[pt(&[5])], &PlaceSet::infinity()).is_err());
    }
}
