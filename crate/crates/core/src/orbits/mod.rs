//! Orbits, periodic points, preimages and the backward closure of the
//! periodic points.

mod zroots;

pub use zroots::k_rational_roots_in_z;

use crate::bounds::{bound_preper_count, BoundConfig, BoundExpr};
use crate::dynamics::{isotriviality_diagnostic, EndoMap, Isotriviality};
use crate::error::{Error, Result};
use crate::field::{scalar_bits, BasePoly, FuncElem, Poly, ProjPoint};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const DEFAULT_MAX_ITER: usize = 64;
pub const DEFAULT_HEIGHT_CAP: u64 = 64;
pub const DEFAULT_PERIOD_CAP: usize = 3;
pub const DEFAULT_VERTEX_CAP: usize = 256;
/// Largest iterate degree `d^n` that will be composed out.
pub const DEFAULT_COMPOSITION_CAP: u128 = 4096;

/// Degree and coefficient size of a point, used to flag escaping orbits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NaiveHeight {
    pub degree: usize,
    pub bits: u64,
}

impl NaiveHeight {
    pub fn of(p: &ProjPoint) -> Self {
        let bits = p.x().coeffs().iter().chain(p.y().coeffs()).map(scalar_bits).max().unwrap_or(0);
        NaiveHeight {
            degree: p.degree(),
            bits,
        }
    }

    pub fn exceeds(&self, cap: u64) -> bool {
        self.degree as u64 > cap || self.bits > cap
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitStatus {
    Cycle,
    HeightEscape,
    CapReached,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitRecord {
    /// Distinct iterates `P, φ(P), …` in order.
    pub points: Vec<ProjPoint>,
    /// Tail length `m`; meaningful for cycles.
    pub tail: usize,
    /// Period `n` when the orbit closes up.
    pub period: Option<usize>,
    pub status: OrbitStatus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrbitCaps {
    pub max_iter: usize,
    pub height_cap: u64,
}

impl Default for OrbitCaps {
    fn default() -> Self {
        OrbitCaps {
            max_iter: DEFAULT_MAX_ITER,
            height_cap: DEFAULT_HEIGHT_CAP,
        }
    }
}

/// Iterates until the first repeated point, an iterate whose naive height
/// exceeds `height_cap`, or `max_iter` evaluations.
pub fn orbit(phi: &EndoMap, p: &ProjPoint, max_iter: usize, height_cap: u64) -> OrbitRecord {
    let mut points = vec![p.clone()];
    let mut seen = HashMap::from([(p.clone(), 0usize)]);
    for _ in 0..max_iter.max(1) {
        let next = phi.evaluate(points.last().expect("nonempty"));
        if let Some(&m) = seen.get(&next) {
            return OrbitRecord {
                period: Some(points.len() - m),
                points,
                tail: m,
                status: OrbitStatus::Cycle,
            };
        }
        let escaped = NaiveHeight::of(&next).exceeds(height_cap);
        seen.insert(next.clone(), points.len());
        points.push(next);
        if escaped {
            return OrbitRecord {
                points,
                tail: 0,
                period: None,
                status: OrbitStatus::HeightEscape,
            };
        }
    }
    OrbitRecord {
        points,
        tail: 0,
        period: None,
        status: OrbitStatus::CapReached,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Preperiodic { m: usize, n: usize },
    NotPreperiodicHeuristic,
    Unknown,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Preperiodic { .. } => "Preperiodic",
            Classification::NotPreperiodicHeuristic => "NotPreperiodicHeuristic",
            Classification::Unknown => "Unknown",
        }
    }
}

fn apply_n(phi: &EndoMap, p: &ProjPoint, n: usize) -> ProjPoint {
    (0..n).fold(p.clone(), |q, _| phi.evaluate(&q))
}

pub fn classify(phi: &EndoMap, p: &ProjPoint, caps: OrbitCaps) -> Classification {
    let rec = orbit(phi, p, caps.max_iter, caps.height_cap);
    match rec.status {
        OrbitStatus::Cycle => {
            let period = rec.period.expect("cycle has a period");
            let start = &rec.points[rec.tail];
            let n = (1..=period)
                .find(|&e| period.is_multiple_of(e) && apply_n(phi, start, e) == *start)
                .expect("period closes the cycle");
            Classification::Preperiodic { m: rec.tail, n }
        }
        OrbitStatus::HeightEscape => Classification::NotPreperiodicHeuristic,
        OrbitStatus::CapReached => Classification::Unknown,
    }
}

/// `φ^n` as a map of degree `d^n`.
pub fn iterate(phi: &EndoMap, n: usize, cap: u128) -> Result<EndoMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("iterate count must be positive".into()));
    }
    let degree = u32::try_from(n)
        .ok()
        .and_then(|e| (phi.degree() as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if degree > cap {
        return Err(Error::CompositionCap { degree, cap });
    }
    let mut psi = phi.clone();
    for _ in 1..n {
        psi = phi.compose(&psi);
    }
    Ok(psi)
}

fn to_k(form: &[BasePoly]) -> Poly<FuncElem> {
    Poly::new(form.iter().cloned().map(FuncElem::from_poly).collect())
}

/// Points of exact period `n`, sorted.
pub fn periodic_points(phi: &EndoMap, n: usize, cap: u128) -> Result<Vec<ProjPoint>> {
    let psi = iterate(phi, n, cap)?;
    let fixed = &psi.numerator() - &(&psi.denominator() * &Poly::x());
    if fixed.is_zero() {
        return Err(Error::IdentityIterate);
    }
    let mut pts: Vec<ProjPoint> = k_rational_roots_in_z(&fixed)?.iter().map(ProjPoint::affine).collect();
    // Infinity is fixed by the iterate when G(1, 0) = 0.
    if psi.g()[psi.degree()].is_zero() {
        pts.push(ProjPoint::infinity());
    }
    pts.retain(|p| (1..n).all(|e| apply_n(phi, p, e) != *p));
    pts.sort();
    Ok(pts)
}

/// All `P` in `P^1(K)` with `φ(P) = Q`, sorted.
pub fn preimages(phi: &EndoMap, q: &ProjPoint) -> Result<Vec<ProjPoint>> {
    let yq = FuncElem::from_poly(q.y().clone());
    let xq = FuncElem::from_poly(q.x().clone());
    let eq = &to_k(phi.f()).scale(&yq) - &to_k(phi.g()).scale(&xq);
    let mut pts: Vec<ProjPoint> = k_rational_roots_in_z(&eq)?.iter().map(ProjPoint::affine).collect();
    if phi.evaluate(&ProjPoint::infinity()) == *q {
        pts.push(ProjPoint::infinity());
    }
    pts.sort();
    Ok(pts)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PreperCaps {
    /// Periodic points of period up to this seed the closure.
    pub period_cap: usize,
    pub vertex_cap: usize,
    pub composition_cap: u128,
}

impl Default for PreperCaps {
    fn default() -> Self {
        PreperCaps {
            period_cap: DEFAULT_PERIOD_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP,
            composition_cap: DEFAULT_COMPOSITION_CAP,
        }
    }
}

/// Preperiodic points found by backward closure, with edges `P → φ(P)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreperGraph {
    /// Sorted.
    pub vertices: Vec<ProjPoint>,
    /// `(P, φ(P))` for every vertex, in vertex order.
    pub edges: Vec<(ProjPoint, ProjPoint)>,
    /// Each cycle listed in orbit order from its smallest point.
    pub cycles: Vec<Vec<ProjPoint>>,
    /// The closure stopped at a cap or could not be seeded in full.
    pub incomplete: bool,
    /// The `s` used for the count bound: bad places over the closure, at least 1.
    pub s: usize,
    pub count_bound: Option<BoundExpr>,
    /// `Some(true)` when the vertex count is certified below the bound.
    pub within_bound: Option<bool>,
    pub notes: Vec<String>,
}

impl PreperGraph {
    pub fn is_periodic(&self, p: &ProjPoint) -> bool {
        self.cycles.iter().any(|c| c.contains(p))
    }
}

pub fn preper_set(phi: &EndoMap, caps: PreperCaps) -> Result<PreperGraph> {
    let mut notes = Vec::new();
    let mut incomplete = false;
    if let Isotriviality::IsotrivialOverK { .. } = isotriviality_diagnostic(phi)? {
        notes.push("map is isotrivial; the count bound does not apply".to_string());
    }
    let mut periodic = BTreeSet::new();
    for n in 1..=caps.period_cap {
        match periodic_points(phi, n, caps.composition_cap) {
            Ok(pts) => periodic.extend(pts),
            Err(e @ (Error::CompositionCap { .. } | Error::IdentityIterate)) => {
                notes.push(format!("period {n}: {e}"));
                incomplete = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut vertices: BTreeSet<ProjPoint> = periodic.clone();
    if vertices.len() > caps.vertex_cap {
        vertices = vertices.into_iter().take(caps.vertex_cap).collect();
        incomplete = true;
    }
    let mut frontier: Vec<ProjPoint> = vertices.iter().cloned().collect();
    'closure: while !frontier.is_empty() {
        let found: Vec<Vec<ProjPoint>> = frontier.par_iter().map(|q| preimages(phi, q)).collect::<Result<_>>()?;
        let fresh: BTreeSet<ProjPoint> = found.into_iter().flatten().filter(|p| !vertices.contains(p)).collect();
        frontier = Vec::new();
        for p in fresh {
            if vertices.len() >= caps.vertex_cap {
                notes.push(format!("vertex cap {} reached", caps.vertex_cap));
                incomplete = true;
                break 'closure;
            }
            vertices.insert(p.clone());
            frontier.push(p);
        }
    }
    let edges: Vec<(ProjPoint, ProjPoint)> = vertices.iter().map(|p| (p.clone(), phi.evaluate(p))).collect();
    let succ: BTreeMap<&ProjPoint, &ProjPoint> = edges.iter().map(|(a, b)| (a, b)).collect();
    let mut cycles = Vec::new();
    let mut placed = BTreeSet::new();
    for p in &periodic {
        if !vertices.contains(p) || placed.contains(p) {
            continue;
        }
        let mut cycle = vec![p.clone()];
        let mut q = succ[p];
        while q != p {
            cycle.push(q.clone());
            q = succ.get(q).copied().unwrap_or(p);
        }
        placed.extend(cycle.iter().cloned());
        cycles.push(cycle);
    }
    let s = phi.bad_places()?.count_over_closure().max(1);
    let count_bound = bound_preper_count(phi.degree() as u64, s as u64, &BoundConfig::default()).ok();
    let within_bound = count_bound.as_ref().map(|b| b.at_least(vertices.len() as u64));
    if within_bound == Some(false) {
        notes.push("vertex count exceeds the bound".to_string());
    }
    Ok(PreperGraph {
        vertices: vertices.into_iter().collect(),
        edges,
        cycles,
        incomplete,
        s,
        count_bound,
        within_bound,
        notes,
    })
}
