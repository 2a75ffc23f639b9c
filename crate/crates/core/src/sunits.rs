//! S-integers, S-units, S-coprime forms and a box-bounded solver for the
//! two-term unit equation `λx + μy = 1`.

use crate::error::{Error, Result};
use crate::field::{BasePoly, FuncElem, Place, Poly, ProjPoint, Scalar};
use num_traits::Zero;
use rayon::prelude::*;
use std::fmt;

/// Default limit on the number of monomial pairs the solver may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// A nonempty finite set of places, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlaceSet {
    places: Vec<Place>,
}

impl PlaceSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let mut places: Vec<Place> = places.into_iter().collect();
        places.sort();
        places.dedup();
        if places.is_empty() {
            return Err(Error::EmptyPlaceSet);
        }
        Ok(PlaceSet { places })
    }

    pub fn infinity() -> Self {
        PlaceSet {
            places: vec![Place::Infinity],
        }
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// Cardinality over the algebraic closure: a place of degree `e`
    /// accounts for `e` places of `k̄(t)`.
    pub fn s(&self) -> usize {
        self.places.iter().map(Place::degree).sum()
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.places.binary_search(p).is_ok()
    }

    pub fn has_infinity(&self) -> bool {
        self.places.last() == Some(&Place::Infinity)
    }

    /// Roots `a` of the degree-one finite places `t - a`, ascending.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        self.places.iter().filter_map(Place::root).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.places.iter().all(|p| p.degree() == 1)
    }

    /// The factor of `f` with no zeros in `S`.
    pub fn strip(&self, f: &BasePoly) -> BasePoly {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut f = f.clone();
        for p in &self.places {
            if let Place::Finite(g) = p {
                f = f.split_multiplicity(g).1;
            }
        }
        f
    }

    pub fn with(&self, p: Place) -> PlaceSet {
        let mut v = self.places.clone();
        v.push(p);
        PlaceSet::new(v).expect("nonempty")
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.places.iter().map(Place::label).collect();
        f.write_str(&labels.join(","))
    }
}

/// Non-negative valuation at every place outside `S`.
pub fn is_s_integer(x: &FuncElem, s: &PlaceSet) -> bool {
    if x.is_zero() {
        return true;
    }
    s.strip(x.den()).is_constant() && (s.has_infinity() || x.num().deg0() <= x.den().deg0())
}

/// Zero valuation at every place outside `S`.
pub fn is_s_unit(x: &FuncElem, s: &PlaceSet) -> bool {
    !x.is_zero()
        && s.strip(x.num()).is_constant()
        && s.strip(x.den()).is_constant()
        && (s.has_infinity() || x.num().deg0() == x.den().deg0())
}

/// Writes a point as `a/b` with `a, b` S-integers having no common zero
/// outside `S`. Infinity maps to `(1, 0)` and zero to `(0, 1)`.
///
/// When infinity is not in `S` the pole at infinity is moved onto a
/// degree-one place of `S`; sets with neither are rejected.
pub fn s_coprime_form(p: &ProjPoint, s: &PlaceSet) -> Result<(FuncElem, FuncElem)> {
    if p.is_infinity() {
        return Ok((FuncElem::one(), FuncElem::zero()));
    }
    let b_out = s.strip(p.y());
    let b_in = p.y().div_rem(&b_out).0;
    let a = FuncElem::new(p.x().clone(), b_in.clone())?;
    let b = FuncElem::from_poly(b_out.clone());
    if s.has_infinity() {
        return Ok((a, b));
    }
    let alpha = s.rational_roots().into_iter().next().ok_or(Error::NonRationalLattice)?;
    let excess = if p.x().is_zero() {
        0
    } else {
        p.x().deg0() as i64 - b_in.deg0() as i64
    };
    let m = excess.max(b_out.deg0() as i64);
    let shift = FuncElem::from_poly(Poly::linear_root(&alpha)).pow(-m)?;
    Ok((&a * &shift, &b * &shift))
}

/// Generators of `R_S^* / k^*`.
///
/// With infinity in `S` these are the `t - a_i`; otherwise the quotients
/// `(t - a_i)/(t - a_0)` against the last finite place `a_0`.
pub fn sunit_basis(s: &PlaceSet) -> Result<Vec<FuncElem>> {
    if !s.is_rational() {
        return Err(Error::NonRationalLattice);
    }
    let lin: Vec<FuncElem> = s
        .rational_roots()
        .iter()
        .map(|a| FuncElem::from_poly(Poly::linear_root(a)))
        .collect();
    if s.has_infinity() {
        return Ok(lin);
    }
    let (base, rest) = lin.split_last().expect("S has a finite place");
    Ok(rest.iter().map(|g| g.checked_div(base).expect("nonzero")).collect())
}

/// `constant * Π basis_i^exponents_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SUnit {
    pub constant: Scalar,
    pub exponents: Vec<i64>,
    pub value: FuncElem,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitEqSolution {
    pub x: SUnit,
    pub y: SUnit,
    /// `λx/μy` is constant. Such solutions come in one-parameter families;
    /// the reported one has `λx = μy`.
    pub degenerate: bool,
}

/// All solutions of `λx + μy = 1` whose exponent vectors lie in `[-E, E]`.
///
/// Fails when `(2E+1)^(2(s-1))` monomial pairs exceed `cap`.
pub fn solve_unit_equation(
    lambda: &FuncElem,
    mu: &FuncElem,
    s: &PlaceSet,
    bound: u32,
    cap: u128,
) -> Result<Vec<UnitEqSolution>> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::InvalidArgument("unit equation coefficients must be nonzero".into()));
    }
    let basis = sunit_basis(s)?;
    let rank = basis.len();
    let side = 2 * bound as u128 + 1;
    let needed = u32::try_from(2 * rank)
        .ok()
        .and_then(|e| side.checked_pow(e))
        .unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::EnumerationCap { needed, cap });
    }
    let monomials = exponent_box(rank, bound as i64)
        .into_iter()
        .map(|e| {
            let mut v = FuncElem::one();
            for (g, &k) in basis.iter().zip(&e) {
                v = &v * &g.pow(k).expect("nonzero generator");
            }
            (e, v)
        })
        .collect::<Vec<_>>();
    let per_x: Vec<Vec<UnitEqSolution>> = monomials
        .par_iter()
        .map(|(ex, u)| {
            let lu = lambda * u;
            monomials
                .iter()
                .filter_map(|(ey, v)| solve_pair(&lu, &(mu * v)).map(|(c, c2, degenerate)| (ey, v, c, c2, degenerate)))
                .map(|(ey, v, c, c2, degenerate)| UnitEqSolution {
                    x: SUnit {
                        value: u * &FuncElem::constant(c.clone()),
                        constant: c,
                        exponents: ex.clone(),
                    },
                    y: SUnit {
                        value: v * &FuncElem::constant(c2.clone()),
                        constant: c2,
                        exponents: ey.clone(),
                    },
                    degenerate,
                })
                .collect()
        })
        .collect();
    let mut out: Vec<UnitEqSolution> = Vec::new();
    for sol in per_x.into_iter().flatten() {
        if !out.iter().any(|o| o.x.value == sol.x.value && o.y.value == sol.y.value) {
            out.push(sol);
        }
    }
    Ok(out)
}

/// Constants `c, c'` (both nonzero) with `c·P + c'·Q = 1`, and whether
/// `P/Q` is constant.
fn solve_pair(p: &FuncElem, q: &FuncElem) -> Option<(Scalar, Scalar, bool)> {
    let ratio = p.checked_div(q).ok()?;
    if let Some(kappa) = ratio.as_constant() {
        // c·κ·Q + c'·Q = 1 needs Q constant; take c·κ·Q = c'·Q = 1/2.
        let qc = q.as_constant()?;
        let half = Scalar::new(1.into(), 2.into());
        let c2 = &half / &qc;
        let c = &c2 / &kappa;
        return Some((c, c2, true));
    }
    let a = p.num() * q.den();
    let b = q.num() * p.den();
    let r = p.den() * q.den();
    let n = a.coeffs().len().max(b.coeffs().len()).max(r.coeffs().len());
    for i in 0..n {
        for j in i + 1..n {
            let det = a.coeff(i) * b.coeff(j) - a.coeff(j) * b.coeff(i);
            if det.is_zero() {
                continue;
            }
            let c = (r.coeff(i) * b.coeff(j) - r.coeff(j) * b.coeff(i)) / &det;
            let c2 = (a.coeff(i) * r.coeff(j) - a.coeff(j) * r.coeff(i)) / &det;
            if c.is_zero() || c2.is_zero() {
                return None;
            }
            let lhs = &a.scale(&c) + &b.scale(&c2);
            return (lhs == r).then_some((c, c2, false));
        }
    }
    // Unreachable: proportional A, B would make P/Q constant.
    None
}

fn exponent_box(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|e| {
                (-bound..=bound).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

pub fn nondegenerate_count(solutions: &[UnitEqSolution]) -> usize {
    solutions.iter().filter(|s| !s.degenerate).count()
}
