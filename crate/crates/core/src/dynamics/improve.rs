//! A bounded local search for conjugations that lower the resultant
//! valuation at a place, and the isotriviality diagnostic built on it.
//!
//! This is a heuristic: failing to find an improvement says nothing about
//! minimality.

use super::map::EndoMap;
use super::mobius::{conjugate, Mobius};
use super::pairs::{constant_pairs, ConstantPairs};
use crate::error::Result;
use crate::field::{FuncElem, Place, Poly};
use crate::orbits::k_rational_roots_in_z;

/// Range of uniformizer exponents tried for the scaling part.
pub const EXPONENT_RANGE: i64 = 3;
const MAX_STEPS: usize = 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Improvement {
    /// Composite conjugation, so `conjugate(φ, witness) == map`.
    pub witness: Mobius,
    pub map: EndoMap,
    pub valuation_before: i64,
    pub valuation_after: i64,
}

/// Uniformizer at `p` as an element of `K`.
fn uniformizer(p: &Place) -> FuncElem {
    match p {
        Place::Infinity => FuncElem::t().checked_inv().expect("nonzero"),
        Place::Finite(g) => FuncElem::from_poly(g.clone()),
    }
}

fn translation_candidates(phi: &EndoMap, pi: &FuncElem) -> Vec<FuncElem> {
    let mut vs = vec![FuncElem::zero()];
    let d = phi.degree();
    let (f, g) = (phi.numerator(), phi.denominator());
    // Centering: for a polynomial map, w = z + f_{d-1}/(d f_d) kills the
    // next-to-top coefficient.
    if g.deg0() == 0 && !f.coeff(d).is_zero() {
        let v = f.coeff(d - 1).checked_div(&(&f.coeff(d) * &FuncElem::from_int(d as i64)));
        vs.extend(v.ok());
    }
    // Moving a K-rational fixed point to 0.
    let fixed = &f - &(&g * &Poly::x());
    if !fixed.is_zero() {
        if let Ok(roots) = k_rational_roots_in_z(&fixed) {
            vs.extend(roots.into_iter().map(|r| -r));
        }
    }
    for j in -2..=2i64 {
        let m = pi.pow(j).expect("nonzero uniformizer");
        vs.push(m.clone());
        vs.push(-m);
    }
    let mut seen = Vec::new();
    vs.retain(|v| {
        let fresh = !seen.contains(v);
        if fresh {
            seen.push(v.clone());
        }
        fresh
    });
    vs
}

/// One round: the candidate `A(z) = π^e z + v` with the smallest valuation,
/// if it beats `current`.
fn best_step(phi: &EndoMap, p: &Place, current: i64) -> Result<Option<(Mobius, EndoMap, i64)>> {
    let pi = uniformizer(p);
    let mut exps = vec![];
    for e in 1..=EXPONENT_RANGE {
        exps.push(e);
        exps.push(-e);
    }
    exps.push(0);
    let mut best: Option<(Mobius, EndoMap, i64)> = None;
    for v in translation_candidates(phi, &pi) {
        for &e in &exps {
            let a = Mobius::affine(&pi.pow(e)?, &v)?;
            if a.is_identity() {
                continue;
            }
            let psi = conjugate(phi, &a);
            let val = psi.resultant_valuation(p)?;
            if val < current && best.as_ref().is_none_or(|b| val < b.2) {
                best = Some((a, psi, val));
            }
        }
    }
    Ok(best)
}

/// Searches conjugations `A(z) = π^e z + v` that lower the valuation of the
/// resultant at `p`, iterating to a local minimum. `None` when the first
/// round finds nothing.
pub fn improve_reduction(phi: &EndoMap, p: &Place) -> Result<Option<Improvement>> {
    let before = phi.resultant_valuation(p)?;
    let mut current = before;
    let mut map = phi.clone();
    let mut witness = Mobius::identity();
    for _ in 0..MAX_STEPS {
        if current == 0 {
            break;
        }
        match best_step(&map, p, current)? {
            Some((a, psi, val)) => {
                witness = a.compose(&witness);
                map = psi;
                current = val;
            }
            None => break,
        }
    }
    Ok((current < before).then_some(Improvement {
        witness,
        map,
        valuation_before: before,
        valuation_after: current,
    }))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Isotriviality {
    /// `conjugate(φ, witness)` has constant coefficients.
    IsotrivialOverK { witness: Mobius },
    /// Not a proof: the constant-pair set is finite and the descent kept a
    /// `t`-dependent map.
    LikelyNonIsotrivial {
        rational_pairs: usize,
        closure_pairs: usize,
        pair_bound: usize,
    },
    Inconclusive { reason: String },
}

impl Isotriviality {
    pub fn label(&self) -> &'static str {
        match self {
            Isotriviality::IsotrivialOverK { .. } => "IsotrivialOverK",
            Isotriviality::LikelyNonIsotrivial { .. } => "LikelyNonIsotrivial",
            Isotriviality::Inconclusive { .. } => "Inconclusive",
        }
    }
}

const DESCENT_ROUNDS: usize = 4;

pub fn isotriviality_diagnostic(phi: &EndoMap) -> Result<Isotriviality> {
    if phi.has_constant_coefficients() {
        return Ok(Isotriviality::IsotrivialOverK {
            witness: Mobius::identity(),
        });
    }
    let mut map = phi.clone();
    let mut witness = Mobius::identity();
    for _ in 0..DESCENT_ROUNDS {
        let mut moved = false;
        for p in map.bad_places()?.rational_places() {
            if let Some(imp) = improve_reduction(&map, &p)? {
                witness = imp.witness.compose(&witness);
                map = imp.map;
                moved = true;
            }
        }
        if map.has_constant_coefficients() {
            return Ok(Isotriviality::IsotrivialOverK { witness });
        }
        if !moved {
            break;
        }
    }
    Ok(match constant_pairs(phi)? {
        ConstantPairs::Finite { pairs, closure_count } => Isotriviality::LikelyNonIsotrivial {
            rational_pairs: pairs.len(),
            closure_pairs: closure_count,
            pair_bound: 2 * phi.degree(),
        },
        ConstantPairs::Infinite => Isotriviality::Inconclusive {
            reason: "constant-pair set is infinite".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{scalar, BasePoly};

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }
    fn poly_map(f: &[&[i64]], g: &[&[i64]]) -> EndoMap {
        EndoMap::from_polys(f.iter().map(|c| p(c)).collect(), g.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn t_z2_improves_to_z2() {
        let phi = poly_map(&[&[], &[], &[0, 1]], &[&[1]]);
        let imp = improve_reduction(&phi, &Place::at(scalar(0))).unwrap().unwrap();
        assert_eq!(imp.witness, Mobius::affine(&FuncElem::t(), &FuncElem::zero()).unwrap());
        assert_eq!(imp.map, poly_map(&[&[], &[], &[1]], &[&[1]]));
        assert_eq!((imp.valuation_before, imp.valuation_after), (2, 0));
        assert_eq!(conjugate(&phi, &imp.witness), imp.map);
    }

    #[test]
    fn t2_z2_improves_to_z2() {
        let phi = poly_map(&[&[], &[], &[0, 0, 1]], &[&[1]]);
        let imp = improve_reduction(&phi, &Place::at(scalar(0))).unwrap().unwrap();
        assert_eq!(imp.map, poly_map(&[&[], &[], &[1]], &[&[1]]));
        assert_eq!(conjugate(&phi, &imp.witness), imp.map);
    }

    #[test]
    fn unit_resultant_has_nothing_to_improve() {
        let phi = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        assert!(improve_reduction(&phi, &Place::at(scalar(0))).unwrap().is_none());
        assert!(improve_reduction(&phi, &Place::at(scalar(5))).unwrap().is_none());
    }

    #[test]
    fn diagnostic_examples() {
        let tz2 = poly_map(&[&[], &[], &[0, 1]], &[&[1]]);
        match isotriviality_diagnostic(&tz2).unwrap() {
            Isotriviality::IsotrivialOverK { witness } => {
                assert!(conjugate(&tz2, &witness).has_constant_coefficients());
                assert_eq!(witness, Mobius::affine(&FuncElem::t(), &FuncElem::zero()).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let quad = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        assert_eq!(isotriviality_diagnostic(&quad).unwrap().label(), "LikelyNonIsotrivial");
        let z2 = poly_map(&[&[], &[], &[1]], &[&[1]]);
        assert_eq!(
            isotriviality_diagnostic(&z2).unwrap(),
            Isotriviality::IsotrivialOverK {
                witness: Mobius::identity()
            }
        );
    }

    #[test]
    fn translated_constant_map_is_detected() {
        // (z - t)^2 + t is z^2 conjugated by z + t.
        let phi = poly_map(&[&[0, 1, 1], &[0, -2], &[1]], &[&[1]]);
        match isotriviality_diagnostic(&phi).unwrap() {
            Isotriviality::IsotrivialOverK { witness } => {
                assert!(conjugate(&phi, &witness).has_constant_coefficients())
            }
            other => panic!("{other:?}"),
        }
    }
}
