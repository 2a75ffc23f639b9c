use super::{rational_roots, squarefree_radical, BasePoly, FuncElem, Poly, Scalar};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// A place of `k(t)`: the zero of a monic irreducible polynomial, or the
/// place at infinity (the zero of `1/t`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Finite(BasePoly),
    Infinity,
}

impl Place {
    /// The degree-one place `t - a`.
    pub fn at(a: Scalar) -> Self {
        Place::Finite(Poly::linear_root(&a))
    }

    /// A finite place from its generator.
    ///
    /// Irreducibility is certified up to degree 3 (no rational root); above
    /// that the generator is screened for squarefreeness and rational roots.
    pub fn finite(generator: BasePoly) -> Result<Self> {
        let d = generator
            .degree()
            .ok_or_else(|| Error::InvalidPlace("zero generator".into()))?;
        if d == 0 {
            return Err(Error::InvalidPlace("constant generator".into()));
        }
        if !generator.is_monic() {
            return Err(Error::InvalidPlace(format!("generator {generator} is not monic")));
        }
        if d > 1 {
            if squarefree_radical(&generator)? != generator {
                return Err(Error::InvalidPlace(format!("generator {generator} is not squarefree")));
            }
            if !rational_roots(&generator)?.is_empty() {
                return Err(Error::InvalidPlace(format!("generator {generator} is reducible")));
            }
        }
        Ok(Place::Finite(generator))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(g) => g.deg0(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// `a` for the place `t - a`.
    pub fn root(&self) -> Option<Scalar> {
        match self {
            Place::Finite(g) if g.degree() == Some(1) => Some(-g.coeff(0)),
            _ => None,
        }
    }

    /// Short form used on the command line: `inf`, the value `a` for
    /// `t - a`, or the generator.
    pub fn label(&self) -> String {
        match (self, self.root()) {
            (Place::Infinity, _) => "inf".into(),
            (_, Some(a)) => a.to_string(),
            (Place::Finite(g), None) => g.to_string(),
        }
    }

    pub fn generator(&self) -> Option<&BasePoly> {
        match self {
            Place::Finite(g) => Some(g),
            Place::Infinity => None,
        }
    }

    /// Valuation of a nonzero polynomial.
    pub fn poly_valuation(&self, f: &BasePoly) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroValuation);
        }
        Ok(match self {
            Place::Infinity => -(f.deg0() as i64),
            Place::Finite(g) => f.split_multiplicity(g).0 as i64,
        })
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| match (self.root(), other.root()) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    _ => a.cmp(b),
                }),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(g) => write!(f, "{g}"),
        }
    }
}

/// Reduction of an element of `K` modulo a degree-one place.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Residue {
    Value(Scalar),
    Infinity,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Value(v) => write!(f, "{v}"),
            Residue::Infinity => f.write_str("inf"),
        }
    }
}

/// Normalized valuation of a nonzero element at a place.
pub fn valuation(x: &FuncElem, p: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(match p {
        Place::Infinity => x.den().deg0() as i64 - x.num().deg0() as i64,
        Place::Finite(_) => p.poly_valuation(x.num())? - p.poly_valuation(x.den())?,
    })
}

/// The image of `x` in the residue field, or infinity at a pole.
pub fn reduce_at(x: &FuncElem, p: &Place) -> Result<Residue> {
    if p.degree() != 1 {
        return Err(Error::UnsupportedPlace);
    }
    if x.is_zero() {
        return Ok(Residue::Value(Scalar::zero()));
    }
    let v = valuation(x, p)?;
    if v < 0 {
        return Ok(Residue::Infinity);
    }
    if v > 0 {
        return Ok(Residue::Value(Scalar::zero()));
    }
    Ok(Residue::Value(match p {
        Place::Infinity => x.num().leading().unwrap() / x.den().leading().unwrap(),
        Place::Finite(_) => {
            let a = p.root().expect("degree-one place");
            x.eval(&a).expect("unit at place has no pole")
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, scalar};

    fn poly(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }
    fn fe(n: &[i64], d: &[i64]) -> FuncElem {
        FuncElem::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&fe(&[0, 0, 1], &[1, 1]), &Place::at(scalar(0))).unwrap(), 2);
        assert_eq!(valuation(&fe(&[1, 0, 1], &[1]), &Place::Infinity).unwrap(), -2);
        assert_eq!(valuation(&fe(&[-1, 1], &[2, 1]), &Place::at(scalar(1))).unwrap(), 1);
        assert_eq!(valuation(&FuncElem::zero(), &Place::Infinity), Err(Error::ZeroValuation));
    }

    #[test]
    fn reduction_examples() {
        let x = fe(&[1, 0, 1], &[-2, 1]);
        assert_eq!(reduce_at(&x, &Place::at(scalar(0))).unwrap(), Residue::Value(ratio(-1, 2)));
        assert_eq!(reduce_at(&x, &Place::at(scalar(2))).unwrap(), Residue::Infinity);
        assert_eq!(reduce_at(&x, &Place::Infinity).unwrap(), Residue::Infinity);
        let quad = Place::finite(poly(&[1, 0, 1])).unwrap();
        assert_eq!(reduce_at(&x, &quad), Err(Error::UnsupportedPlace));
    }

    #[test]
    fn finite_place_validation() {
        assert!(Place::finite(poly(&[-1, 0, 1])).is_err());
        assert!(Place::finite(poly(&[1, 0, 2])).is_err());
        assert!(Place::finite(poly(&[2, 0, 0, 1])).is_ok());
        assert_eq!(Place::finite(poly(&[2, 0, 0, 1])).unwrap().degree(), 3);
    }

    #[test]
    fn places_sort_by_root_with_infinity_last() {
        let mut v = vec![Place::Infinity, Place::at(scalar(3)), Place::at(scalar(-1))];
        v.sort();
        assert_eq!(v, vec![Place::at(scalar(-1)), Place::at(scalar(3)), Place::Infinity]);
    }
}
