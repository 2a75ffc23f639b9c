use super::forms::{self, Form};
use super::map::{render_form, EndoMap};
use crate::error::{Error, Result};
use crate::field::{BasePoly, FuncElem, Poly, ProjPoint};
use crate::sunits::{is_s_unit, PlaceSet};
use std::fmt;

/// A Möbius transformation `z ↦ (a z + b)/(c z + d)`, stored projectively
/// with coprime polynomial entries and the first nonzero of `a, b, c, d`
/// monic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mobius {
    // [b, a] and [d, c] as linear forms.
    num: Form,
    den: Form,
}

impl Mobius {
    pub fn new(a: &FuncElem, b: &FuncElem, c: &FuncElem, d: &FuncElem) -> Result<Self> {
        if (a * d - b * c).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut l: BasePoly = Poly::one();
        for x in [a, b, c, d] {
            let g = l.gcd(x.den());
            l = &l * &x.den().div_rem(&g).0;
        }
        let lift = |x: &FuncElem| (x.num() * &l).div_rem(x.den()).0;
        Ok(Mobius::from_forms(vec![lift(b), lift(a)], vec![lift(d), lift(c)]))
    }

    fn from_forms(mut num: Form, mut den: Form) -> Self {
        forms::normalize_pair(&mut num, &mut den);
        Mobius { num, den }
    }

    pub fn identity() -> Self {
        Mobius {
            num: vec![Poly::zero(), Poly::one()],
            den: vec![Poly::one(), Poly::zero()],
        }
    }

    /// `z ↦ u z + v`.
    pub fn affine(u: &FuncElem, v: &FuncElem) -> Result<Self> {
        Mobius::new(u, v, &FuncElem::zero(), &FuncElem::one())
    }

    /// `(a, b, c, d)`.
    pub fn entries(&self) -> [&BasePoly; 4] {
        [&self.num[1], &self.num[0], &self.den[1], &self.den[0]]
    }

    pub fn det(&self) -> BasePoly {
        let [a, b, c, d] = self.entries();
        &(a * d) - &(b * c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity()
    }

    pub fn inverse(&self) -> Mobius {
        let [a, b, c, d] = self.entries();
        Mobius::from_forms(vec![-b, d.clone()], vec![a.clone(), -c])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius::from_forms(
            forms::substitute(&self.num, &other.num, &other.den),
            forms::substitute(&self.den, &other.num, &other.den),
        )
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = forms::eval(&self.num, p.x(), p.y());
        let y = forms::eval(&self.den, p.x(), p.y());
        ProjPoint::from_polys(&x, &y).expect("invertible")
    }

    /// Some scaling has S-integer entries and S-unit determinant.
    pub fn in_pgl2_rs(&self, s: &PlaceSet) -> bool {
        let det = FuncElem::from_poly(self.det());
        if s.has_infinity() {
            return is_s_unit(&det, s);
        }
        let m = self.entries().iter().map(|e| e.deg0()).max().unwrap_or(0);
        s.strip(det.num()).is_constant() && det.num().deg0() == 2 * m
    }
}

/// `A ∘ φ ∘ A^{-1}`.
pub fn conjugate(phi: &EndoMap, a: &Mobius) -> EndoMap {
    let inv = a.inverse();
    let (f, g) = phi.forms();
    let fi = forms::substitute(f, &inv.num, &inv.den);
    let gi = forms::substitute(g, &inv.num, &inv.den);
    EndoMap::from_forms(forms::substitute(&a.num, &fi, &gi), forms::substitute(&a.den, &fi, &gi))
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den[1].is_zero() && self.den[0].is_one() {
            f.write_str(&render_form(&self.num))
        } else {
            write!(f, "({})/({})", render_form(&self.num), render_form(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{scalar, Place};

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }
    fn poly_map(f: &[&[i64]], g: &[&[i64]]) -> EndoMap {
        EndoMap::from_polys(f.iter().map(|c| p(c)).collect(), g.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn conjugating_t_z2_by_t_z_gives_z2() {
        let phi = poly_map(&[&[], &[], &[0, 1]], &[&[1]]);
        let a = Mobius::affine(&FuncElem::t(), &FuncElem::zero()).unwrap();
        assert_eq!(conjugate(&phi, &a), poly_map(&[&[], &[], &[1]], &[&[1]]));
        assert_eq!(a.to_string(), "t*z");
    }

    #[test]
    fn identity_and_translation() {
        let phi = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        assert_eq!(conjugate(&phi, &Mobius::identity()), phi);
        let a = Mobius::affine(&FuncElem::one(), &FuncElem::one()).unwrap();
        let want = poly_map(&[&[2, 1, -1], &[-2], &[1]], &[&[1]]);
        assert_eq!(conjugate(&phi, &a), want);
        assert_eq!(conjugate(&conjugate(&phi, &a), &a.inverse()), phi);
    }

    #[test]
    fn conjugate_commutes_with_evaluation() {
        let phi = poly_map(&[&[0, 1, -1], &[], &[1]], &[&[1]]);
        let a = Mobius::new(&FuncElem::one(), &FuncElem::t(), &FuncElem::one(), &FuncElem::from_int(2)).unwrap();
        let psi = conjugate(&phi, &a);
        for k in -2..3 {
            let pt = ProjPoint::affine(&FuncElem::from_poly(p(&[k, 1])));
            assert_eq!(a.apply(&phi.evaluate(&pt)), psi.evaluate(&a.apply(&pt)));
        }
    }

    #[test]
    fn composition_and_inverse() {
        let a = Mobius::new(&FuncElem::t(), &FuncElem::one(), &FuncElem::zero(), &FuncElem::one()).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(Mobius::new(&FuncElem::t(), &FuncElem::t(), &FuncElem::one(), &FuncElem::one()).is_err());
    }

    #[test]
    fn pgl2_membership() {
        let s = PlaceSet::new([Place::at(scalar(0)), Place::Infinity]).unwrap();
        let a = Mobius::affine(&FuncElem::t(), &FuncElem::one()).unwrap();
        assert!(a.in_pgl2_rs(&s));
        assert!(!a.in_pgl2_rs(&PlaceSet::infinity()));
        let b = Mobius::affine(&FuncElem::one(), &FuncElem::t()).unwrap();
        assert!(b.in_pgl2_rs(&PlaceSet::infinity()));
    }
}
