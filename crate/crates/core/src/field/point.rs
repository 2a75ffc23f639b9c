use super::{BasePoly, FuncElem, Poly};
use crate::error::{Error, Result};
use std::fmt;

/// A point of `P^1(K)`, stored as coprime polynomial coordinates `[x : y]`
/// with `y` monic, or `[1 : 0]` for infinity. Since the coordinates are
/// coprime polynomials this is an S-coprime integral form for every `S`
/// containing infinity, and equality is projective equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    x: BasePoly,
    y: BasePoly,
}

impl ProjPoint {
    pub fn infinity() -> Self {
        ProjPoint {
            x: Poly::one(),
            y: Poly::zero(),
        }
    }

    pub fn affine(a: &FuncElem) -> Self {
        ProjPoint {
            x: a.num().clone(),
            y: a.den().clone(),
        }
    }

    /// `[x : y]` from arbitrary coordinates, not both zero.
    pub fn from_coords(x: &FuncElem, y: &FuncElem) -> Result<Self> {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => Err(Error::InvalidArgument("point [0 : 0]".into())),
            (_, true) => Ok(ProjPoint::infinity()),
            _ => Ok(ProjPoint::affine(&x.checked_div(y)?)),
        }
    }

    /// From polynomial coordinates, not both zero.
    pub fn from_polys(x: &BasePoly, y: &BasePoly) -> Result<Self> {
        if y.is_zero() {
            if x.is_zero() {
                return Err(Error::InvalidArgument("point [0 : 0]".into()));
            }
            return Ok(ProjPoint::infinity());
        }
        Ok(ProjPoint::affine(&FuncElem::new(x.clone(), y.clone())?))
    }

    /// From coprime polynomial coordinates, not both zero.
    pub(crate) fn from_coprime(x: BasePoly, y: BasePoly) -> Self {
        match y.leading().cloned() {
            None => ProjPoint::infinity(),
            Some(lc) => {
                let inv = lc.recip();
                ProjPoint {
                    x: x.scale(&inv),
                    y: y.scale(&inv),
                }
            }
        }
    }

    pub fn x(&self) -> &BasePoly {
        &self.x
    }

    pub fn y(&self) -> &BasePoly {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate `x/y`, or `None` at infinity.
    pub fn value(&self) -> Option<FuncElem> {
        (!self.is_infinity()).then(|| FuncElem::new(self.x.clone(), self.y.clone()).expect("canonical"))
    }

    /// `max(deg x, deg y)`.
    pub fn degree(&self) -> usize {
        self.x.deg0().max(self.y.deg0())
    }
}

impl From<FuncElem> for ProjPoint {
    fn from(a: FuncElem) -> Self {
        ProjPoint::affine(&a)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => f.write_str("inf"),
            Some(v) => write!(f, "{v}"),
        }
    }
}
