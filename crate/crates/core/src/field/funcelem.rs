use super::{scalar, BasePoly, CoeffDisplay, Field, Poly, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `K = k(t)`: a reduced fraction of polynomials with monic
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FuncElem {
    num: BasePoly,
    den: BasePoly,
}

impl FuncElem {
    pub fn new(num: BasePoly, den: BasePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: BasePoly, den: BasePoly) -> Self {
        if num.is_zero() {
            return FuncElem::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if !One::is_one(&lc) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FuncElem { num, den }
    }

    pub fn from_poly(p: BasePoly) -> Self {
        FuncElem {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        FuncElem::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        FuncElem::constant(scalar(n))
    }

    /// The transcendental `t`.
    pub fn t() -> Self {
        FuncElem::from_poly(Poly::x())
    }

    pub fn zero() -> Self {
        FuncElem {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        FuncElem::constant(scalar(1))
    }

    pub fn num(&self) -> &BasePoly {
        &self.num
    }

    pub fn den(&self) -> &BasePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value when `self` lies in `k`.
    pub fn as_constant(&self) -> Option<Scalar> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// `max(deg num, deg den)`.
    pub fn height_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
        Ok(FuncElem {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Value at `t = a`, or `None` when `a` is a pole.
    pub fn eval(&self, a: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(a);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(a) / d)
        }
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        let m = self.num.deg0().max(self.den.deg0());
        let flip = |p: &BasePoly| {
            let mut cs = vec![scalar(0); m + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                cs[m - i] = c.clone();
            }
            Poly::new(cs)
        };
        Self::normalized(flip(&self.num), flip(&self.den))
    }

    fn is_monomial_term(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count() <= 1
    }
}

impl Field for FuncElem {
    fn zero() -> Self {
        FuncElem::zero()
    }
    fn one() -> Self {
        FuncElem::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.checked_inv().expect("inverse of zero function")
    }
    fn from_i64(n: i64) -> Self {
        FuncElem::from_int(n)
    }
}

impl Add for &FuncElem {
    type Output = FuncElem;
    fn add(self, rhs: &FuncElem) -> FuncElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return FuncElem::from_poly(&self.num + &rhs.num);
            }
            return FuncElem::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FuncElem::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &FuncElem {
    type Output = FuncElem;
    fn sub(self, rhs: &FuncElem) -> FuncElem {
        self + &(-rhs)
    }
}

impl Mul for &FuncElem {
    type Output = FuncElem;
    fn mul(self, rhs: &FuncElem) -> FuncElem {
        if self.is_zero() || rhs.is_zero() {
            return FuncElem::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FuncElem::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = rhs.den.div_rem(&g1).0;
        let n2 = rhs.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").clone();
        if One::is_one(&lc) {
            FuncElem { num, den }
        } else {
            let inv = lc.recip();
            FuncElem {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl Neg for &FuncElem {
    type Output = FuncElem;
    fn neg(self) -> FuncElem {
        FuncElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FuncElem {
            type Output = FuncElem;
            fn $m(self, rhs: FuncElem) -> FuncElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FuncElem> for FuncElem {
            type Output = FuncElem;
            fn $m(self, rhs: &FuncElem) -> FuncElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FuncElem {
    type Output = FuncElem;
    fn neg(self) -> FuncElem {
        -&self
    }
}

impl From<BasePoly> for FuncElem {
    fn from(p: BasePoly) -> Self {
        FuncElem::from_poly(p)
    }
}

impl From<Scalar> for FuncElem {
    fn from(c: Scalar) -> Self {
        FuncElem::constant(c)
    }
}

impl fmt::Display for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl CoeffDisplay for FuncElem {
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_compound(&self) -> bool {
        !self.is_monomial_term()
    }
    fn unit_sign(&self) -> Option<bool> {
        self.as_constant().and_then(|c| c.unit_sign())
    }
    fn is_negative_atom(&self) -> bool {
        self.is_monomial_term() && self.num.leading().is_some_and(|c| c.is_negative())
    }
}
