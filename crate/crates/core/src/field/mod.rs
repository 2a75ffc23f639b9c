//! Exact arithmetic for the constant field, polynomials in `t`, the rational
//! function field `K = k(t)`, and its places.
//!
//! The algebraically closed constant field is modelled by its computable
//! subfield `Q`. A finite place of degree `e` over `Q` splits into `e` places
//! over the algebraic closure; counting helpers report that number, while
//! explicit residues are only available at degree-one places.

mod funcelem;
mod locus;
mod place;
mod point;
mod poly;
mod roots;

pub use funcelem::FuncElem;
pub use locus::Locus;
pub use place::{reduce_at, valuation, Place, Residue};
pub use point::ProjPoint;
pub use poly::{BasePoly, Poly};
pub use roots::{distinct_root_count, rational_roots, simplest_between, squarefree_radical};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::hash::Hash;

/// An element of the constant field.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Field operations used by the generic polynomial code.
///
/// The method names avoid clashing with `std::ops`, which several
/// implementors also provide by value.
pub trait Field: Clone + Eq + Ord + Hash + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;
    fn over(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverse())
    }
    fn from_i64(n: i64) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
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
        assert!(!Zero::is_zero(self), "inverse of zero scalar");
        self.recip()
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_i64(n: i64) -> Self {
        scalar(n)
    }
}

/// How a coefficient renders inside a printed polynomial.
pub trait CoeffDisplay {
    /// Text for the coefficient standing alone.
    fn render(&self) -> String;
    /// Whether `render` needs parentheses when used as a factor.
    fn is_compound(&self) -> bool;
    /// `Some(sign)` when the coefficient is `+1` or `-1`.
    fn unit_sign(&self) -> Option<bool>;
    /// True when the rendered text starts with a minus sign that can be
    /// pulled out as the term's sign.
    fn is_negative_atom(&self) -> bool;
}

impl CoeffDisplay for BigRational {
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_compound(&self) -> bool {
        false
    }
    fn unit_sign(&self) -> Option<bool> {
        if One::is_one(self) {
            Some(true)
        } else if One::is_one(&-self) {
            Some(false)
        } else {
            None
        }
    }
    fn is_negative_atom(&self) -> bool {
        self.is_negative()
    }
}

/// Number of bits in the larger of numerator and denominator.
pub fn scalar_bits(x: &Scalar) -> u64 {
    x.numer().bits().max(x.denom().bits())
}
