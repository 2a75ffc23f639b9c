use super::{CoeffDisplay, Field, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial with coefficients in a field, stored in
/// ascending order of degree with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

/// Polynomials in `t` over the constant field.
pub type BasePoly = Poly<Scalar>;

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        Poly::new(vec![a.negated(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].inverse();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = rem[k].minus(&c.times(dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Extended Euclid: returns `(g, s, u)` with `s*self + u*other = g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        match r0.leading().cloned() {
            None => (r0, s0, u0),
            Some(lc) => {
                let inv = lc.inverse();
                (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
            }
        }
    }

    /// Number of times `factor` divides `self`, and the cofactor.
    /// `factor` must be non-constant and `self` nonzero.
    pub fn split_multiplicity(&self, factor: &Self) -> (u32, Self) {
        debug_assert!(!factor.is_constant() && !self.is_zero());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// Render with the given variable name.
    pub fn display_in(&self, var: &str) -> String
    where
        F: CoeffDisplay,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = render_term(c, k, var);
            if out.is_empty() {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn render_term<F: Field + CoeffDisplay>(c: &F, k: usize, var: &str) -> String {
    let power = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if k == 0 {
        return if c.is_compound() {
            format!("({})", c.render())
        } else {
            c.render()
        };
    }
    match c.unit_sign() {
        Some(true) => power,
        Some(false) => format!("-{power}"),
        None if c.is_compound() => format!("({})*{power}", c.render()),
        None => format!("{}*{power}", c.render()),
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.minus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.negated(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| c.negated()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl BasePoly {
    /// Clears denominators and content: a primitive integer polynomial with
    /// positive leading coefficient, as integer coefficients.
    pub fn primitive_integer(&self) -> Vec<num_bigint::BigInt> {
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let mut ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = num_bigint::BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, scalar};

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = p(&[-1, 0, 0, 2, 5]);
        let b = p(&[3, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (t-1)(t+2) and (t-1)(2t+3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 2]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (g, s, u) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn display_round_shapes() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "t^2 - 2*t + 1");
        assert_eq!(Poly::new(vec![ratio(1, 2), scalar(0), ratio(-3, 2)]).to_string(), "-3/2*t^2 + 1/2");
        assert_eq!(BasePoly::zero().to_string(), "0");
    }

    #[test]
    fn primitive_integer_clears_content() {
        let f = Poly::new(vec![ratio(-1, 2), ratio(1, 3)]);
        assert_eq!(
            f.primitive_integer(),
            vec![num_bigint::BigInt::from(-3), num_bigint::BigInt::from(2)]
        );
    }
}
