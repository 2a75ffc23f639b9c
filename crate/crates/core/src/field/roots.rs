//! Radicals and rational roots of polynomials in `t`.
//!
//! Rational roots are found without factoring integers: real roots are
//! isolated with a Sturm sequence, each isolating interval is bisected until
//! it is narrower than `1/a_n^2`, and the simplest fraction inside is the
//! only possible rational root there.

use super::{scalar, BasePoly, Poly, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// `f / gcd(f, f')`, made monic. Same distinct roots as `f`, all simple.
pub fn squarefree_radical(f: &BasePoly) -> Result<BasePoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Poly::one());
    }
    let g = f.gcd(&f.derivative());
    Ok(f.div_rem(&g).0.monic())
}

/// Number of distinct roots over the algebraic closure.
pub fn distinct_root_count(f: &BasePoly) -> Result<usize> {
    Ok(squarefree_radical(f)?.deg0())
}

/// All rational roots, ascending, without multiplicity.
pub fn rational_roots(f: &BasePoly) -> Result<Vec<Scalar>> {
    let mut g = squarefree_radical(f)?;
    let mut roots = Vec::new();
    if g.is_constant() {
        return Ok(roots);
    }
    if g.coeff(0).is_zero() {
        roots.push(Scalar::zero());
        g = g.div_rem(&Poly::x()).0;
    }
    'restart: loop {
        match g.degree() {
            None | Some(0) => break,
            Some(1) => {
                roots.push(-(g.coeff(0) / g.coeff(1)));
                break;
            }
            _ => {}
        }
        let lead = g.primitive_integer().last().cloned().expect("nonconstant").abs();
        let chain = sturm_chain(&g);
        let bound = cauchy_bound(&g);
        let lo = -bound.clone();
        let hi = bound;
        let mut pass = Vec::new();
        let mut stack = vec![(
            lo.clone(),
            hi.clone(),
            sign_variations(&chain, &lo),
            sign_variations(&chain, &hi),
        )];
        while let Some((a, b, va, vb)) = stack.pop() {
            let count = va - vb;
            if count == 0 {
                continue;
            }
            if count == 1 {
                if let Some(r) = refine(&g, a, b, &lead) {
                    pass.push(r);
                }
                continue;
            }
            let m = (&a + &b) / scalar(2);
            if g.eval(&m).is_zero() {
                roots.push(m.clone());
                g = g.div_rem(&Poly::linear_root(&m)).0;
                continue 'restart;
            }
            let vm = sign_variations(&chain, &m);
            stack.push((a, m.clone(), va, vm));
            stack.push((m, b, vm, vb));
        }
        roots.extend(pass);
        break;
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn sturm_chain(g: &BasePoly) -> Vec<BasePoly> {
    let mut chain = vec![g.clone(), g.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_variations(chain: &[BasePoly], x: &Scalar) -> i64 {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for p in chain {
        let y = p.eval(x);
        if y.is_zero() {
            continue;
        }
        let pos = y.is_positive();
        if last.is_some_and(|l| l != pos) {
            v += 1;
        }
        last = Some(pos);
    }
    v
}

/// Strict bound on the moduli of the roots.
fn cauchy_bound(g: &BasePoly) -> Scalar {
    let lc = g.leading().expect("nonzero").abs();
    let mut m = Scalar::zero();
    for c in &g.coeffs()[..g.deg0()] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    (m + scalar(1)).ceil() + scalar(1)
}

/// The rational root inside an isolating interval `(a, b)`, if any.
fn refine(g: &BasePoly, mut a: Scalar, mut b: Scalar, lead: &BigInt) -> Option<Scalar> {
    let threshold = BigRational::new(BigInt::one(), lead * lead);
    let mut ga_pos = g.eval(&a).is_positive();
    loop {
        if &b - &a < threshold {
            let c = simplest_between(&a, &b);
            return (c.denom() <= lead && g.eval(&c).is_zero()).then_some(c);
        }
        let m = (&a + &b) / scalar(2);
        let gm = g.eval(&m);
        if gm.is_zero() {
            return Some(m);
        }
        if gm.is_positive() == ga_pos {
            a = m;
            ga_pos = gm.is_positive();
        } else {
            b = m;
        }
    }
}

/// The fraction with the smallest denominator in the open interval `(a, b)`.
pub fn simplest_between(a: &Scalar, b: &Scalar) -> Scalar {
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return Scalar::zero();
    }
    if !b.is_positive() {
        return -simplest_nonneg(&-b, Some(&-a));
    }
    simplest_nonneg(a, Some(b))
}

// Open interval (a, b) with a >= 0; `None` means +infinity.
fn simplest_nonneg(a: &Scalar, b: Option<&Scalar>) -> Scalar {
    let floor = a.floor();
    let next = &floor + scalar(1);
    if b.is_none_or(|b| next.cmp(b) == Ordering::Less) {
        return next;
    }
    let b = b.unwrap();
    let lo = (b - &floor).recip();
    let hi = (a != &floor).then(|| (a - &floor).recip());
    floor + simplest_nonneg(&lo, hi.as_ref()).recip()
}
