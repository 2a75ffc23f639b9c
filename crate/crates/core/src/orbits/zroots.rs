//! Roots in `K` of polynomials in `z` over `K`.
//!
//! After clearing denominators, any root `a/b` has `b | c_n` and `a | c_0`,
//! which bounds both degrees. The polynomial is specialized at a rational
//! `t0` where it stays squarefree of full degree; every rational root there
//! is lifted to a power series in `t - t0` by Newton iteration, turned back
//! into a rational function by Padé reconstruction, and kept only if exact
//! substitution confirms it. A true root always specializes to one of the
//! lifted roots, so nothing is missed.

use crate::error::{Error, Result};
use crate::field::{rational_roots, scalar, BasePoly, FuncElem, Poly, Scalar};
use num_traits::Zero;

/// All roots of `f` lying in `K`, sorted and without repetition.
pub fn k_rational_roots_in_z(f: &Poly<FuncElem>) -> Result<Vec<FuncElem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut f = f.clone();
    if f.coeff(0).is_zero() {
        roots.push(FuncElem::zero());
        while f.coeff(0).is_zero() {
            f = f.div_rem(&Poly::x()).0;
        }
    }
    if f.deg0() > 0 {
        let sqfree = f.div_rem(&f.gcd(&f.derivative())).0;
        roots.extend(nonzero_roots(&clear_denominators(&sqfree)));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Coefficients in `k[t]`, ascending in `z`.
pub(crate) fn clear_denominators(f: &Poly<FuncElem>) -> Vec<BasePoly> {
    let mut l: BasePoly = Poly::one();
    for c in f.coeffs() {
        let g = l.gcd(c.den());
        l = &l * &c.den().div_rem(&g).0;
    }
    f.coeffs().iter().map(|c| (c.num() * &l).div_rem(c.den()).0).collect()
}

fn nonzero_roots(c: &[BasePoly]) -> Vec<FuncElem> {
    let n = c.len() - 1;
    if n == 1 {
        let r = FuncElem::new(-&c[0], c[1].clone()).expect("nonzero leading coefficient");
        return vec![r];
    }
    let num_deg = c[0].deg0();
    let den_deg = c[n].deg0();
    let t0 = good_specialization(c);
    let shifted: Vec<BasePoly> = c.iter().map(|ci| ci.compose(&Poly::linear_root(&-&t0))).collect();
    let special = Poly::new(shifted.iter().map(|ci| ci.coeff(0)).collect());
    let prec = num_deg + den_deg + 2;
    let fz = Poly::new(c.iter().cloned().map(FuncElem::from_poly).collect());
    let mut out = Vec::new();
    for r0 in rational_roots(&special).expect("nonzero specialization") {
        let series = newton_lift(&shifted, r0, prec);
        if let Some((a, b)) = pade(&series, num_deg, den_deg) {
            let back = Poly::linear_root(&t0);
            let cand = FuncElem::new(a.compose(&back), b.compose(&back)).expect("b(t0) != 0");
            if fz.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
    }
    out
}

/// First of `0, 1, -1, 2, -2, …` keeping full degree and squarefreeness.
fn good_specialization(c: &[BasePoly]) -> Scalar {
    let n = c.len() - 1;
    for k in 0i64.. {
        let t0 = scalar(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
        if c[n].eval(&t0).is_zero() {
            continue;
        }
        let sp = Poly::new(c.iter().map(|ci| ci.eval(&t0)).collect());
        if sp.gcd(&sp.derivative()).deg0() == 0 {
            return t0;
        }
    }
    unreachable!()
}

type Series = Vec<Scalar>;

fn series_mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &Series, n: usize) -> Series {
    let inv0 = a[0].recip();
    let mut out = vec![Scalar::zero(); n];
    out[0] = inv0.clone();
    for k in 1..n {
        let mut acc = Scalar::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -(acc * &inv0);
    }
    out
}

/// `Σ c_i(s) z^i` and its `z`-derivative at the series `z`, mod `s^n`.
fn eval_with_derivative(c: &[BasePoly], z: &Series, n: usize) -> (Series, Series) {
    let trunc = |p: &BasePoly| -> Series { (0..n).map(|i| p.coeff(i)).collect() };
    let mut val = vec![Scalar::zero(); n];
    let mut der = vec![Scalar::zero(); n];
    for ci in c.iter().rev() {
        der = series_mul(&der, z, n);
        for (d, v) in der.iter_mut().zip(&val) {
            *d += v;
        }
        val = series_mul(&val, z, n);
        for (v, x) in val.iter_mut().zip(trunc(ci)) {
            *v += x;
        }
    }
    (val, der)
}

/// The power-series root through the simple root `r0` at `s = 0`.
fn newton_lift(c: &[BasePoly], r0: Scalar, n: usize) -> Series {
    let mut z = vec![r0];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        z.resize(prec, Scalar::zero());
        let (val, der) = eval_with_derivative(c, &z, prec);
        let step = series_mul(&val, &series_inv(&der, prec), prec);
        for (zi, si) in z.iter_mut().zip(step) {
            *zi -= si;
        }
    }
    z
}

/// `a/b ≡ series (mod s^n)` with `deg a ≤ na`, `deg b ≤ nb`, `b(0) ≠ 0`.
fn pade(series: &Series, na: usize, nb: usize) -> Option<(BasePoly, BasePoly)> {
    let n = series.len();
    let mut r0: BasePoly = Poly::monomial(scalar(1), n);
    let mut r1: BasePoly = Poly::new(series.clone());
    let mut t0: BasePoly = Poly::zero();
    let mut t1: BasePoly = Poly::one();
    while !r1.is_zero() && r1.deg0() > na {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.deg0() > nb || t1.coeff(0).is_zero() {
        return None;
    }
    Some((r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }
    fn zpoly(cs: &[&[i64]]) -> Poly<FuncElem> {
        Poly::new(cs.iter().map(|c| FuncElem::from_poly(p(c))).collect())
    }

    #[test]
    fn spec_examples() {
        let roots = k_rational_roots_in_z(&zpoly(&[&[0, 1, -1], &[-1], &[1]])).unwrap();
        let mut want = vec![FuncElem::t(), FuncElem::from_poly(p(&[1, -1]))];
        want.sort();
        assert_eq!(roots, want);
        let roots = k_rational_roots_in_z(&zpoly(&[&[0, 0, -1], &[], &[1]])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(k_rational_roots_in_z(&zpoly(&[&[0, 2, -1], &[], &[1]])).unwrap().is_empty());
    }

    #[test]
    fn rational_function_roots_and_multiplicity() {
        // (t z - 1)^2 (z - t^2) z
        let a = zpoly(&[&[-1], &[0, 1]]);
        let b = zpoly(&[&[0, 0, -1], &[1]]);
        let f = &(&(&a * &a) * &b) * &zpoly(&[&[], &[1]]);
        let roots = k_rational_roots_in_z(&f).unwrap();
        let mut want = vec![
            FuncElem::zero(),
            FuncElem::new(p(&[1]), p(&[0, 1])).unwrap(),
            FuncElem::from_poly(p(&[0, 0, 1])),
        ];
        want.sort();
        assert_eq!(roots, want);
    }

    #[test]
    fn irreducible_over_k_has_no_roots() {
        // z^3 - t has no root in K.
        assert!(k_rational_roots_in_z(&zpoly(&[&[0, -1], &[], &[], &[1]])).unwrap().is_empty());
    }
}
