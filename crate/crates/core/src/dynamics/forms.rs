//! Binary forms over `k[t]`: `c[j]` is the coefficient of `X^j Y^(deg-j)`.

use crate::field::{BasePoly, Poly, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

pub type Form = Vec<BasePoly>;

pub fn degree(f: &Form) -> usize {
    f.len() - 1
}

pub fn mul(a: &Form, b: &Form) -> Form {
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

pub fn add(a: &Form, b: &Form) -> Form {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &Form, c: &BasePoly) -> Form {
    a.iter().map(|x| x * c).collect()
}

/// `f(g1, g2)` for forms `g1, g2` of a common degree.
pub fn substitute(f: &Form, g1: &Form, g2: &Form) -> Form {
    let d = degree(f);
    let e = degree(g1);
    // Powers of g1 and g2 up to d.
    let mut p1 = vec![constant_form(0)];
    let mut p2 = vec![constant_form(0)];
    for i in 0..d {
        p1.push(mul(&p1[i], g1));
        p2.push(mul(&p2[i], g2));
    }
    let mut out = vec![Poly::zero(); d * e + 1];
    for (i, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = scale(&mul(&p1[i], &p2[d - i]), c);
        out = add(&out, &term);
    }
    out
}

fn constant_form(deg: usize) -> Form {
    let mut v = vec![Poly::zero(); deg + 1];
    v[0] = Poly::one();
    v
}

/// `Σ c_j x^j y^(d-j)`.
pub fn eval(f: &Form, x: &BasePoly, y: &BasePoly) -> BasePoly {
    let d = degree(f);
    let mut xp = vec![Poly::one()];
    let mut yp = vec![Poly::one()];
    for i in 0..d {
        xp.push(&xp[i] * x);
        yp.push(&yp[i] * y);
    }
    let mut acc = Poly::zero();
    for (j, c) in f.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(&(c * &xp[j]) * &yp[d - j]);
        }
    }
    acc
}

/// Monic gcd of all coefficients of the given forms.
pub fn content(forms: &[&Form]) -> BasePoly {
    let mut g = Poly::zero();
    for f in forms {
        for c in f.iter() {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

/// Divides both forms by their common content and scales so the first
/// nonzero coefficient, scanning `a` then `b` from the top, is monic.
pub fn normalize_pair(a: &mut Form, b: &mut Form) {
    let c = content(&[a, b]);
    if c.is_zero() {
        return;
    }
    if !c.is_one() {
        for x in a.iter_mut().chain(b.iter_mut()) {
            *x = x.div_rem(&c).0;
        }
    }
    let lead = a
        .iter()
        .rev()
        .chain(b.iter().rev())
        .find(|x| !x.is_zero())
        .and_then(|x| x.leading().cloned())
        .expect("nonzero pair");
    if lead != crate::field::scalar(1) {
        let inv = lead.recip();
        for x in a.iter_mut().chain(b.iter_mut()) {
            *x = x.scale(&inv);
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination, run over
/// `Z[t]` after clearing denominators.
pub fn determinant(m: Vec<Vec<BasePoly>>) -> BasePoly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut l = BigInt::one();
    for c in m.iter().flatten().flat_map(|p| p.coeffs()) {
        l = l.lcm(c.denom());
    }
    let mut z: Vec<Vec<ZPoly>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| zp_trim(p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()))
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n - 1 {
        if z[k][k].is_empty() {
            match (k + 1..n).find(|&i| !z[i][k].is_empty()) {
                Some(i) => {
                    z.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = zp_sub(&zp_mul(&z[i][j], &z[k][k]), &zp_mul(&z[i][k], &z[k][j]));
                z[i][j] = zp_exact_div(&num, &prev);
            }
        }
        prev = z[k][k].clone();
    }
    let scale = Scalar::new(BigInt::one(), l.pow(n as u32));
    let det = Poly::new(z[n - 1][n - 1].iter().map(|c| &Scalar::from_integer(c.clone()) * &scale).collect());
    if negate {
        -det
    } else {
        det
    }
}

/// Integer polynomial, ascending, without trailing zeros.
type ZPoly = Vec<BigInt>;

fn zp_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zp_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    out.resize(a.len().max(b.len()), BigInt::zero());
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    zp_trim(out)
}

/// `a / b` when `b` divides `a` in `Z[t]`.
fn zp_exact_div(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut rem = a.clone();
    let lb = b.last().expect("nonzero divisor");
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    for k in (0..q.len()).rev() {
        let c = &rem[k + b.len() - 1] / lb;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "Bareiss division is exact");
    zp_trim(q)
}

/// Resultant of two binary forms of degree `d` via the `2d × 2d` Sylvester
/// matrix, coefficients listed from `X^d` down.
pub fn resultant(f: &Form, g: &Form) -> BasePoly {
    let d = degree(f);
    let n = 2 * d;
    let row = |form: &Form, shift: usize| {
        let mut r = vec![Poly::zero(); n];
        for k in 0..=d {
            r[shift + k] = form[d - k].clone();
        }
        r
    };
    let mut m = Vec::with_capacity(n);
    for s in 0..d {
        m.push(row(f, s));
    }
    for s in 0..d {
        m.push(row(g, s));
    }
    determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::scalar;

    fn p(cs: &[i64]) -> BasePoly {
        Poly::new(cs.iter().map(|&c| scalar(c)).collect())
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // [[t, 1, 0], [1, t, 1], [0, 1, t]] has determinant t^3 - 2t.
        let t = p(&[0, 1]);
        let one = p(&[1]);
        let z = BasePoly::zero();
        let m = vec![
            vec![t.clone(), one.clone(), z.clone()],
            vec![one.clone(), t.clone(), one.clone()],
            vec![z, one, t],
        ];
        assert_eq!(determinant(m), p(&[0, -2, 0, 1]));
    }

    #[test]
    fn pivoting_tracks_sign() {
        let m = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]];
        assert_eq!(determinant(m), p(&[-1]));
    }

    #[test]
    fn substitution_composes_forms() {
        // f = X^2 + Y^2 at (X + Y, X - Y) is 2X^2 + 2Y^2.
        let f = vec![p(&[1]), p(&[]), p(&[1])];
        let g1 = vec![p(&[1]), p(&[1])];
        let g2 = vec![p(&[-1]), p(&[1])];
        assert_eq!(substitute(&f, &g1, &g2), vec![p(&[2]), p(&[]), p(&[2])]);
    }
}
