//! A slow, independent root finder for polynomials in `z` over `K`, used to
//! cross-check the series-based one.
//!
//! A root `a/b` of the cleared polynomial has `deg a ≤ deg c_0` and
//! `deg b ≤ deg c_n`. Specializing at `deg c_0 + deg c_n + 1` sample points
//! where `c_n` does not vanish, every choice of one rational root per
//! sample determines `a/b` by linear interpolation; candidates are kept
//! only when exact substitution confirms them.

use super::gen::{Draw, InstanceGenerator};
use crate::error::{Error, Result};
use crate::field::{scalar, BasePoly, FuncElem, Poly, Scalar};
use crate::orbits::k_rational_roots_in_z;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub fn specialization_oracle_roots(f: &Poly<FuncElem>) -> Result<Vec<FuncElem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut l: BasePoly = Poly::one();
    for c in f.coeffs() {
        l = &l * &c.den().div_rem(&l.gcd(c.den())).0;
    }
    let mut cs: Vec<BasePoly> = f.coeffs().iter().map(|c| (c.num() * &l).div_rem(c.den()).0).collect();
    let mut roots = Vec::new();
    if cs[0].is_zero() {
        roots.push(FuncElem::zero());
        while cs[0].is_zero() {
            cs.remove(0);
        }
    }
    if cs.len() > 1 {
        let da = cs[0].deg0();
        let db = cs.last().expect("nonempty").deg0();
        let n = da + db + 1;
        let mut samples: Vec<Scalar> = (0i64..)
            .map(|k| scalar(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }))
            .filter(|t0| !cs.last().expect("nonempty").eval(t0).is_zero())
            .take(n + 2)
            .collect();
        // Two spare points screen candidates before exact substitution.
        let spare: Vec<(Scalar, Vec<Scalar>)> = samples
            .split_off(n)
            .into_iter()
            .map(|t0| {
                let vals = cs.iter().map(|c| c.eval(&t0)).collect();
                (t0, vals)
            })
            .collect();
        let values: Vec<Vec<Scalar>> = samples
            .iter()
            .map(|t0| rational_roots_by_divisors(&Poly::new(cs.iter().map(|c| c.eval(t0)).collect())))
            .collect();
        let mut candidates = Vec::new();
        let mut choice = Vec::with_capacity(samples.len());
        enumerate(&values, &mut choice, &mut |r| {
            let Some((a, b)) = interpolate(&samples, r, da, db) else {
                return;
            };
            if spare.iter().any(|(t0, vals)| !homogeneous_value(vals, &a.eval(t0), &b.eval(t0)).is_zero()) {
                return;
            }
            if let Ok(c) = FuncElem::new(a, b) {
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        });
        roots.extend(candidates.into_iter().filter(|c| eval_k(f, c).is_zero()));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn enumerate(values: &[Vec<Scalar>], choice: &mut Vec<Scalar>, visit: &mut impl FnMut(&[Scalar])) {
    if choice.len() == values.len() {
        visit(choice);
        return;
    }
    for v in &values[choice.len()] {
        choice.push(v.clone());
        enumerate(values, choice, visit);
        choice.pop();
    }
}

fn eval_k(f: &Poly<FuncElem>, x: &FuncElem) -> FuncElem {
    f.coeffs().iter().rev().fold(FuncElem::zero(), |acc, c| &(&acc * x) + c)
}

/// `Σ c_i a^i b^(n-i)`.
fn homogeneous_value(cs: &[Scalar], a: &Scalar, b: &Scalar) -> Scalar {
    let n = cs.len() - 1;
    let mut acc = scalar(0);
    let mut pa = scalar(1);
    for (i, c) in cs.iter().enumerate() {
        acc = &acc + &(&(c * &pa) * &num_traits::pow::pow(b.clone(), n - i));
        pa = &pa * a;
    }
    acc
}

/// A nonzero kernel vector of `a(t_j) - r_j b(t_j) = 0`, as `(a, b)`.
fn interpolate(ts: &[Scalar], rs: &[Scalar], da: usize, db: usize) -> Option<(BasePoly, BasePoly)> {
    let cols = da + db + 2;
    let mut m: Vec<Vec<Scalar>> = ts
        .iter()
        .zip(rs)
        .map(|(t0, r)| {
            let mut row = Vec::with_capacity(cols);
            let mut pw = scalar(1);
            for _ in 0..=da {
                row.push(pw.clone());
                pw = &pw * t0;
            }
            let mut pw = scalar(1);
            for _ in 0..=db {
                row.push(-(&pw * r));
                pw = &pw * t0;
            }
            row
        })
        .collect();
    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(pv * &factor);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![scalar(0); cols];
    v[free] = scalar(1);
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[i][free].clone();
    }
    let a = Poly::new(v[..=da].to_vec());
    let b = Poly::new(v[da + 1..].to_vec());
    Some((a, b))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            let q = &n / &k;
            if q != k {
                large.push(q);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots by testing every `±p/q` with `p | a_0` and `q | a_n`.
fn rational_roots_by_divisors(f: &BasePoly) -> Vec<Scalar> {
    let mut ints = f.primitive_integer();
    let mut out = Vec::new();
    if ints.iter().all(|c| c.is_zero()) {
        return out;
    }
    if ints[0].is_zero() {
        out.push(scalar(0));
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    if ints.len() < 2 {
        return out;
    }
    let lead = ints.last().expect("nonempty").clone();
    let eval = |p: &BigInt, q: &BigInt| {
        // Homogenized: Σ c_i p^i q^(n-i).
        let n = ints.len() - 1;
        let mut acc = BigInt::zero();
        let mut pp = BigInt::one();
        for (i, c) in ints.iter().enumerate() {
            acc += c * &pp * q.pow((n - i) as u32);
            pp *= p;
        }
        acc
    };
    for q in divisors(&lead) {
        for p in divisors(&ints[0]) {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for p in [p.clone(), -p] {
                if eval(&p, &q).is_zero() {
                    out.push(Scalar::new(p, q.clone()));
                }
            }
        }
    }
    out
}

/// `z`-degree at most 4 and coefficient `t`-degree at most 3, with up to
/// three planted roots of the form `a/b`, `deg a, deg b ≤ 1`.
pub fn random_root_instance(g: &mut Draw) -> Poly<FuncElem> {
    let n = g.int(1, 4) as usize;
    let planted = g.int(0, n.min(3) as i64) as usize;
    let mut f: Poly<FuncElem> = Poly::one();
    let mut last: Option<(BasePoly, BasePoly)> = None;
    for _ in 0..planted {
        let (a, b) = match &last {
            Some(ab) if g.chance(0.25) => ab.clone(),
            _ => (g.poly(1), g.nonzero_poly(1)),
        };
        last = Some((a.clone(), b.clone()));
        f = &f * &Poly::new(vec![FuncElem::from_poly(-&a), FuncElem::from_poly(b)]);
    }
    let rest = n - planted;
    let tdeg = 3 - planted;
    let mut cs: Vec<FuncElem> = (0..=rest).map(|_| FuncElem::from_poly(g.poly(tdeg))).collect();
    if cs[rest].is_zero() {
        cs[rest] = FuncElem::from_poly(g.nonzero_poly(tdeg));
    }
    &f * &Poly::new(cs)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootOracleSummary {
    pub instances: usize,
    pub disagreements: usize,
    /// Total roots found, over all instances.
    pub roots: usize,
    pub seed: u64,
    pub first_disagreement: Option<String>,
}

pub fn run_root_oracle(count: usize, seed: u64) -> Result<RootOracleSummary> {
    let gen = InstanceGenerator::new(seed);
    let results: Vec<Result<(usize, Option<String>)>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let f = random_root_instance(&mut gen.draw(i));
            let fast = k_rational_roots_in_z(&f)?;
            let slow = specialization_oracle_roots(&f)?;
            let show = |v: &[FuncElem]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
            let mismatch = (fast != slow).then(|| {
                format!("instance {i}: {}: found [{}], oracle [{}]", f.display_in("z"), show(&fast), show(&slow))
            });
            Ok((slow.len(), mismatch))
        })
        .collect();
    let mut summary = RootOracleSummary {
        instances: count,
        disagreements: 0,
        roots: 0,
        seed,
        first_disagreement: None,
    };
    for r in results {
        let (n, mismatch) = r?;
        summary.roots += n;
        if let Some(m) = mismatch {
            summary.disagreements += 1;
            summary.first_disagreement.get_or_insert(m);
        }
    }
    Ok(summary)
}
