//! Constant pairs `(λ1, λ2) ∈ k^2` with `φ(λ1) = λ2`.
//!
//! Writing `T(X, Y) = f(X) - g(X) Y = Σ h_i(X, Y) t^i` with
//! `h_i = p_i(X) - q_i(X) Y`, the pairs are the common zeros of all `h_i`.
//! A common zero has some `q_j(λ1) ≠ 0` (otherwise `f` and `g` would share
//! the factor `X - λ1`), so `λ2 = p_j(λ1)/q_j(λ1)` and `λ1` is a root of
//! every minor `p_i q_j - p_j q_i`.

use super::map::EndoMap;
use crate::error::Result;
use crate::field::{distinct_root_count, rational_roots, squarefree_radical, BasePoly, Poly, Scalar};
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstantPairs {
    /// `T` has no `t`-dependence.
    Infinite,
    Finite {
        /// Pairs with rational coordinates, sorted.
        pairs: Vec<(Scalar, Scalar)>,
        /// Number of pairs over the algebraic closure.
        closure_count: usize,
    },
}

/// The system `h_0, …, h_n` as `(p_i, q_i)` pairs of polynomials in `X`.
pub fn constant_pair_system(phi: &EndoMap) -> Vec<(BasePoly, BasePoly)> {
    let n = phi.t_degree();
    let collect = |form: &[BasePoly], i: usize| Poly::new(form.iter().map(|c| c.coeff(i)).collect());
    (0..=n).map(|i| (collect(phi.f(), i), collect(phi.g(), i))).collect()
}

pub fn constant_pairs(phi: &EndoMap) -> Result<ConstantPairs> {
    let system = constant_pair_system(phi);
    if system.len() == 1 {
        return Ok(ConstantPairs::Infinite);
    }
    let mut m: BasePoly = Poly::zero();
    for (i, (pi, qi)) in system.iter().enumerate() {
        for (pj, qj) in &system[i + 1..] {
            let minor = &(pi * qj) - &(pj * qi);
            if !minor.is_zero() {
                m = m.gcd(&minor);
            }
        }
    }
    if m.is_zero() {
        return Ok(ConstantPairs::Infinite);
    }
    let mut q_gcd: BasePoly = Poly::zero();
    for (_, q) in &system {
        q_gcd = q_gcd.gcd(q);
    }
    let rad = squarefree_radical(&m)?;
    let closure_count = distinct_root_count(&rad)? - rad.gcd(&q_gcd).deg0();
    let mut pairs = Vec::new();
    for x in rational_roots(&rad)? {
        let Some((p, q)) = system.iter().find(|(_, q)| !q.eval(&x).is_zero()) else {
            continue;
        };
        let y = p.eval(&x) / q.eval(&x);
        if system.iter().all(|(p, q)| (p.eval(&x) - q.eval(&x) * &y).is_zero()) {
            pairs.push((x, y));
        }
    }
    Ok(ConstantPairs::Finite { pairs, closure_count })
}
