//! Explicit bounds `b, A, C, M, D, N, B` as functions of the degree `d` and
//! the number of places `s`.
//!
//! Everything is exact integer arithmetic. Decimal digit counts come from
//! fixed-point logarithm enclosures, so no floating point is involved.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

pub const DEFAULT_SIEVE_CAP: u64 = 10_000_000;
pub const DEFAULT_MATERIALIZE_BITS: u64 = 10_000_000;

/// Largest fixed-point precision (bits) used when pinning down a digit count.
const MAX_LOG_BITS: u64 = 1 << 17;

/// Which reading of `A` and `D` to use. `Statement` is the closed form as
/// usually quoted; `Proof` uses `9^{s+1}` in `A` and `d^2 + 2` in `D`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Variant {
    #[default]
    Statement,
    Proof,
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Statement => "statement",
            Variant::Proof => "proof",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundConfig {
    pub variant: Variant,
    pub sieve_cap: u64,
    /// Values with more bits than this are kept symbolic.
    pub materialize_bits: u64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            variant: Variant::Statement,
            sieve_cap: DEFAULT_SIEVE_CAP,
            materialize_bits: DEFAULT_MATERIALIZE_BITS,
        }
    }
}

/// Enclosure of an iterated decimal digit count.
///
/// With `level = 1` the value has between `low` and `high` decimal digits;
/// with `level = 2` it is the digit count that has that many digits, and so on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DigitEstimate {
    pub level: u32,
    pub low: BigUint,
    pub high: BigUint,
}

impl DigitEstimate {
    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundExpr {
    Exact(BigUint),
    Structured {
        formula: String,
        digits: DigitEstimate,
        /// Prime factorization `(p, e)` when it is known explicitly.
        factors: Vec<(u64, u32)>,
    },
}

impl BoundExpr {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BoundExpr::Exact(v) => Some(v),
            BoundExpr::Structured { .. } => None,
        }
    }

    pub fn digits(&self) -> DigitEstimate {
        match self {
            BoundExpr::Exact(v) => {
                let n = decimal_digits(v);
                DigitEstimate {
                    level: 1,
                    low: n.clone(),
                    high: n,
                }
            }
            BoundExpr::Structured { digits, .. } => digits.clone(),
        }
    }

    /// The value is certainly at least `n`.
    pub fn at_least(&self, n: u64) -> bool {
        let nd = n.to_string().len() as u64;
        match self {
            BoundExpr::Exact(v) => *v >= BigUint::from(n),
            BoundExpr::Structured { digits, .. } => {
                // Level 1: value ≥ 10^{low-1}. Level 2: value ≥ 10^{10^{low-1}-1}.
                let low = digits.low.to_u64().unwrap_or(u64::MAX);
                match digits.level {
                    1 => nd < low,
                    _ => low >= 20 || nd < 10u64.pow(low.saturating_sub(1) as u32),
                }
            }
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Exact(v) => write!(f, "{v}"),
            BoundExpr::Structured { formula, .. } => f.write_str(formula),
        }
    }
}

fn check_args(d: u64, s: u64) -> Result<()> {
    if d < 1 || s < 1 {
        return Err(Error::InvalidArgument("d and s must be at least 1".into()));
    }
    if s > u32::MAX as u64 / 2 {
        return Err(Error::InvalidArgument("s too large".into()));
    }
    Ok(())
}

fn pow_u(base: u32, e: u64) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

/// `(9^e + 1)/2`, an integer since `9^e` is odd.
fn half_nine(e: u64) -> BigUint {
    (pow_u(9, e) + 1u32) >> 1
}

/// `b(d, s) = (9^{s-1} + 1)/2 · (2d + 1) + 2`.
pub fn bound_b(d: u64, s: u64) -> Result<BigUint> {
    check_args(d, s)?;
    Ok(half_nine(s - 1) * BigUint::from(2 * d + 1) + 2u32)
}

/// `A(d, s)`, the bound on the period length of the reduced cycle.
pub fn bound_a(d: u64, s: u64, variant: Variant) -> Result<BigUint> {
    check_args(d, s)?;
    Ok(match variant {
        Variant::Statement => bound_b(d, s)?,
        Variant::Proof => half_nine(s + 1) * BigUint::from(2 * d + 1) + 2u32,
    })
}

/// Ascending primes `≤ x` by the sieve of Eratosthenes.
pub fn primes_up_to(x: &BigUint, cap: u64) -> Result<Vec<u64>> {
    let n = match x.to_u64() {
        Some(n) if n <= cap => n as usize,
        _ => {
            return Err(Error::SieveCap {
                limit: x.to_string(),
                cap,
            })
        }
    };
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(out)
}

/// `C(d, s) = Π_{p ≤ b} max(b, p · 3^{2s-1})`, the period bound.
pub fn bound_c(d: u64, s: u64) -> Result<BigUint> {
    bound_c_with(d, s, DEFAULT_SIEVE_CAP)
}

pub fn bound_c_with(d: u64, s: u64, sieve_cap: u64) -> Result<BigUint> {
    let b = bound_b(d, s)?;
    let w = pow_u(3, 2 * s - 1);
    let mut out = BigUint::one();
    for p in primes_up_to(&b, sieve_cap)? {
        let cand = &w * p;
        out *= if cand > b { cand } else { b.clone() };
    }
    Ok(out)
}

/// `M(d, s) = A(d, s) + 9^{s-1} - 1`, the tail bound.
pub fn bound_m(d: u64, s: u64, variant: Variant) -> Result<BigUint> {
    Ok(bound_a(d, s, variant)? + pow_u(9, s - 1) - 1u32)
}

/// `D(d, s)`, the bound on the size of a finite orbit.
pub fn bound_d(d: u64, s: u64, variant: Variant) -> Result<BigUint> {
    bound_d_with(d, s, variant, DEFAULT_SIEVE_CAP)
}

pub fn bound_d_with(d: u64, s: u64, variant: Variant, sieve_cap: u64) -> Result<BigUint> {
    let factor = match variant {
        Variant::Statement => BigUint::from(2 * d + 2),
        Variant::Proof => BigUint::from(d) * d + 2u32,
    };
    Ok(half_nine(s + 1) * factor * bound_c_with(d, s, sieve_cap)?)
}

/// Largest `e` with `p^e ≤ c`.
pub fn max_prime_power_leq(p: u64, c: &BigUint) -> u32 {
    if p < 2 {
        return 0;
    }
    let mut e = 0;
    let mut acc = BigUint::from(p);
    while &acc <= c {
        e += 1;
        acc *= p;
    }
    e
}

fn product_tree(xs: &[BigUint]) -> BigUint {
    match xs.len() {
        0 => BigUint::one(),
        1 => xs[0].clone(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            let (a, b) = rayon::join(|| product_tree(l), || product_tree(r));
            a * b
        }
    }
}

/// `N(d, s) = Π_p p^{m_p(C)}`, which is `lcm(1, …, C)`.
pub fn bound_n(d: u64, s: u64, cfg: &BoundConfig) -> Result<BoundExpr> {
    let c = bound_c_with(d, s, cfg.sieve_cap)?;
    lcm_up_to(&c, cfg)
}

fn lcm_up_to(c: &BigUint, cfg: &BoundConfig) -> Result<BoundExpr> {
    if *c < BigUint::from(2u32) {
        return Ok(BoundExpr::Exact(BigUint::one()));
    }
    let formula = format!("lcm(1..{c})");
    let small = c.to_u64().filter(|&v| v <= cfg.sieve_cap);
    let Some(cv) = small else {
        return Ok(BoundExpr::Structured {
            formula,
            digits: chebyshev_digits(c),
            factors: Vec::new(),
        });
    };
    let factors: Vec<(u64, u32)> = primes_up_to(c, cfg.sieve_cap)?
        .into_iter()
        .map(|p| (p, max_prime_power_leq(p, c)))
        .collect();
    // ψ(C) < 1.03883 C gives at most 1.5 C bits.
    if cv.saturating_mul(3) / 2 <= cfg.materialize_bits {
        let powers: Vec<BigUint> = factors.iter().map(|&(p, e)| BigUint::from(p).pow(e)).collect();
        return Ok(BoundExpr::Exact(product_tree(&powers)));
    }
    Ok(BoundExpr::Structured {
        formula,
        digits: chebyshev_digits(c),
        factors,
    })
}

/// Digits of `lcm(1..C) = e^{ψ(C)}` from `C(1 - 1/ln C) < ψ(C) < 1.03883 C`,
/// valid for `C ≥ 41`.
fn chebyshev_digits(c: &BigUint) -> DigitEstimate {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let cr = BigRational::from_integer(BigInt::from(c.clone()));
    let ln2_lo = q(693_147, 1_000_000);
    let ln10_lo = q(2_302_585, 1_000_000);
    let ln10_hi = q(2_302_586, 1_000_000);
    let lnc_lo = BigRational::from_integer(BigInt::from(c.bits() - 1)) * ln2_lo;
    let psi_lo = &cr * (BigRational::one() - lnc_lo.recip());
    let psi_hi = &cr * q(103_883, 100_000);
    let floor = |r: BigRational| r.floor().to_integer().to_biguint().unwrap_or_default();
    DigitEstimate {
        level: 1,
        low: floor(psi_lo / ln10_hi) + 1u32,
        high: floor(psi_hi / ln10_lo) + 1u32,
    }
}

/// Number of decimal digits of `v` (1 for zero).
pub fn decimal_digits(v: &BigUint) -> BigUint {
    if v.is_zero() {
        return BigUint::one();
    }
    let bits = v.bits();
    // 0.30102 < log10 2 < 0.30103
    let lo = (bits - 1) * 30102 / 100_000 + 1;
    let hi = bits * 30103 / 100_000 + 1;
    let mut pow = BigUint::from(10u32).pow(lo as u32);
    for k in lo..=hi {
        if *v < pow {
            return BigUint::from(k);
        }
        pow *= 10u32;
    }
    BigUint::from(hi + 1)
}

/// `B(d, s) = d^D (d^N + 1)`, the bound on the number of preperiodic points.
pub fn bound_preper_count(d: u64, s: u64, cfg: &BoundConfig) -> Result<BoundExpr> {
    let dd = bound_d_with(d, s, cfg.variant, cfg.sieve_cap)?;
    if d == 1 {
        return Ok(BoundExpr::Exact(BigUint::from(2u32)));
    }
    let n = bound_n(d, s, cfg)?;
    let formula = format!("{d}^{dd}*({d}^N+1)");
    let db = BigUint::from(d);
    match n {
        BoundExpr::Exact(n) => {
            let total = &dd + &n;
            let bits = &total * db.bits();
            if bits <= BigUint::from(cfg.materialize_bits) {
                let (e1, e2) = (dd.to_u32().unwrap_or(u32::MAX), n.to_u32().unwrap_or(u32::MAX));
                return Ok(BoundExpr::Exact(db.pow(e1) * (db.pow(e2) + 1u32)));
            }
            // log10 B = (D + N) log10 d + log10(1 + d^{-N}), the last term below 2^{-N}.
            let (lo, hi) = floor_mul_log10(d, &total, n.to_u64().unwrap_or(u64::MAX));
            Ok(BoundExpr::Structured {
                formula,
                digits: DigitEstimate {
                    level: 1,
                    low: lo + 1u32,
                    high: hi + 1u32,
                },
                factors: Vec::new(),
            })
        }
        BoundExpr::Structured { digits, .. } => {
            // N has between lo and hi digits, so digits(B) lies between
            // N log10 d ≥ 0.3 · 10^{lo-1} and 2 N log10 d + 2 < bits(d) · 10^{hi}.
            debug_assert_eq!(digits.level, 1);
            let pad = decimal_digits(&BigUint::from(db.bits())).to_u64().unwrap_or(0);
            Ok(BoundExpr::Structured {
                formula,
                digits: DigitEstimate {
                    level: 2,
                    low: digits.low - 1u32,
                    high: digits.high + pad,
                },
                factors: Vec::new(),
            })
        }
    }
}

/// `2 atanh(a/b)` scaled by `2^w`, as an enclosure, for `0 < a/b ≤ 1/3`.
fn two_atanh_fixed(a: u64, b: u64, w: u64) -> (BigUint, BigUint) {
    let (a2, b2) = (BigUint::from(a) * a, BigUint::from(b) * b);
    let mut p = (BigUint::one() << w) * a / b;
    let mut sum = BigUint::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        sum += &p / (2 * k + 1);
        p = p * &a2 / &b2;
        k += 1;
    }
    // Each term loses under 2 ulps; the tail is under (k + 1)/(1 - 1/9) ulps.
    let err = BigUint::from(2 * k + 2 * (k + 1) + 4);
    (&sum << 1, (sum + err) << 1)
}

/// `ln d · 2^w` enclosure for `d ≥ 2`.
fn ln_fixed(d: u64, w: u64) -> (BigUint, BigUint) {
    let (l2_lo, l2_hi) = two_atanh_fixed(1, 3, w);
    let k = 63 - d.leading_zeros() as u64;
    let base = 1u64 << k;
    let (mut lo, mut hi) = (&l2_lo * k, &l2_hi * k);
    if d != base {
        let (r_lo, r_hi) = two_atanh_fixed(d - base, d + base, w);
        lo += r_lo;
        hi += r_hi;
    }
    (lo, hi)
}

fn power_of_ten(mut d: u64) -> Option<u64> {
    let mut j = 0;
    while d > 1 && d.is_multiple_of(10) {
        d /= 10;
        j += 1;
    }
    (d == 1).then_some(j)
}

/// Enclosure of `floor(e · log10 d + ε)` with `0 ≤ ε < 2^{-eps_bits}`.
fn floor_mul_log10(d: u64, e: &BigUint, eps_bits: u64) -> (BigUint, BigUint) {
    if let Some(j) = power_of_ten(d) {
        let v = e * j;
        return (v.clone(), v);
    }
    let mut w = e.bits() + 32;
    loop {
        let (ln_lo, ln_hi) = ln_fixed(d, w);
        let (l10_lo, l10_hi) = ln_fixed(10, w);
        let lo = (ln_lo << w) / l10_hi;
        let hi = ((ln_hi << w) + &l10_lo - 1u32) / &l10_lo;
        let eps = if eps_bits >= w {
            BigUint::one()
        } else {
            (BigUint::one() << (w - eps_bits)) + 1u32
        };
        let flo = (e * lo) >> w;
        let fhi = (e * hi + eps) >> w;
        if flo == fhi || w >= MAX_LOG_BITS {
            return (flo, fhi);
        }
        w = (2 * w).min(MAX_LOG_BITS);
    }
}

/// All bounds for one `(d, s)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub d: u64,
    pub s: u64,
    pub variant: Variant,
    pub b: BigUint,
    pub a: BigUint,
    pub c: BigUint,
    pub m: BigUint,
    pub d_bound: BigUint,
    pub n: BoundExpr,
    pub big_b: BoundExpr,
}

pub fn bound_report(d: u64, s: u64, cfg: &BoundConfig) -> Result<BoundReport> {
    Ok(BoundReport {
        d,
        s,
        variant: cfg.variant,
        b: bound_b(d, s)?,
        a: bound_a(d, s, cfg.variant)?,
        c: bound_c_with(d, s, cfg.sieve_cap)?,
        m: bound_m(d, s, cfg.variant)?,
        d_bound: bound_d_with(d, s, cfg.variant, cfg.sieve_cap)?,
        n: bound_n(d, s, cfg)?,
        big_b: bound_preper_count(d, s, cfg)?,
    })
}
