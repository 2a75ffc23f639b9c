use kdyn_core::bounds::*;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn pow(b: u64, e: u64) -> BigUint {
    let mut out = BigUint::one();
    for _ in 0..e {
        out *= b;
    }
    out
}

/// Straightforward re-evaluation: trial division and repeated multiplication.
fn naive(d: u64, s: u64) -> (BigUint, BigUint, BigUint, BigUint) {
    let b = (pow(9, s - 1) + 1u32) / 2u32 * (2 * d + 1) + 2u32;
    let w = pow(3, 2 * s - 1);
    let bl = b.to_u64().unwrap();
    let mut c = BigUint::one();
    for p in (2..=bl).filter(|&p| is_prime(p)) {
        let f = &w * p;
        c *= if f > b { f } else { b.clone() };
    }
    let m = &b + pow(9, s - 1) - 1u32;
    let dd = (pow(9, s + 1) + 1u32) / 2u32 * (2 * d + 2) * &c;
    (b, c, m, dd)
}

#[test]
fn grid_matches_naive_evaluation() {
    for d in 1..=5 {
        for s in 1..=3 {
            let (b, c, m, dd) = naive(d, s);
            assert_eq!(bound_b(d, s).unwrap(), b, "b({d},{s})");
            assert_eq!(bound_a(d, s, Variant::Statement).unwrap(), b, "A({d},{s})");
            assert_eq!(bound_c(d, s).unwrap(), c, "C({d},{s})");
            assert_eq!(bound_m(d, s, Variant::Statement).unwrap(), m, "M({d},{s})");
            assert_eq!(bound_d(d, s, Variant::Statement).unwrap(), dd, "D({d},{s})");
        }
    }
}

#[test]
fn frozen_grid_values() {
    let cases: &[(u64, u64, &str, &str, &str)] = &[
        (1, 1, "5", "810", "132840"),
        (1, 2, "17", "5340114913663530", "7796567773948753800"),
        (2, 1, "7", "19845", "4881870"),
        (2, 2, "27", "1701216428390531742690", "3725663978175264516491100"),
        (3, 1, "9", "25515", "8368920"),
        (4, 1, "11", "1257795", "515695950"),
        (5, 1, "13", "68513445", "33708614940"),
    ];
    for &(d, s, b, c, dd) in cases {
        assert_eq!(bound_b(d, s).unwrap().to_string(), b);
        assert_eq!(bound_c(d, s).unwrap().to_string(), c);
        assert_eq!(bound_d(d, s, Variant::Statement).unwrap().to_string(), dd);
    }
    for &(d, s, b) in &[(1, 3, 125), (2, 3, 207), (3, 2, 37), (3, 3, 289), (4, 2, 47), (4, 3, 371), (5, 2, 57), (5, 3, 453)] {
        assert_eq!(bound_b(d, s).unwrap(), BigUint::from(b as u32));
    }
}

#[test]
fn monotone_and_identity() {
    for d in 1..=5u64 {
        for s in 1..=3u64 {
            let b = bound_b(d, s).unwrap();
            let c = bound_c(d, s).unwrap();
            assert!(c >= b);
            assert!(bound_d(d, s, Variant::Statement).unwrap() >= c);
            if d < 5 {
                assert!(bound_c(d + 1, s).unwrap() >= c);
            }
            if s < 3 {
                assert!(bound_c(d, s + 1).unwrap() >= c);
            }
            // The inner expression of the product is b itself.
            let inner = (pow(9, s - 1) + 1u32) / 2u32 * (2 * d + 1) + 2u32;
            assert_eq!(inner, b);
        }
    }
}

#[test]
fn prime_power_bracket() {
    let c = BigUint::from(19845u32);
    for p in [2u64, 3, 5, 7, 11, 97, 139, 140, 19843] {
        let e = max_prime_power_leq(p, &c) as u64;
        assert!(pow(p, e) <= c && pow(p, e + 1) > c);
    }
}

#[test]
fn n_for_degree_two() {
    let cfg = BoundConfig::default();
    let n = bound_n(2, 1, &cfg).unwrap();
    let n = n.exact().unwrap();
    assert_eq!(n.bits(), 28578);
    assert_eq!(n.to_string().len(), 8603);
    assert_eq!(n % 1_000_003u32, BigUint::from(789_582u32));
}

#[test]
fn b_digit_count_for_degree_two() {
    let cfg = BoundConfig::default();
    let digits = bound_preper_count(2, 1, &cfg).unwrap().digits();
    assert_eq!(digits.level, 1);
    assert!(digits.is_exact());
    let s = digits.low.to_string();
    assert_eq!(s.len(), 8603);
    assert!(s.starts_with("118634470499887404684084150166"));
    assert_eq!(&digits.low % 1_000_003u32, BigUint::from(662_512u32));
}

#[test]
fn b_grows_with_s() {
    let cfg = BoundConfig::default();
    let b21 = bound_preper_count(2, 1, &cfg).unwrap().digits();
    let b22 = bound_preper_count(2, 2, &cfg).unwrap().digits();
    // Level-2 estimates count digits of the digit count.
    assert_eq!(b22.level, 2);
    assert!(BigUint::from(b21.high.to_string().len()) < b22.low);
}

#[test]
fn proof_variant_is_larger() {
    for d in 1..=3 {
        for s in 1..=2 {
            assert!(bound_a(d, s, Variant::Proof).unwrap() > bound_a(d, s, Variant::Statement).unwrap());
            assert!(bound_d(d, s, Variant::Proof).unwrap() >= bound_d(d, s, Variant::Statement).unwrap() || d < 2);
        }
    }
}
