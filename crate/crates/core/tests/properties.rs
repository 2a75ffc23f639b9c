use kdyn_core::distance::{log_distance, DistanceValue};
use kdyn_core::dynamics::{conjugate, EndoMap, Mobius};
use kdyn_core::field::{
    distinct_root_count, ratio, scalar, squarefree_radical, valuation, BasePoly, FuncElem, Place, Poly, ProjPoint,
    Scalar,
};
use kdyn_core::parse::{parse_funcelem, parse_map, parse_point};
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![4 => (-5i64..=5).prop_map(scalar), 1 => (-5i64..=5, 2i64..=4).prop_map(|(n, d)| ratio(n, d))]
}

fn poly(max_deg: usize) -> impl Strategy<Value = BasePoly> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|cs| Poly::new(cs.into_iter().map(scalar).collect()))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = BasePoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn element() -> impl Strategy<Value = FuncElem> {
    (poly(3), prop::option::of(-3i64..=3), small_scalar())
        .prop_map(|(n, root, c)| {
            let den = root.map_or(Poly::one(), |a| Poly::linear_root(&scalar(a)));
            &FuncElem::new(n, den).expect("nonzero denominator") * &FuncElem::constant(c)
        })
}

fn nonzero_element() -> impl Strategy<Value = FuncElem> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop_oneof![1 => Just(ProjPoint::infinity()), 9 => element().prop_map(|x| ProjPoint::affine(&x))]
}

fn finite_place() -> impl Strategy<Value = Place> {
    prop_oneof![
        4 => (-3i64..=3).prop_map(|a| Place::at(scalar(a))),
        1 => Just(Place::finite(Poly::new(vec![scalar(1), scalar(0), scalar(1)])).expect("irreducible")),
    ]
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![4 => finite_place(), 1 => Just(Place::Infinity)]
}

/// Degree 1 to 3 with polynomial coefficients of degree at most 2.
fn map() -> impl Strategy<Value = EndoMap> {
    (1usize..=3)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(poly(2), d + 1),
                prop::collection::vec(poly(2), d + 1),
            )
        })
        .prop_filter_map("reduced", |(f, g)| EndoMap::from_polys(f, g).ok())
}

/// A product of elementary matrices over `k[t]`, so the determinant is a
/// nonzero constant.
fn gl2_poly() -> impl Strategy<Value = Mobius> {
    prop::collection::vec((0u8..3, nonzero_poly(1), (1i64..=3)), 1..=3).prop_map(|steps| {
        let zero = FuncElem::zero();
        let one = FuncElem::one();
        steps.into_iter().fold(Mobius::identity(), |acc, (kind, v, c)| {
            let v = FuncElem::from_poly(v);
            let step = match kind {
                0 => Mobius::new(&one, &v, &zero, &one),
                1 => Mobius::new(&one, &zero, &v, &one),
                _ => Mobius::new(&FuncElem::from_int(-c), &zero, &zero, &one),
            };
            step.expect("invertible").compose(&acc)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_formula(c in 1i64..=5, exps in prop::collection::vec(-3i64..=3, 4), q in -2i64..=2) {
        // c (t^2 + 1)^q prod (t - a)^e over a = -1, 0, 1, 2.
        let quad = Poly::new(vec![scalar(1), scalar(0), scalar(1)]);
        let mut x = &FuncElem::from_poly(quad.clone()).pow(q).unwrap() * &FuncElem::from_int(c);
        let mut places = vec![Place::Infinity, Place::finite(quad).unwrap()];
        for (a, e) in (-1i64..).zip(&exps) {
            x = &x * &FuncElem::from_poly(Poly::linear_root(&scalar(a))).pow(*e).unwrap();
            places.push(Place::at(scalar(a)));
        }
        let total: i64 = places.iter().map(|p| p.degree() as i64 * valuation(&x, p).unwrap()).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn valuation_is_additive(x in nonzero_element(), y in nonzero_element(), p in place()) {
        let vx = valuation(&x, &p).unwrap();
        let vy = valuation(&y, &p).unwrap();
        prop_assert_eq!(valuation(&(&x * &y), &p).unwrap(), vx + vy);
        let s = &x + &y;
        if !s.is_zero() {
            prop_assert!(valuation(&s, &p).unwrap() >= vx.min(vy));
        }
        prop_assert_eq!(valuation(&x.checked_inv().unwrap(), &p).unwrap(), -vx);
    }

    #[test]
    fn radical_is_squarefree_and_divides(f in nonzero_poly(3), g in nonzero_poly(2)) {
        let h = &(&f * &f) * &g;
        let r = squarefree_radical(&h).unwrap();
        prop_assert!(r.divides(&(&f * &g)));
        prop_assert!(r.divides(&h));
        prop_assert_eq!(squarefree_radical(&r).unwrap(), r.clone());
        prop_assert_eq!(distinct_root_count(&h).unwrap(), distinct_root_count(&r).unwrap());
        prop_assert_eq!(r.deg0(), distinct_root_count(&r).unwrap());
    }

    #[test]
    fn resultant_is_invariant_under_gl2_poly(phi in map(), a in gl2_poly()) {
        let psi = conjugate(&phi, &a);
        prop_assert_eq!(psi.resultant().monic(), phi.resultant().monic());
    }

    #[test]
    fn conjugation_round_trips(phi in map(), a in gl2_poly(), p in point()) {
        let psi = conjugate(&phi, &a);
        prop_assert_eq!(conjugate(&psi, &a.inverse()), phi.clone());
        prop_assert_eq!(psi.evaluate(&a.apply(&p)), a.apply(&phi.evaluate(&p)));
    }

    #[test]
    fn distance_is_symmetric(p in point(), q in point(), v in place()) {
        prop_assert_eq!(log_distance(&p, &q, &v), log_distance(&q, &p, &v));
        prop_assert_eq!(log_distance(&p, &p, &v), DistanceValue::Infinite);
        prop_assert_eq!(log_distance(&p, &q, &v) == DistanceValue::Infinite, p == q);
    }

    #[test]
    fn distance_is_pgl_invariant(p in point(), q in point(), a in gl2_poly(), v in finite_place()) {
        prop_assert_eq!(log_distance(&a.apply(&p), &a.apply(&q), &v), log_distance(&p, &q, &v));
    }

    #[test]
    fn parser_round_trips(phi in map(), x in element(), p in point()) {
        prop_assert_eq!(parse_map(&phi.to_string()).unwrap(), phi);
        prop_assert_eq!(parse_funcelem(&x.to_string()).unwrap(), x);
        prop_assert_eq!(parse_point(&p.to_string()).unwrap(), p);
    }
}
