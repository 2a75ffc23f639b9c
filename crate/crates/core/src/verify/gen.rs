use crate::dynamics::{EndoMap, Mobius};
use crate::field::{ratio, scalar, BasePoly, FuncElem, Place, Poly, ProjPoint, Scalar};
use crate::sunits::PlaceSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic source of random instances: instance `i` of a run with
/// seed `s` always sees the same stream.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InstanceGenerator {
    seed: u64,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draw(&self, index: u64) -> Draw {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        Draw { rng }
    }
}

/// Random objects of bounded height drawn from one instance stream.
pub struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }

    /// Small integers, occasionally a fraction.
    pub fn scalar(&mut self) -> Scalar {
        if self.chance(0.2) {
            ratio(self.int(-3, 3), self.int(2, 3))
        } else {
            scalar(self.int(-4, 4))
        }
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let c = self.scalar();
            if c != scalar(0) {
                return c;
            }
        }
    }

    /// Integer coefficients in `[-3, 3]`, degree at most `deg`.
    pub fn poly(&mut self, deg: usize) -> BasePoly {
        Poly::new((0..=deg).map(|_| scalar(self.int(-3, 3))).collect())
    }

    pub fn nonzero_poly(&mut self, deg: usize) -> BasePoly {
        loop {
            let p = self.poly(deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Polynomial of exact degree `deg`.
    pub fn poly_of_degree(&mut self, deg: usize) -> BasePoly {
        let mut cs: Vec<Scalar> = (0..deg).map(|_| scalar(self.int(-3, 3))).collect();
        cs.push(self.nonzero_scalar());
        Poly::new(cs)
    }

    /// `n/d` with `deg n ≤ 2` and `d` monic of degree at most one.
    pub fn element(&mut self) -> FuncElem {
        let num = self.poly(2);
        let den = if self.chance(0.4) {
            Poly::linear_root(&scalar(self.int(-3, 3)))
        } else {
            Poly::one()
        };
        FuncElem::new(num, den).expect("monic denominator")
    }

    pub fn nonzero_element(&mut self) -> FuncElem {
        loop {
            let x = self.element();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn point(&mut self) -> ProjPoint {
        if self.chance(0.08) {
            ProjPoint::infinity()
        } else {
            ProjPoint::affine(&self.element())
        }
    }

    /// A rational place `t - a`, or infinity with probability `p_inf`.
    pub fn degree_one_place(&mut self, p_inf: f64) -> Place {
        if self.chance(p_inf) {
            Place::Infinity
        } else {
            Place::at(scalar(self.int(-3, 3)))
        }
    }

    /// A set of `size` distinct rational places.
    pub fn rational_place_set(&mut self, size: usize, with_infinity: bool) -> PlaceSet {
        let mut places = Vec::new();
        if with_infinity {
            places.push(Place::Infinity);
        }
        while places.len() < size {
            let p = Place::at(scalar(self.int(-4, 4)));
            if !places.contains(&p) {
                places.push(p);
            }
        }
        PlaceSet::new(places).expect("nonempty")
    }

    /// An element of valuation at least `k` at a degree-one place.
    pub fn small_at(&mut self, place: &Place, k: u32) -> FuncElem {
        let (pi, unit_den) = match place {
            Place::Infinity => (
                FuncElem::new(Poly::one(), Poly::x()).expect("nonzero"),
                Poly::new(vec![scalar(1), scalar(0), scalar(1)]),
            ),
            Place::Finite(g) => (FuncElem::from_poly(g.clone()), Poly::one()),
        };
        let r = FuncElem::new(self.nonzero_poly(2), unit_den).expect("nonzero");
        &pi.pow(k as i64).expect("nonzero") * &r
    }

    /// A point whose distance to `p` at `place` is at least `k`.
    pub fn near(&mut self, p: &ProjPoint, place: &Place, k: u32) -> ProjPoint {
        let x = FuncElem::from_poly(p.x().clone());
        let y = FuncElem::from_poly(p.y().clone());
        let e = self.small_at(place, k);
        let e2 = if self.chance(0.5) { FuncElem::zero() } else { self.small_at(place, k) };
        ProjPoint::from_coords(&(&x + &(&e * &y)), &(&y + &(&e2 * &x))).unwrap_or_else(|_| p.clone())
    }

    /// `z^d + c(t)` with `deg c ≤ 3`.
    pub fn monic_map(&mut self, d: usize) -> EndoMap {
        let mut f = vec![FuncElem::zero(); d + 1];
        f[0] = FuncElem::from_poly(self.poly(3));
        f[d] = FuncElem::one();
        EndoMap::new(f, vec![FuncElem::one()]).expect("monic map")
    }

    /// A product of elementary matrices over `k[t]` and a constant scaling,
    /// so the determinant is a nonzero constant.
    pub fn gl2_poly(&mut self) -> Mobius {
        let zero = FuncElem::zero();
        let one = FuncElem::one();
        let mut a = Mobius::identity();
        for _ in 0..self.int(1, 3) {
            let v = FuncElem::from_poly(self.nonzero_poly(1));
            let step = match self.int(0, 2) {
                0 => Mobius::new(&one, &v, &zero, &one),
                1 => Mobius::new(&one, &zero, &v, &one),
                _ => Mobius::new(&FuncElem::constant(self.nonzero_scalar()), &zero, &zero, &one),
            };
            a = step.expect("invertible").compose(&a);
        }
        a
    }

    /// An S-unit: a constant times a product of `t - a` over finite places
    /// of `S`, with total degree zero when infinity is outside `S`.
    pub fn s_unit(&mut self, s: &PlaceSet, e: i64) -> FuncElem {
        let roots = s.rational_roots();
        let mut exps: Vec<i64> = roots.iter().map(|_| self.int(-e, e)).collect();
        if !s.has_infinity() {
            if let Some(last) = exps.last_mut() {
                *last = 0;
                let sum: i64 = exps.iter().sum();
                *exps.last_mut().expect("nonempty") = -sum;
            }
        }
        let mut u = FuncElem::constant(self.nonzero_scalar());
        for (a, k) in roots.iter().zip(exps) {
            u = &u * &FuncElem::from_poly(Poly::linear_root(a)).pow(k).expect("nonzero");
        }
        u
    }

    /// An S-integer: numerator over a product of `t - a` for finite places
    /// of `S`, kept integral at infinity when infinity is outside `S`.
    pub fn s_integer(&mut self, s: &PlaceSet) -> FuncElem {
        let mut den: BasePoly = Poly::one();
        for a in s.rational_roots() {
            den = &den * &Poly::linear_root(&a).pow(self.int(0, 2) as u32);
        }
        let num_deg = if s.has_infinity() { den.deg0() + 1 } else { den.deg0() };
        FuncElem::new(self.poly(num_deg), den).expect("nonzero")
    }

    /// A product of elementary matrices with S-integer entries and an
    /// S-unit scaling.
    pub fn gl2_rs(&mut self, s: &PlaceSet) -> Mobius {
        let zero = FuncElem::zero();
        let one = FuncElem::one();
        let mut a = Mobius::identity();
        for _ in 0..self.int(1, 3) {
            let step = match self.int(0, 2) {
                0 => Mobius::new(&one, &self.s_integer(s), &zero, &one),
                1 => Mobius::new(&one, &zero, &self.s_integer(s), &one),
                _ => Mobius::new(&self.s_unit(s, 2), &zero, &zero, &one),
            };
            a = step.expect("invertible").compose(&a);
        }
        a
    }
}
