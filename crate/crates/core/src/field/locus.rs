use super::{rational_roots, squarefree_radical, BasePoly, Place, Poly, Scalar};
use crate::error::Result;
use std::collections::BTreeSet;
use std::fmt;

/// A finite set of places of `k̄(t)` described without factoring: explicit
/// rational points, a squarefree remainder with no rational roots, and
/// possibly the place at infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Locus {
    pub rational: BTreeSet<Scalar>,
    /// Monic squarefree, no rational roots; its roots are the remaining
    /// finite places over the closure.
    pub irrational: BasePoly,
    pub infinity: bool,
}

impl Default for Locus {
    fn default() -> Self {
        Locus::empty()
    }
}

impl Locus {
    pub fn empty() -> Self {
        Locus {
            rational: BTreeSet::new(),
            irrational: Poly::one(),
            infinity: false,
        }
    }

    /// Zeros of a nonzero polynomial.
    pub fn zeros_of(f: &BasePoly) -> Result<Self> {
        let mut rad = squarefree_radical(f)?;
        let mut rational = BTreeSet::new();
        for r in rational_roots(&rad)? {
            rad = rad.div_rem(&Poly::linear_root(&r)).0;
            rational.insert(r);
        }
        Ok(Locus {
            rational,
            irrational: rad.monic(),
            infinity: false,
        })
    }

    pub fn with_infinity(mut self, yes: bool) -> Self {
        self.infinity |= yes;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty() && self.irrational.is_constant() && !self.infinity
    }

    /// Number of places over the algebraic closure.
    pub fn closure_count(&self) -> usize {
        self.rational.len() + self.irrational.deg0() + usize::from(self.infinity)
    }

    pub fn union(&self, other: &Locus) -> Locus {
        let mut rational = self.rational.clone();
        rational.extend(other.rational.iter().cloned());
        let g = self.irrational.gcd(&other.irrational);
        let irrational = (&self.irrational * &other.irrational).div_rem(&g).0.monic();
        Locus {
            rational,
            irrational,
            infinity: self.infinity || other.infinity,
        }
    }

    /// Removes every place lying in `places`.
    pub fn without(&self, places: &[Place]) -> Locus {
        let mut out = self.clone();
        for p in places {
            match p {
                Place::Infinity => out.infinity = false,
                Place::Finite(g) => match p.root() {
                    Some(a) => {
                        out.rational.remove(&a);
                    }
                    None => {
                        let c = out.irrational.gcd(g);
                        if !c.is_constant() {
                            out.irrational = out.irrational.div_rem(&c).0.monic();
                        }
                    }
                },
            }
        }
        out
    }

    /// The explicitly known places: rational points and infinity.
    pub fn rational_places(&self) -> Vec<Place> {
        let mut v: Vec<Place> = self.rational.iter().cloned().map(Place::at).collect();
        if self.infinity {
            v.push(Place::Infinity);
        }
        v
    }

    pub fn contains_finite(&self, a: &Scalar) -> bool {
        self.rational.contains(a)
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.rational.iter().map(|a| Place::at(a.clone()).to_string()).collect();
        if !self.irrational.is_constant() {
            parts.push(format!("roots of {}", self.irrational));
        }
        if self.infinity {
            parts.push("inf".into());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}
