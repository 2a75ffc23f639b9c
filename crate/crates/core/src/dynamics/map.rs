use super::forms::{self, Form};
use crate::error::{Error, Result};
use crate::field::{BasePoly, FuncElem, Locus, Place, Poly, ProjPoint, Scalar};
use crate::sunits::PlaceSet;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

/// A rational map `z ↦ f(z)/g(z)` of degree `d ≥ 1` on `P^1(K)`.
///
/// Coefficients are kept in `k[t]` with no common polynomial factor, and the
/// first nonzero coefficient among `f_d, …, f_0, g_d, …, g_0` monic. This is
/// an S-reduced integral form for every `S` containing infinity; see
/// [`EndoMap::s_reduced`] for the other sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EndoMap {
    f: Form,
    g: Form,
    res: ResultantCache,
}

/// Lazily computed resultant; invisible to comparisons.
#[derive(Clone, Default, Debug)]
struct ResultantCache(OnceLock<BasePoly>);

impl PartialEq for ResultantCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for ResultantCache {}

impl PartialOrd for ResultantCache {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResultantCache {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

impl Hash for ResultantCache {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl EndoMap {
    /// Builds a map from coefficient lists over `K` (ascending in `z`),
    /// clearing denominators and content.
    pub fn new(f: Vec<FuncElem>, g: Vec<FuncElem>) -> Result<Self> {
        let fz = Poly::new(f);
        let gz = Poly::new(g);
        if fz.is_zero() || gz.is_zero() {
            return Err(Error::ConstantMap);
        }
        let d = fz.deg0().max(gz.deg0());
        if d == 0 {
            return Err(Error::ConstantMap);
        }
        if fz.gcd(&gz).deg0() > 0 {
            return Err(Error::NotReduced);
        }
        let mut l: BasePoly = Poly::one();
        for c in fz.coeffs().iter().chain(gz.coeffs()) {
            let g = l.gcd(c.den());
            l = &l * &c.den().div_rem(&g).0;
        }
        let lift = |p: &Poly<FuncElem>| -> Form {
            (0..=d)
                .map(|j| {
                    let c = p.coeff(j);
                    (c.num() * &l).div_rem(c.den()).0
                })
                .collect()
        };
        Ok(EndoMap::from_forms(lift(&fz), lift(&gz)))
    }

    /// From polynomial coefficient lists, ascending in `z`.
    pub fn from_polys(f: Vec<BasePoly>, g: Vec<BasePoly>) -> Result<Self> {
        EndoMap::new(
            f.into_iter().map(FuncElem::from_poly).collect(),
            g.into_iter().map(FuncElem::from_poly).collect(),
        )
    }

    /// Normalizes a coprime pair of forms of equal degree.
    pub(crate) fn from_forms(mut f: Form, mut g: Form) -> Self {
        debug_assert_eq!(f.len(), g.len());
        forms::normalize_pair(&mut f, &mut g);
        EndoMap {
            f,
            g,
            res: ResultantCache::default(),
        }
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// Numerator coefficients `f_0, …, f_d`.
    pub fn f(&self) -> &[BasePoly] {
        &self.f
    }

    /// Denominator coefficients `g_0, …, g_d`.
    pub fn g(&self) -> &[BasePoly] {
        &self.g
    }

    pub(crate) fn forms(&self) -> (&Form, &Form) {
        (&self.f, &self.g)
    }

    pub fn numerator(&self) -> Poly<FuncElem> {
        Poly::new(self.f.iter().cloned().map(FuncElem::from_poly).collect())
    }

    pub fn denominator(&self) -> Poly<FuncElem> {
        Poly::new(self.g.iter().cloned().map(FuncElem::from_poly).collect())
    }

    /// All coefficients lie in the constant field.
    pub fn has_constant_coefficients(&self) -> bool {
        self.f.iter().chain(&self.g).all(|c| c.is_constant())
    }

    /// Largest `t`-degree among the coefficients.
    pub fn t_degree(&self) -> usize {
        self.f.iter().chain(&self.g).map(|c| c.deg0()).max().unwrap_or(0)
    }

    /// Coefficients `(f, g)` in S-reduced integral form for `S`.
    ///
    /// Equal to the stored polynomials when infinity is in `S`; otherwise
    /// the pole at infinity is moved onto the first degree-one place of `S`.
    pub fn s_reduced(&self, s: &PlaceSet) -> Result<(Vec<FuncElem>, Vec<FuncElem>)> {
        let shift = if s.has_infinity() {
            FuncElem::one()
        } else {
            let alpha = s.rational_roots().into_iter().next().ok_or(Error::NonRationalLattice)?;
            FuncElem::from_poly(Poly::linear_root(&alpha)).pow(-(self.t_degree() as i64))?
        };
        let conv = |form: &Form| form.iter().map(|c| &FuncElem::from_poly(c.clone()) * &shift).collect();
        Ok((conv(&self.f), conv(&self.g)))
    }

    /// `[F(x, y) : G(x, y)]` for the homogenized map.
    pub fn evaluate(&self, p: &ProjPoint) -> ProjPoint {
        let fx = forms::eval(&self.f, p.x(), p.y());
        let gx = forms::eval(&self.g, p.x(), p.y());
        // The common factor divides the resultant.
        let r = self.resultant();
        let common = fx.gcd(&r).gcd(&gx);
        if common.is_one() {
            return ProjPoint::from_coprime(fx, gx);
        }
        let x = fx.exact_div(&common).expect("common factor");
        let y = gx.exact_div(&common).expect("common factor");
        ProjPoint::from_coprime(x, y)
    }

    /// `self ∘ other`, with common content removed.
    pub fn compose(&self, other: &EndoMap) -> EndoMap {
        let f = forms::substitute(&self.f, &other.f, &other.g);
        let g = forms::substitute(&self.g, &other.f, &other.g);
        EndoMap::from_forms(f, g)
    }

    /// Homogeneous resultant of `f` and `g` as degree-`d` forms.
    pub fn resultant(&self) -> BasePoly {
        self.res.0.get_or_init(|| forms::resultant(&self.f, &self.g)).clone()
    }

    /// The same map written in `u = 1/t`, renormalized to polynomial
    /// coefficients in `u`.
    pub fn invert_variable(&self) -> EndoMap {
        let m = self.t_degree();
        let flip = |c: &BasePoly| {
            let mut cs = vec![Scalar::zero(); m + 1];
            for (i, a) in c.coeffs().iter().enumerate() {
                cs[m - i] = a.clone();
            }
            Poly::new(cs)
        };
        EndoMap::from_forms(self.f.iter().map(flip).collect(), self.g.iter().map(flip).collect())
    }

    /// Valuation of the resultant of the reduced form at `p`.
    pub fn resultant_valuation(&self, p: &Place) -> Result<i64> {
        match p {
            Place::Infinity => Place::at(Scalar::zero()).poly_valuation(&self.invert_variable().resultant()),
            _ => p.poly_valuation(&self.resultant()),
        }
    }

    /// Places where the reduced map drops degree.
    pub fn bad_places(&self) -> Result<BadPlaces> {
        let finite = Locus::zeros_of(&self.resultant())?;
        let infinity_bad = self.resultant_valuation(&Place::Infinity)? > 0;
        Ok(BadPlaces { finite, infinity_bad })
    }

    /// Every place of bad simple reduction lies in `S`.
    pub fn has_simple_good_reduction_outside(&self, s: &PlaceSet) -> Result<bool> {
        Ok(self.bad_places()?.locus().without(s.places()).is_empty())
    }

    /// The map over the residue field at a degree-one place.
    pub fn reduce(&self, p: &Place) -> Result<ReducedMap> {
        if p.degree() != 1 {
            return Err(Error::UnsupportedPlace);
        }
        let (form_f, form_g, at) = match p {
            Place::Infinity => {
                let inv = self.invert_variable();
                (inv.f, inv.g, Scalar::zero())
            }
            _ => (self.f.clone(), self.g.clone(), p.root().expect("degree one")),
        };
        let fr = Poly::new(form_f.iter().map(|c| c.eval(&at)).collect());
        let gr = Poly::new(form_g.iter().map(|c| c.eval(&at)).collect());
        Ok(ReducedMap::from_pair(fr, gr))
    }
}

/// Where a map has bad simple reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BadPlaces {
    /// Zeros of the resultant.
    pub finite: Locus,
    pub infinity_bad: bool,
}

impl BadPlaces {
    pub fn locus(&self) -> Locus {
        self.finite.clone().with_infinity(self.infinity_bad)
    }

    pub fn count_over_closure(&self) -> usize {
        self.locus().closure_count()
    }

    /// Explicit bad places: degree-one finite places, then infinity.
    pub fn rational_places(&self) -> Vec<Place> {
        self.locus().rational_places()
    }
}

/// A map over the residue field, in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedMap {
    pub num: BasePoly,
    pub den: BasePoly,
    pub degree: usize,
}

impl ReducedMap {
    fn from_pair(f: BasePoly, g: BasePoly) -> Self {
        let h = f.gcd(&g);
        let (mut num, mut den) = (f.div_rem(&h).0, g.div_rem(&h).0);
        if let Some(lc) = den.leading().cloned().or_else(|| num.leading().cloned()) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let degree = num.deg0().max(den.deg0());
        ReducedMap { num, den, degree }
    }

    /// Image of a residue point, `None` standing for infinity.
    pub fn apply(&self, x: Option<&Scalar>) -> Option<Scalar> {
        let (a, b) = match x {
            Some(x) => (self.num.eval(x), self.den.eval(x)),
            None => {
                let d = self.degree;
                (self.num.coeff(d), self.den.coeff(d))
            }
        };
        (!b.is_zero()).then(|| a / b)
    }
}

impl fmt::Display for ReducedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.display_in("z"))
        } else {
            write!(f, "({})/({})", self.num.display_in("z"), self.den.display_in("z"))
        }
    }
}

/// Renders a form in `z` with polynomial coefficients as a polynomial in
/// `z` and `t`, e.g. `z^2 - t^2 + t`.
pub(crate) fn render_form(form: &[BasePoly]) -> String {
    let mut out = String::new();
    for (j, c) in form.iter().enumerate().rev() {
        for (i, a) in c.coeffs().iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mut factors = Vec::new();
            if i > 0 {
                factors.push(if i == 1 { "t".to_string() } else { format!("t^{i}") });
            }
            if j > 0 {
                factors.push(if j == 1 { "z".to_string() } else { format!("z^{j}") });
            }
            let mag = a.abs();
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            let term = factors.join("*");
            if out.is_empty() {
                if a.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if a.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", render_form(&self.f), render_form(&self.g))
    }
}
