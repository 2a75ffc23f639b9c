//! Text syntax for maps, points, elements of `K` and places.
//!
//! Expressions use `+ - * / ^`, parentheses, integer and decimal literals,
//! and the variables `t` and `z`. Juxtaposition multiplies (`2t`, `t z^2`)
//! with the same precedence as `*`, so `1/2t` means `(1/2)·t`. Exponents are
//! signed integers, written `z^-1` or `z^(-1)`. A map may be prefixed by
//! `phi =`; a point may be `inf` or `[x : y]`.
//!
//! Maps are assembled as a quotient without cancelling common factors in
//! `z`, so `(z^2 - 1)/(z - 1)` is rejected as not reduced.

use crate::dynamics::EndoMap;
use crate::error::{Error, Result};
use crate::field::{BasePoly, FuncElem, Place, Poly, ProjPoint, Scalar};
use crate::sunits::PlaceSet;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    T,
    Z,
    Inf,
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(decimal(&lit).ok_or_else(|| Error::parse(pos, format!("bad number {lit:?}")))?)));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let tok = match word.as_str() {
                "t" => Tok::T,
                "z" => Tok::Z,
                "inf" | "infinity" => Tok::Inf,
                // Juxtaposed variables such as `tz`.
                w if w.chars().all(|c| c == 't' || c == 'z') => {
                    for (k, c) in w.chars().enumerate() {
                        out.push((pos + k, if c == 't' { Tok::T } else { Tok::Z }));
                    }
                    continue;
                }
                _ => return Err(Error::parse(pos, format!("unknown name {word:?}"))),
            };
            out.push((pos, tok));
            continue;
        }
        let op = match c {
            '−' => '-',
            '∞' => {
                out.push((pos, Tok::Inf));
                i += 1;
                continue;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' | ':' | '=' => c,
            _ => return Err(Error::parse(pos, format!("unexpected character {c:?}"))),
        };
        out.push((pos, Tok::Op(op)));
        i += 1;
    }
    Ok(out)
}

fn decimal(lit: &str) -> Option<Scalar> {
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    Some(Scalar::new(n, BigInt::from(10u32).pow(frac.len() as u32)))
}

/// A quotient of polynomials in `z` over `K`, kept without cancellation.
#[derive(Clone, Debug)]
struct Frac {
    num: Poly<FuncElem>,
    den: Poly<FuncElem>,
}

impl Frac {
    fn k(c: FuncElem) -> Self {
        Frac {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// Absorbs a denominator that does not involve `z`.
    fn tidy(mut self) -> Self {
        if self.den.deg0() == 0 {
            let c = self.den.coeff(0);
            if c != FuncElem::one() {
                let inv = c.checked_inv().expect("nonzero denominator");
                self.num = self.num.scale(&inv);
                self.den = Poly::one();
            }
        }
        self
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .tidy()
    }

    fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .tidy()
    }

    fn div(&self, o: &Frac, pos: usize) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::parse(pos, "zero denominator"));
        }
        Ok(Frac {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
        .tidy())
    }

    fn pow(&self, e: i64, pos: usize) -> Result<Frac> {
        let base = if e < 0 { Frac::k(FuncElem::one()).div(self, pos)? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::parse(pos, "exponent too large"))?;
        Ok(Frac {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .tidy())
    }

    fn as_k(&self) -> Option<FuncElem> {
        (self.num.deg0() == 0 && self.den.deg0() == 0)
            .then(|| self.num.coeff(0).checked_div(&self.den.coeff(0)).expect("nonzero denominator"))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    allow_z: bool,
}

impl Parser {
    fn new(text: &str, allow_z: bool) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            end: text.len(),
            allow_z,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {c:?}")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::parse(self.pos(), "unexpected trailing input")),
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::T | Tok::Z | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                acc = acc.div(&self.unary()?, pos)?;
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let v = n.to_integer();
                self.at += 1;
                i64::try_from(v).map_err(|_| Error::parse(pos, "exponent too large"))?
            }
            _ => return Err(Error::parse(self.pos(), "expected an integer exponent")),
        };
        if paren {
            self.expect(')')?;
        }
        base.pow(if neg { -e } else { e }, pos)
    }

    fn atom(&mut self) -> Result<Frac> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::parse(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(Frac::k(FuncElem::constant(n))),
            Tok::T => Ok(Frac::k(FuncElem::t())),
            Tok::Z if self.allow_z => Ok(Frac {
                num: Poly::x(),
                den: Poly::one(),
            }),
            Tok::Z => Err(Error::parse(pos, "z is not allowed here")),
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Inf => Err(Error::parse(pos, "inf is not allowed here")),
            Tok::Op(c) => Err(Error::parse(pos, format!("unexpected {c:?}"))),
        }
    }

    fn element(&mut self) -> Result<FuncElem> {
        let pos = self.pos();
        let v = self.expr()?;
        v.as_k().ok_or_else(|| Error::parse(pos, "expected an element of k(t)"))
    }
}

/// A rational map in `z` with coefficients in `k(t)`.
pub fn parse_map(text: &str) -> Result<EndoMap> {
    // Optional `phi =` prefix.
    let (body, shift) = match text.split_once('=') {
        Some((lhs, rhs)) if lhs.trim() == "phi" || lhs.trim() == "φ" => (rhs, text.len() - rhs.len()),
        _ => (text, 0),
    };
    let mut p = Parser::new(body, true).map_err(|e| shifted(e, shift))?;
    let v = p.expr().and_then(|v| p.finish().map(|_| v)).map_err(|e| shifted(e, shift))?;
    EndoMap::new(v.num.into_coeffs(), v.den.into_coeffs())
}

fn shifted(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::parse(pos + by, msg),
        other => other,
    }
}

/// An element of `k(t)`.
pub fn parse_funcelem(text: &str) -> Result<FuncElem> {
    let mut p = Parser::new(text, false)?;
    let v = p.element()?;
    p.finish()?;
    Ok(v)
}

/// A point of `P^1(K)`: `inf`, an element of `k(t)`, or `[x : y]`.
pub fn parse_point(text: &str) -> Result<ProjPoint> {
    let mut p = Parser::new(text, false)?;
    if p.peek() == Some(&Tok::Inf) {
        p.at += 1;
        p.finish()?;
        return Ok(ProjPoint::infinity());
    }
    if p.eat('[') {
        let pos = p.pos();
        let x = p.element()?;
        p.expect(':')?;
        let y = p.element()?;
        p.expect(']')?;
        p.finish()?;
        return ProjPoint::from_coords(&x, &y).map_err(|_| Error::parse(pos, "point [0 : 0]"));
    }
    let v = p.element()?;
    p.finish()?;
    Ok(ProjPoint::affine(&v))
}

/// A place: `inf`, a value `a` for the place `t - a`, or an irreducible
/// polynomial in `t`.
pub fn parse_place(text: &str) -> Result<Place> {
    let mut p = Parser::new(text, false)?;
    if p.peek() == Some(&Tok::Inf) {
        p.at += 1;
        p.finish()?;
        return Ok(Place::Infinity);
    }
    let pos = p.pos();
    let v = p.element()?;
    p.finish()?;
    if let Some(a) = v.as_constant() {
        return Ok(Place::at(a));
    }
    if !v.is_polynomial() {
        return Err(Error::parse(pos, "a place is a value, a polynomial in t, or inf"));
    }
    let g: BasePoly = v.num().monic();
    Place::finite(g)
}

/// Comma-separated places.
pub fn parse_places(text: &str) -> Result<PlaceSet> {
    let mut places = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let place = parse_place(part).map_err(|e| shifted(e, offset))?;
        places.push(place);
        offset += part.len() + 1;
    }
    PlaceSet::new(places)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, scalar};

    #[test]
    fn map_examples() {
        let phi = parse_map("(z^2 + t - t^2)/(1)").unwrap();
        assert_eq!(phi.degree(), 2);
        assert_eq!(parse_map("phi = z^2 + t - t^2").unwrap(), phi);
        assert_eq!(parse_map("z z - t t + t").unwrap(), phi);
        assert_eq!(parse_map("(z^2-1)/(z-1)"), Err(Error::NotReduced));
        assert_eq!(parse_map("t*z^2").unwrap().to_string(), "(t*z^2)/(1)");
        assert_eq!(parse_map("z + 1/z").unwrap().to_string(), "(z^2 + 1)/(z)");
        assert_eq!(parse_map("z^2/(t^-1)").unwrap(), parse_map("t z^2").unwrap());
        assert_eq!(parse_map("t"), Err(Error::ConstantMap));
    }

    #[test]
    fn map_errors_have_positions() {
        assert!(matches!(parse_map("z^2 +"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_map("z^2 $ 1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_map("z/(t - t)"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_map("z^t"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("(z + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("phi = z^2 +"), Err(Error::Parse { pos: 11, .. })));
    }

    #[test]
    fn point_examples() {
        assert_eq!(parse_point("t").unwrap(), ProjPoint::affine(&FuncElem::t()));
        assert_eq!(parse_point("inf").unwrap(), ProjPoint::infinity());
        assert_eq!(parse_point("[1 : 0]").unwrap(), ProjPoint::infinity());
        assert_eq!(parse_point("[t : t^2]").unwrap(), parse_point("1/t").unwrap());
        assert_eq!(parse_point("0.5").unwrap(), ProjPoint::affine(&FuncElem::constant(ratio(1, 2))));
        assert!(parse_point("z").is_err());
        assert!(parse_point("[0 : 0]").is_err());
    }

    #[test]
    fn place_examples() {
        assert_eq!(parse_place("0").unwrap(), Place::at(scalar(0)));
        assert_eq!(parse_place("t").unwrap(), Place::at(scalar(0)));
        assert_eq!(parse_place("2t - 1").unwrap(), Place::at(ratio(1, 2)));
        assert_eq!(parse_place("inf").unwrap(), Place::Infinity);
        assert!(matches!(parse_place("t^2 - 1"), Err(Error::InvalidPlace(_))));
        assert!(parse_place("t^2 + 1").is_ok());
        let s = parse_places("0, inf").unwrap();
        assert_eq!(s.s(), 2);
        assert!(matches!(parse_places("0, z"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["z^2 + t - t^2", "(t z^2 + 1/2 z)/(z - 3t^2)", "(z^3 - 7/3)/(t^2 + 1)", "1/(z^2 + t)"] {
            let phi = parse_map(text).unwrap();
            assert_eq!(parse_map(&phi.to_string()).unwrap(), phi, "{phi}");
        }
        for text in ["t", "-1/t", "(t^2 + 1)/(t - 1/3)", "inf", "0"] {
            let p = parse_point(text).unwrap();
            assert_eq!(parse_point(&p.to_string()).unwrap(), p);
        }
        for text in ["0", "inf", "-2/3", "t^2 + t + 1"] {
            let p = parse_place(text).unwrap();
            assert_eq!(parse_place(&p.label()).unwrap(), p);
        }
    }
}
