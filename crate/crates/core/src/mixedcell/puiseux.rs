//! Finite Puiseux expressions and factored one-variable polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::rat::Rat;

/// Additive valuation: a rational, or `∞` for zero. `Finite(_) < Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rat),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(r) => Some(r),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `Σ cᵢ·t^eᵢ` with finitely many nonzero rational coefficients and rational
/// exponents. Terms are kept as `(exponent, coefficient)` with strictly
/// increasing exponents, so the derived order is term-lexicographic and zero
/// is the least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PuiseuxElement {
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    pub fn monomial(coef: Rat, exp: Rat) -> Self {
        Self::from_terms([(coef, exp)])
    }

    /// From `(coefficient, exponent)` pairs in any order; like exponents are
    /// merged and zero coefficients dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut raw: Vec<(Rat, Rat)> = terms.into_iter().map(|(c, e)| (e, c)).collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        PuiseuxElement { terms: out }
    }

    /// Terms as `(exponent, coefficient)`, exponents increasing.
    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent of a nonzero term.
    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Finite(e.clone()),
            None => Valuation::Infinite,
        }
    }

    /// Parses a literal such as `2*t^(1/2) - t + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let p = parse_puiseux(&mut cur)?;
        cur.expect_end()?;
        Ok(p)
    }
}

impl Add for &PuiseuxElement {
    type Output = PuiseuxElement;
    fn add(self, rhs: &PuiseuxElement) -> PuiseuxElement {
        PuiseuxElement::from_terms(
            self.terms
                .iter()
                .chain(&rhs.terms)
                .map(|(e, c)| (c.clone(), e.clone())),
        )
    }
}

impl Neg for &PuiseuxElement {
    type Output = PuiseuxElement;
    fn neg(self) -> PuiseuxElement {
        PuiseuxElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &PuiseuxElement {
    type Output = PuiseuxElement;
    fn sub(self, rhs: &PuiseuxElement) -> PuiseuxElement {
        self + &(-rhs)
    }
}

impl Mul for &PuiseuxElement {
    type Output = PuiseuxElement;
    fn mul(self, rhs: &PuiseuxElement) -> PuiseuxElement {
        let mut prod = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                prod.push((c1 * c2, e1 + e2));
            }
        }
        PuiseuxElement::from_terms(prod)
    }
}

fn write_exp(f: &mut fmt::Formatter<'_>, e: &Rat) -> fmt::Result {
    if e.is_integer() {
        write!(f, "t^{e}")
    } else {
        write!(f, "t^({e})")
    }
}

/// Writes one term with magnitude `|c|`; the sign is the caller's business.
fn write_term(f: &mut fmt::Formatter<'_>, e: &Rat, c: &Rat) -> fmt::Result {
    let mag = c.abs();
    if e.is_zero() {
        return write!(f, "{mag}");
    }
    if mag != Rat::one() {
        write!(f, "{mag}*")?;
    }
    if *e == Rat::one() {
        f.write_str("t")
    } else {
        write_exp(f, e)
    }
}

/// Writes ` + term` / ` - term` for every term, for use after a leading
/// expression such as `x`.
pub(crate) fn write_tail(f: &mut fmt::Formatter<'_>, p: &PuiseuxElement) -> fmt::Result {
    for (e, c) in &p.terms {
        f.write_str(if c.signum() < 0 { " - " } else { " + " })?;
        write_term(f, e, c)?;
    }
    Ok(())
}

impl fmt::Display for PuiseuxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(((e0, c0), rest)) = self.terms.split_first() else {
            return f.write_str("0");
        };
        if c0.signum() < 0 {
            f.write_str("-")?;
        }
        write_term(f, e0, c0)?;
        write_tail(f, &PuiseuxElement { terms: rest.to_vec() })
    }
}

impl FromStr for PuiseuxElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for PuiseuxElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PuiseuxElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `['-'|'+'] pterm (('+'|'-') pterm)*`.
pub(crate) fn parse_puiseux(cur: &mut Cursor) -> Result<PuiseuxElement> {
    let mut terms = Vec::new();
    let mut sign = if cur.eat_sym("-") {
        -1
    } else {
        cur.eat_sym("+");
        1
    };
    loop {
        let (c, e) = parse_pterm(cur)?;
        terms.push((c.mul_int(sign), e));
        if cur.is_sym("+") && starts_pterm(cur.peek_at(1)) {
            cur.bump();
            sign = 1;
        } else if cur.is_sym("-") && starts_pterm(cur.peek_at(1)) {
            cur.bump();
            sign = -1;
        } else {
            return Ok(PuiseuxElement::from_terms(terms));
        }
    }
}

fn starts_pterm(t: &Tok) -> bool {
    matches!(t, Tok::Int(_)) || matches!(t, Tok::Ident(s) if s == "t")
}

/// `rational ['*' 't' ['^' exp]] | 't' ['^' exp]`.
fn parse_pterm(cur: &mut Cursor) -> Result<(Rat, Rat)> {
    let coef = if matches!(cur.peek(), Tok::Int(_)) {
        let c = cur.unsigned_rational()?;
        if !(cur.is_sym("*") && matches!(cur.peek_at(1), Tok::Ident(s) if s == "t")) {
            return Ok((c, Rat::zero()));
        }
        cur.bump();
        c
    } else {
        Rat::one()
    };
    if !cur.is_ident("t") {
        return Err(cur.error("expected `t` or a number"));
    }
    cur.bump();
    let exp = if cur.eat_sym("^") { parse_exponent(cur)? } else { Rat::one() };
    Ok((coef, exp))
}

/// `['-'] int | '(' ['-'] int ['/' int] ')'`.
fn parse_exponent(cur: &mut Cursor) -> Result<Rat> {
    if cur.eat_sym("(") {
        let e = cur.rational()?;
        cur.expect_sym(")")?;
        Ok(e)
    } else {
        let neg = cur.eat_sym("-");
        let pos = cur.pos();
        let e = match cur.bump() {
            Tok::Int(n) => Rat::from_bigs(n, 1.into()),
            _ => return Err(Error::syntax(pos, "expected an exponent")),
        };
        Ok(if neg { -e } else { e })
    }
}

/// `leading · Π (x − a)^m` with pairwise distinct roots `a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactoredPoly {
    leading: Rat,
    roots: Vec<(PuiseuxElement, u32)>,
}

impl FactoredPoly {
    /// Repeated roots are merged; zero multiplicities are dropped. A zero
    /// leading coefficient is rejected.
    pub fn new(leading: Rat, roots: impl IntoIterator<Item = (PuiseuxElement, u32)>) -> Result<Self> {
        if leading.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rs: Vec<(PuiseuxElement, u32)> = roots.into_iter().filter(|r| r.1 > 0).collect();
        rs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(PuiseuxElement, u32)> = Vec::with_capacity(rs.len());
        for (a, m) in rs {
            match merged.last_mut() {
                Some(last) if last.0 == a => last.1 += m,
                _ => merged.push((a, m)),
            }
        }
        Ok(FactoredPoly { leading, roots: merged })
    }

    /// `x − a`.
    pub fn linear(a: PuiseuxElement) -> Self {
        FactoredPoly { leading: Rat::one(), roots: vec![(a, 1)] }
    }

    pub fn leading(&self) -> &Rat {
        &self.leading
    }

    pub fn roots(&self) -> &[(PuiseuxElement, u32)] {
        &self.roots
    }

    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|r| r.1).sum()
    }

    pub fn is_root(&self, x: &PuiseuxElement) -> bool {
        self.roots.iter().any(|(a, _)| a == x)
    }

    /// `v(f(x))` from the factorization: `Σ m·v(x − a)`, the leading
    /// coefficient being a nonzero rational of valuation 0.
    pub fn valuation_at(&self, x: &PuiseuxElement) -> Valuation {
        let mut acc = Rat::zero();
        for (a, m) in &self.roots {
            match (x - a).valuation() {
                Valuation::Infinite => return Valuation::Infinite,
                Valuation::Finite(v) => acc += &v.mul_int(*m as i64),
            }
        }
        Valuation::Finite(acc)
    }

    /// Image under `x ↦ x − s`: every root moves to `a − s`.
    pub fn translated(&self, s: &PuiseuxElement) -> Self {
        let roots = self.roots.iter().map(|(a, m)| (a - s, *m));
        Self::new(self.leading.clone(), roots).expect("nonzero leading coefficient")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let p = parse_poly(&mut cur)?;
        cur.expect_end()?;
        Ok(p)
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let lead_shown = self.leading != Rat::one() || self.roots.is_empty();
        if lead_shown {
            if self.leading.signum() < 0 && !self.roots.is_empty() {
                // a leading sign would parse as part of a linear expression
                write!(f, "({})", self.leading)?;
            } else {
                write!(f, "{}", self.leading)?;
            }
            first = false;
        }
        for (a, m) in &self.roots {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a.is_zero() {
                f.write_str("x")?;
            } else {
                f.write_str("(x")?;
                write_tail(f, &-a)?;
                f.write_str(")")?;
            }
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FactoredPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FactoredPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FactoredPoly::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// `pfactor ('*' pfactor)*` where a factor is a rational (possibly
/// parenthesized and signed), `x ['^' int]` or `'(' 'x' tail ')' ['^' int]`;
/// or a lone unparenthesized `x tail`.
pub(crate) fn parse_poly(cur: &mut Cursor) -> Result<FactoredPoly> {
    let mut leading = Rat::one();
    let mut roots = Vec::new();
    loop {
        if matches!(cur.peek(), Tok::Int(_)) {
            leading = leading * cur.unsigned_rational()?;
        } else if cur.is_ident("x") {
            cur.bump();
            let bare = roots.is_empty() && leading == Rat::one();
            if bare && (cur.is_sym("+") || cur.is_sym("-")) && starts_pterm(cur.peek_at(1)) {
                // a lone linear factor may omit its parentheses: `x - a`
                let root = -&parse_puiseux(cur)?;
                return FactoredPoly::new(leading, [(root, 1)]);
            }
            roots.push((PuiseuxElement::zero(), parse_mult(cur)?));
        } else if cur.is_sym("(") && matches!(cur.peek_at(1), Tok::Ident(s) if s == "x") {
            cur.bump();
            cur.bump();
            let root = if cur.is_sym(")") {
                PuiseuxElement::zero()
            } else {
                if !(cur.is_sym("+") || cur.is_sym("-")) {
                    return Err(cur.error("expected `+` or `-`"));
                }
                -&parse_puiseux(cur)?
            };
            cur.expect_sym(")")?;
            roots.push((root, parse_mult(cur)?));
        } else if cur.is_sym("(") {
            cur.bump();
            leading = leading * cur.rational()?;
            cur.expect_sym(")")?;
        } else {
            return Err(cur.error("expected a polynomial factor"));
        }
        if !(cur.is_sym("*") && starts_factor(cur.peek_at(1))) {
            break;
        }
        cur.bump();
    }
    FactoredPoly::new(leading, roots)
}

fn starts_factor(t: &Tok) -> bool {
    matches!(t, Tok::Int(_)) || matches!(t, Tok::Ident(s) if s == "x") || *t == Tok::Sym("(")
}

fn parse_mult(cur: &mut Cursor) -> Result<u32> {
    if !cur.eat_sym("^") {
        return Ok(1);
    }
    let pos = cur.pos();
    match cur.bump() {
        Tok::Int(n) => u32::try_from(n).map_err(|_| Error::syntax(pos, "multiplicity too large")),
        _ => Err(Error::syntax(pos, "expected a multiplicity")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PuiseuxElement {
        PuiseuxElement::parse(s).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(p("2*t^(1/2) + t").valuation(), Valuation::Finite(Rat::new(1, 2)));
        assert_eq!(PuiseuxElement::zero().valuation(), Valuation::Infinite);
        assert_eq!(p("t^-1 + 1").valuation(), Valuation::Finite(Rat::from_int(-1)));
        assert_eq!((&p("1 + t") - &p("1")).valuation(), Valuation::Finite(Rat::one()));
        assert!((&p("t") - &p("t")).is_zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "-1/2*t^(1/3) + t - 2*t^5", "t^-1 + 1", "3*t^(-1/2)"] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
        }
        assert_eq!(p("-t + 2*t^(1/2)").to_string(), "2*t^(1/2) - t");
    }

    #[test]
    fn arithmetic() {
        let a = p("1 + t");
        let b = p("1 - t");
        assert_eq!(&a * &b, p("1 - t^2"));
        assert!(p("0") < p("t") && p("t") < p("2*t"));
    }

    #[test]
    fn polys() {
        let f = FactoredPoly::parse("x*(x - t)").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.roots()[1].0, p("t"));
        let g = FactoredPoly::parse("(x - 1 - t)^2*3").unwrap();
        assert_eq!(g.roots(), &[(p("1 + t"), 2)]);
        assert_eq!(g.leading(), &Rat::from_int(3));
        let h = FactoredPoly::parse("(-2)*(x + t^(1/2))").unwrap();
        assert_eq!(FactoredPoly::parse(&h.to_string()).unwrap(), h);
        assert_eq!(FactoredPoly::parse(&g.to_string()).unwrap(), g);
        assert_eq!(f.valuation_at(&p("t^2")), Valuation::Finite(Rat::from_int(3)));
        assert_eq!(f.valuation_at(&p("t")), Valuation::Infinite);
        assert!(matches!(FactoredPoly::new(Rat::zero(), []), Err(Error::ZeroPolynomial)));
        assert_eq!(FactoredPoly::parse("x^2*x").unwrap().roots(), &[(p("0"), 3)]);
    }
}
