//! Formulas in one valued-field variable `x` and Γ-variables `g1..gn`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::semilinear::{Expr, GammaFormula, LinearAtom, Normalized, Rel};

use super::pieces::{monomial_valuation, MonomialValuation, SwissPiece};
use super::puiseux::{FactoredPoly, PuiseuxElement, Valuation};

/// An atom of a mixed formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MixedAtom {
    /// `Σ w·v(f(x)) + Σ aᵢ·gᵢ REL rhs`.
    Val { terms: Vec<(i64, FactoredPoly)>, gamma: Vec<i64>, rel: Rel, rhs: Rat },
    /// `f(x) = 0`.
    Zero(FactoredPoly),
}

impl MixedAtom {
    /// Merges repeated polynomials and drops zero weights; an atom with no
    /// variable left is evaluated.
    pub fn val(terms: Vec<(i64, FactoredPoly)>, gamma: Vec<i64>, rel: Rel, rhs: Rat) -> MixedExpr {
        let mut merged: BTreeMap<FactoredPoly, i64> = BTreeMap::new();
        for (w, f) in terms {
            *merged.entry(f).or_insert(0) += w;
        }
        let terms: Vec<(i64, FactoredPoly)> =
            merged.into_iter().filter(|(_, w)| *w != 0).map(|(f, w)| (w, f)).collect();
        if terms.is_empty() && gamma.iter().all(|&a| a == 0) {
            return MixedExpr::from_bool(rel.holds(&Rat::zero(), &rhs));
        }
        MixedExpr::Atom(MixedAtom::Val { terms, gamma, rel, rhs })
    }

    fn polys(&self) -> Vec<&FactoredPoly> {
        match self {
            MixedAtom::Val { terms, .. } => terms.iter().map(|t| &t.1).collect(),
            MixedAtom::Zero(f) => vec![f],
        }
    }

    pub fn eval(&self, x: &PuiseuxElement, gamma: &[Rat]) -> bool {
        match self {
            MixedAtom::Zero(f) => f.is_root(x),
            MixedAtom::Val { terms, gamma: a, rel, rhs } => {
                let mut lhs = Rat::zero();
                let mut inf = InfSign::None;
                for (w, f) in terms {
                    match f.valuation_at(x) {
                        Valuation::Finite(v) => lhs += &v.mul_int(*w),
                        Valuation::Infinite => inf = inf.with(*w),
                    }
                }
                for (c, g) in a.iter().zip(gamma) {
                    lhs += &g.mul_int(*c);
                }
                match inf {
                    InfSign::None => rel.holds(&lhs, rhs),
                    other => other.decide(*rel),
                }
            }
        }
    }
}

/// Sign of the infinite part of a left-hand side.
#[derive(Clone, Copy, PartialEq, Eq)]
enum InfSign {
    None,
    Pos,
    Neg,
    Mixed,
}

impl InfSign {
    fn with(self, w: i64) -> InfSign {
        let s = if w > 0 { InfSign::Pos } else { InfSign::Neg };
        match self {
            InfSign::None => s,
            cur if cur == s => cur,
            _ => InfSign::Mixed,
        }
    }

    /// `+∞ REL q` is false for every relation; `−∞ < q` and `−∞ ≤ q` hold;
    /// an undefined `∞ − ∞` makes the atom false.
    fn decide(self, rel: Rel) -> bool {
        match self {
            InfSign::Neg => rel != Rel::Eq,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MixedExpr {
    True,
    False,
    Atom(MixedAtom),
    Not(Box<MixedExpr>),
    And(Vec<MixedExpr>),
    Or(Vec<MixedExpr>),
}

impl MixedExpr {
    pub fn from_bool(b: bool) -> MixedExpr {
        if b {
            MixedExpr::True
        } else {
            MixedExpr::False
        }
    }

    pub fn not(e: MixedExpr) -> MixedExpr {
        match e {
            MixedExpr::True => MixedExpr::False,
            MixedExpr::False => MixedExpr::True,
            MixedExpr::Not(inner) => *inner,
            other => MixedExpr::Not(Box::new(other)),
        }
    }

    pub fn and(parts: Vec<MixedExpr>) -> MixedExpr {
        let mut out = Vec::new();
        for p in parts {
            match p {
                MixedExpr::True => {}
                MixedExpr::False => return MixedExpr::False,
                MixedExpr::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => MixedExpr::True,
            1 => out.pop().unwrap(),
            _ => MixedExpr::And(out),
        }
    }

    pub fn or(parts: Vec<MixedExpr>) -> MixedExpr {
        let mut out = Vec::new();
        for p in parts {
            match p {
                MixedExpr::False => {}
                MixedExpr::True => return MixedExpr::True,
                MixedExpr::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => MixedExpr::False,
            1 => out.pop().unwrap(),
            _ => MixedExpr::Or(out),
        }
    }

    fn eval(&self, x: &PuiseuxElement, gamma: &[Rat]) -> bool {
        match self {
            MixedExpr::True => true,
            MixedExpr::False => false,
            MixedExpr::Atom(a) => a.eval(x, gamma),
            MixedExpr::Not(e) => !e.eval(x, gamma),
            MixedExpr::And(es) => es.iter().all(|e| e.eval(x, gamma)),
            MixedExpr::Or(es) => es.iter().any(|e| e.eval(x, gamma)),
        }
    }

    fn atoms<'a>(&'a self, out: &mut Vec<&'a MixedAtom>) {
        match self {
            MixedExpr::Atom(a) => out.push(a),
            MixedExpr::Not(e) => e.atoms(out),
            MixedExpr::And(es) | MixedExpr::Or(es) => es.iter().for_each(|e| e.atoms(out)),
            MixedExpr::True | MixedExpr::False => {}
        }
    }

    /// Rewrites every atom.
    pub fn map_atoms(&self, f: &mut impl FnMut(&MixedAtom) -> MixedExpr) -> MixedExpr {
        match self {
            MixedExpr::True => MixedExpr::True,
            MixedExpr::False => MixedExpr::False,
            MixedExpr::Atom(a) => f(a),
            MixedExpr::Not(e) => MixedExpr::not(e.map_atoms(f)),
            MixedExpr::And(es) => MixedExpr::and(es.iter().map(|e| e.map_atoms(f)).collect()),
            MixedExpr::Or(es) => MixedExpr::or(es.iter().map(|e| e.map_atoms(f)).collect()),
        }
    }

    fn to_gamma(&self, f: &mut impl FnMut(&MixedAtom) -> Expr) -> Expr {
        match self {
            MixedExpr::True => Expr::True,
            MixedExpr::False => Expr::False,
            MixedExpr::Atom(a) => f(a),
            MixedExpr::Not(e) => Expr::not(e.to_gamma(f)),
            MixedExpr::And(es) => Expr::and(es.iter().map(|e| e.to_gamma(f)).collect()),
            MixedExpr::Or(es) => Expr::or(es.iter().map(|e| e.to_gamma(f)).collect()),
        }
    }
}

/// A definable subset of `K × Γⁿ` in the one-variable fragment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedFormula {
    ngamma: usize,
    expr: MixedExpr,
}

impl MixedFormula {
    pub fn new(ngamma: usize, expr: MixedExpr) -> Result<Self> {
        let mut atoms = Vec::new();
        expr.atoms(&mut atoms);
        for a in atoms {
            if let MixedAtom::Val { gamma, .. } = a {
                if gamma.len() != ngamma {
                    return Err(Error::Arity { expected: ngamma, found: gamma.len() });
                }
            }
        }
        Ok(MixedFormula { ngamma, expr })
    }

    pub fn ngamma(&self) -> usize {
        self.ngamma
    }

    pub fn expr(&self) -> &MixedExpr {
        &self.expr
    }

    pub fn eval(&self, x: &PuiseuxElement, gamma: &[Rat]) -> bool {
        assert_eq!(gamma.len(), self.ngamma, "point dimension");
        self.expr.eval(x, gamma)
    }

    /// Distinct polynomials occurring in the formula, sorted.
    pub fn polys(&self) -> Vec<FactoredPoly> {
        let mut atoms = Vec::new();
        self.expr.atoms(&mut atoms);
        let mut out: Vec<FactoredPoly> = atoms.iter().flat_map(|a| a.polys()).cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn and(&self, other: &MixedFormula) -> MixedFormula {
        assert_eq!(self.ngamma, other.ngamma, "arity");
        MixedFormula { ngamma: self.ngamma, expr: MixedExpr::and(vec![self.expr.clone(), other.expr.clone()]) }
    }

    pub fn or(&self, other: &MixedFormula) -> MixedFormula {
        assert_eq!(self.ngamma, other.ngamma, "arity");
        MixedFormula { ngamma: self.ngamma, expr: MixedExpr::or(vec![self.expr.clone(), other.expr.clone()]) }
    }

    pub fn negate(&self) -> MixedFormula {
        MixedFormula { ngamma: self.ngamma, expr: MixedExpr::not(self.expr.clone()) }
    }

    /// `S × T` for `T ⊂ Γᵏ`: the new Γ-variables follow the old ones.
    pub fn product_gamma(&self, t: &GammaFormula) -> MixedFormula {
        let n = self.ngamma + t.nvars();
        let widened = self.expr.map_atoms(&mut |a| match a {
            MixedAtom::Val { terms, gamma, rel, rhs } => {
                let mut g = gamma.clone();
                g.resize(n, 0);
                MixedExpr::Atom(MixedAtom::Val { terms: terms.clone(), gamma: g, rel: *rel, rhs: rhs.clone() })
            }
            z => MixedExpr::Atom(z.clone()),
        });
        let shifted = gamma_expr_to_mixed(t.expr(), n, self.ngamma);
        MixedFormula { ngamma: n, expr: MixedExpr::and(vec![widened, shifted]) }
    }

    /// The Γ-formula this formula becomes on `piece`, over `(ρ, g1..gn)` with
    /// the piece's radius condition, or over `g1..gn` for a point piece.
    pub fn on_piece(&self, piece: &SwissPiece) -> GammaFormula {
        let linked = piece.k_dimension() == 1;
        let off = linked as usize;
        let nvars = self.ngamma + off;
        let mut cache: BTreeMap<FactoredPoly, MonomialValuation> = BTreeMap::new();
        let mut subst = |a: &MixedAtom| -> Expr {
            match a {
                MixedAtom::Zero(f) => Expr::from_normalized(Normalized::Const(match piece {
                    SwissPiece::Point { center } => f.is_root(center),
                    // every root is a center, so no other piece meets a zero set
                    _ => false,
                })),
                MixedAtom::Val { terms, gamma, rel, rhs } => {
                    let mut coeffs = vec![0i64; nvars];
                    let mut rhs = rhs.clone();
                    let mut inf = InfSign::None;
                    for (w, f) in terms {
                        let mv = cache.entry(f.clone()).or_insert_with(|| monomial_valuation(f, piece));
                        match mv {
                            MonomialValuation::Infinite => inf = inf.with(*w),
                            MonomialValuation::Affine { constant, slope } => {
                                rhs -= &constant.mul_int(*w);
                                if linked {
                                    coeffs[0] += w * *slope as i64;
                                }
                            }
                        }
                    }
                    if inf != InfSign::None {
                        return Expr::from_normalized(Normalized::Const(inf.decide(*rel)));
                    }
                    for (i, c) in gamma.iter().enumerate() {
                        coeffs[off + i] += c;
                    }
                    Expr::from_normalized(LinearAtom::new(coeffs, *rel, rhs))
                }
            }
        };
        let body = self.expr.to_gamma(&mut subst);
        let radius = match piece {
            SwissPiece::Point { .. } => vec![],
            SwissPiece::Annulus { lo, hi, .. } => {
                let mut v = Vec::new();
                if let Some(lo) = lo {
                    v.push(rho_atom(nvars, -1, Rel::Lt, -lo));
                }
                if let Some(hi) = hi {
                    v.push(rho_atom(nvars, 1, Rel::Lt, hi.clone()));
                }
                v
            }
            SwissPiece::Sphere { radius, .. } => vec![rho_atom(nvars, 1, Rel::Eq, radius.clone())],
        };
        let mut parts: Vec<Expr> = radius.into_iter().map(Expr::Atom).collect();
        parts.push(body);
        GammaFormula::new(nvars, Expr::and(parts)).expect("arity is consistent")
    }
}

fn rho_atom(nvars: usize, c: i64, rel: Rel, rhs: Rat) -> LinearAtom {
    let mut coeffs = vec![0; nvars];
    coeffs[0] = c;
    LinearAtom::nonconstant(coeffs, rel, rhs)
}

/// A Γ-expression as a mixed expression over `n` Γ-variables, its variable
/// `i` becoming `g(offset + i)`.
pub fn gamma_expr_to_mixed(e: &Expr, n: usize, offset: usize) -> MixedExpr {
    match e {
        Expr::True => MixedExpr::True,
        Expr::False => MixedExpr::False,
        Expr::Atom(a) => {
            let mut gamma = vec![0; n];
            for (i, c) in a.coeffs().iter().enumerate() {
                gamma[offset + i] = *c;
            }
            MixedAtom::val(vec![], gamma, a.rel(), a.rhs().clone())
        }
        Expr::Not(inner) => MixedExpr::not(gamma_expr_to_mixed(inner, n, offset)),
        Expr::And(es) => MixedExpr::and(es.iter().map(|x| gamma_expr_to_mixed(x, n, offset)).collect()),
        Expr::Or(es) => MixedExpr::or(es.iter().map(|x| gamma_expr_to_mixed(x, n, offset)).collect()),
    }
}

impl fmt::Display for MixedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedAtom::Zero(p) => write!(f, "{p} = 0"),
            MixedAtom::Val { terms, gamma, rel, rhs } => {
                let mut first = true;
                for (w, p) in terms {
                    let mag = w.unsigned_abs();
                    match (first, *w < 0) {
                        (true, true) => f.write_str("-")?,
                        (true, false) => {}
                        (false, true) => f.write_str(" - ")?,
                        (false, false) => f.write_str(" + ")?,
                    }
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "v({p})")?;
                    first = false;
                }
                for (i, &c) in gamma.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mag = c.unsigned_abs();
                    match (first, c < 0) {
                        (true, true) => f.write_str("-")?,
                        (true, false) => {}
                        (false, true) => f.write_str(" - ")?,
                        (false, false) => f.write_str(" + ")?,
                    }
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "g{}", i + 1)?;
                    first = false;
                }
                write!(f, " {} {}", rel.symbol(), rhs)
            }
        }
    }
}

impl MixedExpr {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let (sep, own) = match self {
            MixedExpr::True => return f.write_str("true"),
            MixedExpr::False => return f.write_str("false"),
            MixedExpr::Atom(a) => {
                return if prec >= 3 { write!(f, "({a})") } else { write!(f, "{a}") };
            }
            MixedExpr::Not(e) => {
                f.write_str("!")?;
                return e.fmt_prec(f, 3);
            }
            MixedExpr::And(_) => (" & ", 2),
            MixedExpr::Or(_) => (" | ", 1),
        };
        let es = match self {
            MixedExpr::And(es) | MixedExpr::Or(es) => es,
            _ => unreachable!(),
        };
        let paren = prec > own;
        if paren {
            f.write_str("(")?;
        }
        for (i, e) in es.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            e.fmt_prec(f, own)?;
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for MixedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for MixedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}
