use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

use super::atom::{LinearAtom, Normalized};

/// Boolean combination of linear atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    True,
    False,
    Atom(LinearAtom),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn from_normalized(n: Normalized) -> Expr {
        match n {
            Normalized::Atom(a) => Expr::Atom(a),
            Normalized::Const(true) => Expr::True,
            Normalized::Const(false) => Expr::False,
        }
    }

    pub fn not(e: Expr) -> Expr {
        match e {
            Expr::True => Expr::False,
            Expr::False => Expr::True,
            Expr::Not(inner) => *inner,
            other => Expr::Not(Box::new(other)),
        }
    }

    pub fn and(parts: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Expr::True => {}
                Expr::False => return Expr::False,
                Expr::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Expr::True,
            1 => out.pop().unwrap(),
            _ => Expr::And(out),
        }
    }

    pub fn or(parts: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Expr::False => {}
                Expr::True => return Expr::True,
                Expr::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Expr::False,
            1 => out.pop().unwrap(),
            _ => Expr::Or(out),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> bool {
        match self {
            Expr::True => true,
            Expr::False => false,
            Expr::Atom(a) => a.eval(point),
            Expr::Not(e) => !e.eval(point),
            Expr::And(es) => es.iter().all(|e| e.eval(point)),
            Expr::Or(es) => es.iter().any(|e| e.eval(point)),
        }
    }

    pub fn atoms(&self) -> Vec<&LinearAtom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a LinearAtom>) {
        match self {
            Expr::Atom(a) => out.push(a),
            Expr::Not(e) => e.collect_atoms(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.collect_atoms(out)),
            Expr::True | Expr::False => {}
        }
    }

    /// Rewrites every atom.
    pub fn map_atoms(&self, f: &mut impl FnMut(&LinearAtom) -> Expr) -> Expr {
        match self {
            Expr::True => Expr::True,
            Expr::False => Expr::False,
            Expr::Atom(a) => f(a),
            Expr::Not(e) => Expr::not(e.map_atoms(f)),
            Expr::And(es) => Expr::and(es.iter().map(|e| e.map_atoms(f)).collect()),
            Expr::Or(es) => Expr::or(es.iter().map(|e| e.map_atoms(f)).collect()),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec: 0 = top, 1 = inside `|`, 2 = inside `&`, 3 = operand of `!`
        match self {
            Expr::True => f.write_str("true"),
            Expr::False => f.write_str("false"),
            Expr::Atom(a) => {
                if prec >= 3 {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
            Expr::Not(e) => {
                f.write_str("!")?;
                e.fmt_prec(f, 3)
            }
            Expr::And(es) => {
                if prec >= 3 {
                    f.write_str("(")?;
                }
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    e.fmt_prec(f, 2)?;
                }
                if prec >= 3 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Expr::Or(es) => {
                if prec >= 2 {
                    f.write_str("(")?;
                }
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    e.fmt_prec(f, 1)?;
                }
                if prec >= 2 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A Γ-sort definable subset of ℚⁿ: a Boolean combination of linear atoms in
/// the fixed variables `x1..xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaFormula {
    nvars: usize,
    expr: Expr,
}

impl GammaFormula {
    pub fn new(nvars: usize, expr: Expr) -> Result<Self> {
        if let Some(a) = expr.atoms().into_iter().find(|a| a.nvars() != nvars) {
            return Err(Error::Arity { expected: nvars, found: a.nvars() });
        }
        Ok(GammaFormula { nvars, expr })
    }

    pub(crate) fn new_unchecked(nvars: usize, expr: Expr) -> Self {
        debug_assert!(expr.atoms().iter().all(|a| a.nvars() == nvars));
        GammaFormula { nvars, expr }
    }

    pub fn top(nvars: usize) -> Self {
        GammaFormula { nvars, expr: Expr::True }
    }

    pub fn bottom(nvars: usize) -> Self {
        GammaFormula { nvars, expr: Expr::False }
    }

    pub fn conjunction(nvars: usize, atoms: impl IntoIterator<Item = LinearAtom>) -> Result<Self> {
        Self::new(nvars, Expr::and(atoms.into_iter().map(Expr::Atom).collect()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn eval(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.nvars, "point dimension");
        self.expr.eval(point)
    }

    pub fn and(&self, other: &GammaFormula) -> GammaFormula {
        assert_eq!(self.nvars, other.nvars, "arity");
        GammaFormula {
            nvars: self.nvars,
            expr: Expr::and(vec![self.expr.clone(), other.expr.clone()]),
        }
    }

    pub fn or(&self, other: &GammaFormula) -> GammaFormula {
        assert_eq!(self.nvars, other.nvars, "arity");
        GammaFormula {
            nvars: self.nvars,
            expr: Expr::or(vec![self.expr.clone(), other.expr.clone()]),
        }
    }

    pub fn negate(&self) -> GammaFormula {
        GammaFormula { nvars: self.nvars, expr: Expr::not(self.expr.clone()) }
    }

    /// Re-index into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> GammaFormula {
        assert_eq!(map.len(), self.nvars);
        let expr = self.expr.map_atoms(&mut |a| Expr::Atom(a.embed(nvars, map)));
        GammaFormula { nvars, expr }
    }

    /// Cartesian product: `self` on the first block of variables, `other`
    /// on the second.
    pub fn product(&self, other: &GammaFormula) -> GammaFormula {
        let n = self.nvars + other.nvars;
        let left: Vec<usize> = (0..self.nvars).collect();
        let right: Vec<usize> = (self.nvars..n).collect();
        let a = self.embed(n, &left);
        let b = other.embed(n, &right);
        a.and(&b)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for GammaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}
