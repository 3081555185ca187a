//! Parser for the Γ-formula DSL.
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | 'exists' var (',' var)* '(' formula ')'
//!          | '(' formula ')' | 'true' | 'false' | chain
//! chain   := linexpr (REL linexpr)+          REL ∈ < <= = >= > !=
//! linexpr := ['-'] term (('+' | '-') term)*
//! term    := ['-'] (int ['/' int] ['*' var] | var)
//! var     := 'x' index                        index ≥ 1
//! ```

use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::rat::Rat;

use super::atom::{LinearAtom, Rel};
use super::fm;
use super::formula::{Expr, GammaFormula};

/// Parses a formula whose arity is the largest variable index used.
pub fn parse_formula(text: &str) -> Result<GammaFormula> {
    parse_with(text, None)
}

/// Parses a formula over exactly `nvars` variables.
pub fn parse_formula_n(text: &str, nvars: usize) -> Result<GammaFormula> {
    parse_with(text, Some(nvars))
}

fn parse_with(text: &str, nvars: Option<usize>) -> Result<GammaFormula> {
    let mut p = Parser { cur: Cursor::new(text)?, max_var: 0 };
    let ast = p.or()?;
    p.cur.expect_end()?;
    let n = match nvars {
        Some(n) if p.max_var > n => return Err(Error::Arity { expected: n, found: p.max_var }),
        Some(n) => n,
        None => p.max_var,
    };
    Ok(GammaFormula::new_unchecked(n, lower(&ast, n)))
}

/// Raw linear relation `Σ c·x REL q` before normalization; `Ne` survives
/// until lowering.
#[derive(Debug, Clone)]
struct RawAtom {
    coeffs: Vec<(usize, i64)>,
    rel: RawRel,
    rhs: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RawRel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

#[derive(Debug, Clone)]
enum Ast {
    Bool(bool),
    Atom(RawAtom),
    Not(Box<Ast>),
    And(Vec<Ast>),
    Or(Vec<Ast>),
    Exists(Vec<usize>, Box<Ast>),
}

struct Parser {
    cur: Cursor,
    max_var: usize,
}

#[derive(Default)]
struct Lin {
    coeffs: Vec<(usize, i64)>,
    constant: Rat,
}

impl Parser {
    fn or(&mut self) -> Result<Ast> {
        let mut parts = vec![self.and()?];
        while self.cur.eat_sym("|") {
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::Or(parts) })
    }

    fn and(&mut self) -> Result<Ast> {
        let mut parts = vec![self.unary()?];
        while self.cur.eat_sym("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::And(parts) })
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.cur.eat_sym("!") {
            return Ok(Ast::Not(Box::new(self.unary()?)));
        }
        if self.cur.eat_sym("(") {
            let inner = self.or()?;
            self.cur.expect_sym(")")?;
            return Ok(inner);
        }
        if self.cur.is_ident("exists") {
            self.cur.bump();
            let mut vars = vec![self.var()?];
            while self.cur.eat_sym(",") {
                vars.push(self.var()?);
            }
            self.cur.expect_sym("(")?;
            let inner = self.or()?;
            self.cur.expect_sym(")")?;
            return Ok(Ast::Exists(vars, Box::new(inner)));
        }
        if self.cur.is_ident("true") {
            self.cur.bump();
            return Ok(Ast::Bool(true));
        }
        if self.cur.is_ident("false") {
            self.cur.bump();
            return Ok(Ast::Bool(false));
        }
        self.chain()
    }

    fn chain(&mut self) -> Result<Ast> {
        let mut left = self.linexpr()?;
        let mut atoms = Vec::new();
        while let Some(rel) = self.rel() {
            let right = self.linexpr()?;
            atoms.push(Ast::Atom(raw_atom(&left, rel, &right)));
            left = right;
        }
        if atoms.is_empty() {
            return Err(self.cur.error("expected a relation"));
        }
        Ok(if atoms.len() == 1 { atoms.pop().unwrap() } else { Ast::And(atoms) })
    }

    fn rel(&mut self) -> Option<RawRel> {
        let r = match self.cur.peek() {
            Tok::Sym("<") => RawRel::Lt,
            Tok::Sym("<=") => RawRel::Le,
            Tok::Sym("=") => RawRel::Eq,
            Tok::Sym(">=") => RawRel::Ge,
            Tok::Sym(">") => RawRel::Gt,
            Tok::Sym("!=") => RawRel::Ne,
            _ => return None,
        };
        self.cur.bump();
        Some(r)
    }

    fn linexpr(&mut self) -> Result<Lin> {
        let mut lin = Lin::default();
        let mut sign = if self.cur.eat_sym("-") {
            -1
        } else {
            self.cur.eat_sym("+");
            1
        };
        loop {
            self.term(sign, &mut lin)?;
            if self.cur.eat_sym("+") {
                sign = 1;
            } else if self.cur.eat_sym("-") {
                sign = -1;
            } else {
                return Ok(lin);
            }
        }
    }

    fn term(&mut self, sign: i64, lin: &mut Lin) -> Result<()> {
        let sign = if self.cur.eat_sym("-") { -sign } else { sign };
        let pos = self.cur.pos();
        if matches!(self.cur.peek(), Tok::Int(_)) {
            let value = self.cur.unsigned_rational()?;
            if self.cur.eat_sym("*") {
                let v = self.var()?;
                let c = value.to_i64().ok_or(Error::NonIntegerCoefficient { pos })?;
                lin.coeffs.push((v, sign * c));
            } else {
                lin.constant += &value.mul_int(sign);
            }
            return Ok(());
        }
        let v = self.var()?;
        lin.coeffs.push((v, sign));
        Ok(())
    }

    fn var(&mut self) -> Result<usize> {
        let pos = self.cur.pos();
        let name = match self.cur.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.cur.error("expected a variable")),
        };
        let index = name
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or(Error::UnknownVariable { pos, name })?;
        self.cur.bump();
        self.max_var = self.max_var.max(index);
        Ok(index - 1)
    }
}

fn raw_atom(left: &Lin, rel: RawRel, right: &Lin) -> RawAtom {
    let mut coeffs = left.coeffs.clone();
    coeffs.extend(right.coeffs.iter().map(|&(v, c)| (v, -c)));
    RawAtom { coeffs, rel, rhs: &right.constant - &left.constant }
}

fn lower_atom(a: &RawAtom, n: usize) -> Expr {
    let mut dense = vec![0i64; n];
    for &(v, c) in &a.coeffs {
        dense[v] += c;
    }
    let neg: Vec<i64> = dense.iter().map(|c| -c).collect();
    let mk = |c: Vec<i64>, rel: Rel, r: Rat| Expr::from_normalized(LinearAtom::new(c, rel, r));
    match a.rel {
        RawRel::Lt => mk(dense, Rel::Lt, a.rhs.clone()),
        RawRel::Le => mk(dense, Rel::Le, a.rhs.clone()),
        RawRel::Eq => mk(dense, Rel::Eq, a.rhs.clone()),
        RawRel::Gt => mk(neg, Rel::Lt, -&a.rhs),
        RawRel::Ge => mk(neg, Rel::Le, -&a.rhs),
        RawRel::Ne => Expr::not(mk(dense, Rel::Eq, a.rhs.clone())),
    }
}

fn lower(ast: &Ast, n: usize) -> Expr {
    match ast {
        Ast::Bool(true) => Expr::True,
        Ast::Bool(false) => Expr::False,
        Ast::Atom(a) => lower_atom(a, n),
        Ast::Not(inner) => Expr::not(lower(inner, n)),
        Ast::And(parts) => Expr::and(parts.iter().map(|p| lower(p, n)).collect()),
        Ast::Or(parts) => Expr::or(parts.iter().map(|p| lower(p, n)).collect()),
        Ast::Exists(vars, inner) => {
            let body = GammaFormula::new_unchecked(n, lower(inner, n));
            fm::eliminate(&body, vars).expr().clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let f = parse_formula("x1 < x2 & x2 <= 1").unwrap();
        assert_eq!(f.nvars(), 2);
        assert!(matches!(f.expr(), Expr::And(v) if v.len() == 2));
        let g = parse_formula("!(2*x1 - x2 = 0)").unwrap();
        assert!(matches!(g.expr(), Expr::Not(_)));
        let h = parse_formula("x1 < 1 | x1 > 3").unwrap();
        assert!(matches!(h.expr(), Expr::Or(_)));
        let c = parse_formula("0 < x1 < 1").unwrap();
        assert!(c.eval(&[Rat::new(1, 2)]) && !c.eval(&[Rat::one()]));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_formula("x1 <"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("y < 1"), Err(Error::UnknownVariable { pos: 0, .. })));
        assert!(matches!(
            parse_formula("1/2*x1 < 1"),
            Err(Error::NonIntegerCoefficient { pos: 0 })
        ));
        assert!(matches!(parse_formula_n("x3 < 1", 2), Err(Error::Arity { .. })));
        assert!(matches!(parse_formula("x1 < 1 )"), Err(Error::Syntax { pos: 7, .. })));
    }

    #[test]
    fn exists_sugar() {
        let f = parse_formula("exists x2 (x1 < x2 & x2 < 1)").unwrap();
        assert_eq!(f.nvars(), 2);
        assert!(f.eval(&[Rat::new(1, 2), Rat::from_int(100)]));
        assert!(!f.eval(&[Rat::one(), Rat::zero()]));
    }

    #[test]
    fn display_reparses() {
        let f = parse_formula("!(x1 < 0 & x2 >= 1/2) | x1 = x2").unwrap();
        let g = parse_formula_n(&f.to_string(), 2).unwrap();
        assert_eq!(f, g);
    }
}
