//! Parser for mixed formulas.
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | poly ('=' | '!=') '0' | '(' formula ')'
//!          | 'true' | 'false' | chain
//! chain   := linexpr (REL linexpr)+             REL ∈ < <= = >= > !=
//! linexpr := ['-'] term (('+' | '-') term)*
//! term    := int ['/' int] ['*' item] | item
//! item    := 'v' '(' poly ')' | 'g' index
//! poly    := factor ('*' factor)* | 'x' ('+' | '-') puiseux
//! factor  := int ['/' int] | '(' rational ')' | 'x' ['^' int]
//!          | '(' 'x' ('+' | '-') puiseux ')' ['^' int]
//! puiseux := ['-'] pterm (('+' | '-') pterm)*
//! pterm   := int ['/' int] ['*' 't' ['^' exp]] | 't' ['^' exp]
//! exp     := ['-'] int | '(' ['-'] int ['/' int] ')'
//! ```

use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::rat::Rat;
use crate::semilinear::Rel;

use super::formula::{MixedAtom, MixedExpr, MixedFormula};
use super::puiseux::{parse_poly, FactoredPoly};

/// Parses a mixed formula; the number of Γ-variables is the largest index
/// used.
pub fn parse_mixed(text: &str) -> Result<MixedFormula> {
    parse_with(text, None)
}

/// Parses a mixed formula over exactly `ngamma` Γ-variables.
pub fn parse_mixed_n(text: &str, ngamma: usize) -> Result<MixedFormula> {
    parse_with(text, Some(ngamma))
}

fn parse_with(text: &str, ngamma: Option<usize>) -> Result<MixedFormula> {
    let mut p = Parser { cur: Cursor::new(text)?, max_var: 0 };
    let ast = p.or()?;
    p.cur.expect_end()?;
    let n = match ngamma {
        Some(n) if p.max_var > n => return Err(Error::Arity { expected: n, found: p.max_var }),
        Some(n) => n,
        None => p.max_var,
    };
    MixedFormula::new(n, lower(ast, n))
}

#[derive(Clone, Copy)]
enum RawRel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

#[derive(Default, Clone)]
struct Lin {
    vals: Vec<(i64, FactoredPoly)>,
    gamma: Vec<(usize, i64)>,
    constant: Rat,
}

enum Ast {
    Bool(bool),
    Zero(FactoredPoly, bool),
    Cmp(Lin, RawRel, Lin),
    Not(Box<Ast>),
    And(Vec<Ast>),
    Or(Vec<Ast>),
}

struct Parser {
    cur: Cursor,
    max_var: usize,
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
        if let Some(z) = self.zero_atom()? {
            return Ok(z);
        }
        if self.cur.eat_sym("(") {
            let inner = self.or()?;
            self.cur.expect_sym(")")?;
            return Ok(inner);
        }
        for (word, b) in [("true", true), ("false", false)] {
            if self.cur.is_ident(word) {
                self.cur.bump();
                return Ok(Ast::Bool(b));
            }
        }
        self.chain()
    }

    /// `poly = 0` or `poly != 0`, or `None` with the cursor untouched.
    fn zero_atom(&mut self) -> Result<Option<Ast>> {
        let starts = self.cur.is_ident("x")
            || matches!(self.cur.peek(), Tok::Int(_))
            || self.cur.is_sym("(");
        if !starts {
            return Ok(None);
        }
        let mark = self.cur.mark();
        let poly = match parse_poly(&mut self.cur) {
            Ok(p) => p,
            Err(_) => {
                self.cur.reset(mark);
                return Ok(None);
            }
        };
        let positive = if self.cur.is_sym("=") {
            true
        } else if self.cur.is_sym("!=") {
            false
        } else {
            self.cur.reset(mark);
            return Ok(None);
        };
        let is_zero_literal = matches!(self.cur.peek_at(1), Tok::Int(n) if *n == 0.into());
        let continues = matches!(
            self.cur.peek_at(2),
            Tok::Sym("<" | "<=" | ">" | ">=" | "=" | "!=" | "+" | "-" | "*" | "/")
        );
        if !is_zero_literal || continues || poly.roots().is_empty() {
            self.cur.reset(mark);
            return Ok(None);
        }
        self.cur.bump();
        self.cur.bump();
        Ok(Some(Ast::Zero(poly, positive)))
    }

    fn chain(&mut self) -> Result<Ast> {
        let mut left = self.linexpr()?;
        let mut atoms = Vec::new();
        while let Some(rel) = self.rel() {
            let right = self.linexpr()?;
            atoms.push(Ast::Cmp(left, rel, right.clone()));
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
        let pos = self.cur.pos();
        if matches!(self.cur.peek(), Tok::Int(_)) {
            let value = self.cur.unsigned_rational()?;
            if self.cur.eat_sym("*") {
                let c = value.to_i64().ok_or(Error::NonIntegerCoefficient { pos })?;
                return self.item(sign * c, lin);
            }
            lin.constant += &value.mul_int(sign);
            return Ok(());
        }
        self.item(sign, lin)
    }

    fn item(&mut self, c: i64, lin: &mut Lin) -> Result<()> {
        let pos = self.cur.pos();
        let name = match self.cur.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.cur.error("expected `v(...)` or a Γ-variable")),
        };
        if name == "v" && matches!(self.cur.peek_at(1), Tok::Sym("(")) {
            self.cur.bump();
            self.cur.bump();
            let f = parse_poly(&mut self.cur)?;
            self.cur.expect_sym(")")?;
            lin.vals.push((c, f));
            return Ok(());
        }
        let index = name
            .strip_prefix('g')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or(Error::UnknownVariable { pos, name })?;
        self.cur.bump();
        self.max_var = self.max_var.max(index);
        lin.gamma.push((index - 1, c));
        Ok(())
    }
}

fn lower_cmp(left: Lin, rel: RawRel, right: Lin, n: usize) -> MixedExpr {
    let mut vals = left.vals;
    vals.extend(right.vals.into_iter().map(|(w, f)| (-w, f)));
    let mut gamma = vec![0i64; n];
    for (i, c) in left.gamma {
        gamma[i] += c;
    }
    for (i, c) in right.gamma {
        gamma[i] -= c;
    }
    let rhs = &right.constant - &left.constant;
    let flip = |vals: &[(i64, FactoredPoly)], gamma: &[i64]| {
        (
            vals.iter().map(|(w, f)| (-w, f.clone())).collect::<Vec<_>>(),
            gamma.iter().map(|c| -c).collect::<Vec<_>>(),
        )
    };
    match rel {
        RawRel::Lt => MixedAtom::val(vals, gamma, Rel::Lt, rhs),
        RawRel::Le => MixedAtom::val(vals, gamma, Rel::Le, rhs),
        RawRel::Eq => MixedAtom::val(vals, gamma, Rel::Eq, rhs),
        RawRel::Ne => MixedExpr::not(MixedAtom::val(vals, gamma, Rel::Eq, rhs)),
        RawRel::Gt => {
            let (v, g) = flip(&vals, &gamma);
            MixedAtom::val(v, g, Rel::Lt, -rhs)
        }
        RawRel::Ge => {
            let (v, g) = flip(&vals, &gamma);
            MixedAtom::val(v, g, Rel::Le, -rhs)
        }
    }
}

fn lower(ast: Ast, n: usize) -> MixedExpr {
    match ast {
        Ast::Bool(b) => MixedExpr::from_bool(b),
        Ast::Zero(f, true) => MixedExpr::Atom(MixedAtom::Zero(f)),
        Ast::Zero(f, false) => MixedExpr::not(MixedExpr::Atom(MixedAtom::Zero(f))),
        Ast::Cmp(l, r, rr) => lower_cmp(l, r, rr, n),
        Ast::Not(inner) => MixedExpr::not(lower(*inner, n)),
        Ast::And(parts) => MixedExpr::and(parts.into_iter().map(|p| lower(p, n)).collect()),
        Ast::Or(parts) => MixedExpr::or(parts.into_iter().map(|p| lower(p, n)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedcell::PuiseuxElement;

    fn p(s: &str) -> PuiseuxElement {
        PuiseuxElement::parse(s).unwrap()
    }

    #[test]
    fn shapes_and_eval() {
        let f = parse_mixed("g1 = v(x) & 0 < v(x) < 1").unwrap();
        assert_eq!(f.ngamma(), 1);
        assert!(f.eval(&p("t^(1/2)"), &[Rat::new(1, 2)]));
        assert!(!f.eval(&p("t"), &[Rat::one()]));
        let z = parse_mixed("x*(x - t) = 0 | v(x - 1) >= 2").unwrap();
        assert_eq!(z.ngamma(), 0);
        assert!(z.eval(&p("t"), &[]));
        assert!(z.eval(&p("1 + t^3"), &[]));
        assert!(!z.eval(&p("2"), &[]));
        let ne = parse_mixed("x != 0").unwrap();
        assert!(!ne.eval(&p("0"), &[]) && ne.eval(&p("1"), &[]));
    }

    #[test]
    fn infinite_valuations() {
        let f = parse_mixed("v(x) > 1").unwrap();
        assert!(f.eval(&p("0"), &[]));
        let g = parse_mixed("v(x) < 1").unwrap();
        assert!(!g.eval(&p("0"), &[]));
        let h = parse_mixed("v(x) = 1").unwrap();
        assert!(!h.eval(&p("0"), &[]));
        let d = parse_mixed("v(x) - v(x*(x - 1)) < 0").unwrap();
        assert!(!d.eval(&p("0"), &[]));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_mixed("v(x) <"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_mixed("y < 1"), Err(Error::UnknownVariable { pos: 0, .. })));
        assert!(matches!(parse_mixed("1/2*g1 < 1"), Err(Error::NonIntegerCoefficient { pos: 0 })));
        assert!(matches!(parse_mixed("v(0*x) < 1"), Err(Error::ZeroPolynomial)));
        assert!(matches!(parse_mixed_n("g3 < 1", 2), Err(Error::Arity { .. })));
    }

    #[test]
    fn display_reparses() {
        for s in [
            "g1 = v(x) & 0 < v(x) < 1",
            "!(x*(x - 1 - t^(1/2)) = 0) | 2*v((x + t)^2) - g2 < 1/3",
            "(v(x) >= 0 | g1 = 0) & !(g1 < 2)",
        ] {
            let f = parse_mixed(s).unwrap();
            let g = parse_mixed_n(&f.to_string(), f.ngamma()).unwrap();
            assert_eq!(f, g, "{s} -> {f}");
        }
    }
}
