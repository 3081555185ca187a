use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// Relation of a normalized atom. `>`, `≥` and `≠` are rewritten into these
/// by sign flips and negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Rel {
    pub fn holds(self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
        }
    }

    pub fn is_strict(self) -> bool {
        self == Rel::Lt
    }
}

/// `Σ coeffs[i]·x_{i+1} REL rhs` with integer coefficients, divided through by
/// their gcd. Equalities additionally have a positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearAtom {
    coeffs: Vec<i64>,
    rel: Rel,
    rhs: Rat,
}

/// Result of normalizing a raw constraint: an atom, or a truth value when
/// every coefficient vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Atom(LinearAtom),
    Const(bool),
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

impl LinearAtom {
    pub fn new(coeffs: Vec<i64>, rel: Rel, rhs: Rat) -> Normalized {
        let g = coeffs.iter().fold(0, |g, &c| gcd(g, c));
        if g == 0 {
            return Normalized::Const(rel.holds(&Rat::zero(), &rhs));
        }
        let mut coeffs: Vec<i64> = coeffs.into_iter().map(|c| c / g).collect();
        let mut rhs = rhs.div_int(g);
        if rel == Rel::Eq && coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            coeffs.iter_mut().for_each(|c| *c = -*c);
            rhs = -rhs;
        }
        Normalized::Atom(LinearAtom { coeffs, rel, rhs })
    }

    /// Like [`LinearAtom::new`] for callers that know some coefficient is
    /// nonzero.
    pub fn nonconstant(coeffs: Vec<i64>, rel: Rel, rhs: Rat) -> LinearAtom {
        match Self::new(coeffs, rel, rhs) {
            Normalized::Atom(a) => a,
            Normalized::Const(_) => panic!("atom has no variable"),
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rel(&self) -> Rel {
        self.rel
    }

    pub fn rhs(&self) -> &Rat {
        &self.rhs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn lhs(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (c, x) in self.coeffs.iter().zip(point) {
            if *c != 0 {
                acc += &x.mul_int(*c);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> bool {
        self.rel.holds(&self.lhs(point), &self.rhs)
    }

    /// The negation as a disjunction of atoms.
    pub fn negate(&self) -> Vec<LinearAtom> {
        let neg: Vec<i64> = self.coeffs.iter().map(|c| -c).collect();
        match self.rel {
            Rel::Lt => vec![Self::nonconstant(neg, Rel::Le, -&self.rhs)],
            Rel::Le => vec![Self::nonconstant(neg, Rel::Lt, -&self.rhs)],
            Rel::Eq => vec![
                Self::nonconstant(self.coeffs.clone(), Rel::Lt, self.rhs.clone()),
                Self::nonconstant(neg, Rel::Lt, -&self.rhs),
            ],
        }
    }

    /// `<` weakened to `≤`.
    pub fn relaxed(&self) -> LinearAtom {
        let mut a = self.clone();
        if a.rel == Rel::Lt {
            a.rel = Rel::Le;
        }
        a
    }

    /// Re-index into an ambient space of `nvars` variables, sending variable
    /// `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> LinearAtom {
        let mut coeffs = vec![0; nvars];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[map[i]] += c;
        }
        Self::nonconstant(coeffs, self.rel, self.rhs.clone())
    }
}

/// Writes `Σ c·name(i)` in the DSL's surface syntax.
pub(crate) fn write_linear(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[i64],
    name: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = name(i);
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        if mag == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{mag}*{var}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.coeffs, |i| format!("x{}", i + 1))?;
        write!(f, " {} {}", self.rel.symbol(), self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(c: &[i64], rel: Rel, r: Rat) -> LinearAtom {
        LinearAtom::nonconstant(c.to_vec(), rel, r)
    }

    #[test]
    fn normalization() {
        let a = atom(&[2, -4], Rel::Le, Rat::from_int(3));
        assert_eq!(a.coeffs(), &[1, -2]);
        assert_eq!(a.rhs(), &Rat::new(3, 2));
        let e = atom(&[-2, 2], Rel::Eq, Rat::from_int(4));
        assert_eq!(e.coeffs(), &[1, -1]);
        assert_eq!(e.rhs(), &Rat::from_int(-2));
        assert_eq!(LinearAtom::new(vec![0, 0], Rel::Lt, Rat::zero()), Normalized::Const(false));
        assert_eq!(LinearAtom::new(vec![0], Rel::Le, Rat::zero()), Normalized::Const(true));
    }

    #[test]
    fn negation_partitions_the_line() {
        let a = atom(&[1], Rel::Eq, Rat::zero());
        let n = a.negate();
        for k in -4..=4 {
            let p = [Rat::new(k, 2)];
            let inside = a.eval(&p);
            let outside = n.iter().any(|b| b.eval(&p));
            assert!(inside != outside);
        }
        assert_eq!(atom(&[1, -1], Rel::Lt, Rat::new(1, 2)).to_string(), "x1 - x2 < 1/2");
        assert_eq!(atom(&[-3, 0], Rel::Le, Rat::zero()).to_string(), "-x1 <= 0");
    }
}
