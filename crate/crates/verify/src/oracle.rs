//! Reference computations the suites compare the engine against. They only
//! evaluate formulas at explicit points; none of them eliminates variables,
//! builds cells or takes closures.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use valdim_core::mixedcell::{FactoredPoly, PuiseuxElement, Valuation};
use valdim_core::semilinear::{BasicSet, Expr, GammaFormula, Rel};
use valdim_core::Rat;

/// Small exact rationals. Every quantity the suites evaluate has tiny
/// numerators and denominators, so `i128` never overflows here (and would
/// panic rather than wrap in a checked build).
pub type Q = Ratio<i128>;

pub fn q(r: &Rat) -> Q {
    let n = r.numer().to_i128().expect("numerator fits in i128");
    let d = r.denom().to_i128().expect("denominator fits in i128");
    Q::new(n, d)
}

pub fn rat(x: &Q) -> Rat {
    Rat::from_bigs(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Points of `[−half, half]ᵈ` with denominator `den`.
pub fn grid(d: usize, half: i64, den: i64) -> Vec<Vec<Q>> {
    let (half, den) = (half as i128, den as i128);
    let axis: Vec<Q> = (-half * den..=half * den).map(|k| Q::new(k, den)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(*a);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn grid_rat(d: usize, half: i64, den: i64) -> Vec<Vec<Rat>> {
    grid(d, half, den).iter().map(|p| p.iter().map(rat).collect()).collect()
}

#[derive(Clone, Debug)]
struct Atom {
    coeffs: Vec<i128>,
    rel: Rel,
    rhs: Q,
}

impl Atom {
    fn holds(&self, p: &[Q]) -> bool {
        let lhs: Q = self.coeffs.iter().zip(p).map(|(&c, x)| x * c).sum();
        match self.rel {
            Rel::Lt => lhs < self.rhs,
            Rel::Le => lhs <= self.rhs,
            Rel::Eq => lhs == self.rhs,
        }
    }

    /// The right-hand side once every coordinate outside `free` is fixed.
    fn residual(&self, p: &[Q], free: &[usize]) -> Q {
        let mut r = self.rhs;
        for (j, x) in p.iter().enumerate() {
            if !free.contains(&j) {
                r -= x * self.coeffs[j];
            }
        }
        r
    }
}

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Atom(usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

/// A Γ-formula compiled for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct Compiled {
    nvars: usize,
    atoms: Vec<Atom>,
    root: Node,
}

impl Compiled {
    pub fn new(f: &GammaFormula) -> Self {
        let mut atoms = Vec::new();
        let root = compile(f.expr(), &mut atoms);
        Compiled { nvars: f.nvars(), atoms, root }
    }

    pub fn from_basic_set(b: &BasicSet) -> Self {
        Self::new(&b.to_formula())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, p: &[Q]) -> bool {
        self.eval_node(&self.root, p)
    }

    fn eval_node(&self, n: &Node, p: &[Q]) -> bool {
        match n {
            Node::Const(b) => *b,
            Node::Atom(i) => self.atoms[*i].holds(p),
            Node::Not(e) => !self.eval_node(e, p),
            Node::And(es) => es.iter().all(|e| self.eval_node(e, p)),
            Node::Or(es) => es.iter().any(|e| self.eval_node(e, p)),
        }
    }

    /// A point agreeing with `p` off `free` that satisfies the formula, if
    /// any. At most two free coordinates are supported.
    ///
    /// With one free coordinate the atoms' roots split the line into finitely
    /// many sign-invariant pieces and one point of each is tried. With two,
    /// the order of the atom lines along the second coordinate only changes
    /// where two lines cross or a line parallel to it is met, so one value of
    /// the first coordinate per piece of that subdivision suffices.
    pub fn witness(&self, p: &[Q], free: &[usize]) -> Option<Vec<Q>> {
        let mut p = p.to_vec();
        match *free {
            [] => self.eval(&p).then_some(p),
            [u] => {
                let roots = self
                    .atoms
                    .iter()
                    .filter(|a| a.coeffs[u] != 0)
                    .map(|a| a.residual(&p, free) / a.coeffs[u])
                    .collect();
                test_points(roots).into_iter().find_map(|t| {
                    p[u] = t;
                    self.eval(&p).then(|| p.clone())
                })
            }
            [u, w] => {
                let mut crit = Vec::new();
                // lines w = α + β·u
                let mut lines: Vec<(Q, Q)> = Vec::new();
                for a in &self.atoms {
                    let (cu, cw) = (a.coeffs[u], a.coeffs[w]);
                    let r = a.residual(&p, free);
                    if cw != 0 {
                        lines.push((r / cw, Q::new(-cu, cw)));
                    } else if cu != 0 {
                        crit.push(r / cu);
                    }
                }
                for (i, (ai, bi)) in lines.iter().enumerate() {
                    for (aj, bj) in &lines[i + 1..] {
                        if bi != bj {
                            crit.push((aj - ai) / (bi - bj));
                        }
                    }
                }
                test_points(crit).into_iter().find_map(|t| {
                    p[u] = t;
                    self.witness(&p, &[w])
                })
            }
            _ => panic!("the reference existential handles at most two free coordinates"),
        }
    }

    pub fn exists(&self, p: &[Q], free: &[usize]) -> bool {
        self.witness(p, free).is_some()
    }

    /// Some point of the set (at most two variables).
    pub fn any_point(&self) -> Option<Vec<Q>> {
        let free: Vec<usize> = (0..self.nvars).collect();
        self.witness(&vec![Q::from(0); self.nvars], &free)
    }
}

fn compile(e: &Expr, atoms: &mut Vec<Atom>) -> Node {
    match e {
        Expr::True => Node::Const(true),
        Expr::False => Node::Const(false),
        Expr::Atom(a) => {
            atoms.push(Atom {
                coeffs: a.coeffs().iter().map(|&c| c as i128).collect(),
                rel: a.rel(),
                rhs: q(a.rhs()),
            });
            Node::Atom(atoms.len() - 1)
        }
        Expr::Not(inner) => Node::Not(Box::new(compile(inner, atoms))),
        Expr::And(es) => Node::And(es.iter().map(|e| compile(e, atoms)).collect()),
        Expr::Or(es) => Node::Or(es.iter().map(|e| compile(e, atoms)).collect()),
    }
}

/// Sorted distinct values, the midpoints between neighbours and one point
/// beyond each end: a point of every cell of the induced partition of ℚ.
fn test_points(mut vals: Vec<Q>) -> Vec<Q> {
    vals.sort();
    vals.dedup();
    let (Some(&first), Some(&last)) = (vals.first(), vals.last()) else {
        return vec![Q::from(0)];
    };
    let mut out = vec![first - 1];
    for w in vals.windows(2) {
        out.push(w[0]);
        out.push((w[0] + w[1]) / 2);
    }
    out.push(last);
    out.push(last + 1);
    out
}

/// Membership of `x` in the topological closure of a convex set `b`, given a
/// point `p ∈ b`: `x ∈ cl(b)` iff the half-open segment `(x, p]` lies in `b`,
/// which for the small data used here is decided by a point very close to
/// `x`.
pub fn in_closure(b: &Compiled, p: &[Q], x: &[Q]) -> bool {
    let eps = Q::new(1, 1 << 30);
    let z: Vec<Q> = x.iter().zip(p).map(|(xi, pi)| xi + (pi - xi) * eps).collect();
    b.eval(&z)
}

/// Whether the minimum of `w_ν + ν·x` over the terms is attained twice.
pub fn duplicate_min(terms: &[(Vec<u32>, Rat)], x: &[Rat]) -> bool {
    let values: Vec<Rat> = terms
        .iter()
        .map(|(e, w)| e.iter().zip(x).fold(w.clone(), |acc, (&k, xi)| acc + xi.mul_int(k as i64)))
        .collect();
    let min = values.iter().min().expect("a term");
    values.iter().filter(|v| *v == min).count() >= 2
}

/// `f(x)` multiplied out in full.
pub fn poly_value(f: &FactoredPoly, x: &PuiseuxElement) -> PuiseuxElement {
    let mut acc = PuiseuxElement::constant(f.leading().clone());
    for (root, m) in f.roots() {
        let factor = x - root;
        for _ in 0..*m {
            acc = &acc * &factor;
        }
    }
    acc
}

pub fn poly_valuation(f: &FactoredPoly, x: &PuiseuxElement) -> Valuation {
    poly_value(f, x).valuation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use valdim_core::semilinear::parse_formula_n;

    fn r(s: &str) -> Q {
        q(&s.parse().unwrap())
    }

    fn compiled(s: &str, n: usize) -> Compiled {
        Compiled::new(&parse_formula_n(s, n).unwrap())
    }

    #[test]
    fn one_free_coordinate() {
        let f = compiled("x1 < x2 & x2 < x1 + 1/3", 2);
        assert!(f.exists(&[r("5"), r("0")], &[1]));
        let g = compiled("3*x2 = x1 & x2 != 1", 2);
        assert!(g.exists(&[r("1/2"), r("0")], &[1]));
        assert!(!g.exists(&[r("3"), r("0")], &[1]));
    }

    #[test]
    fn two_free_coordinates() {
        // a thin wedge away from every grid point
        let f = compiled("x1 + x2 > 7 & 2*x1 - x2 < 1/2 & x3 = 0", 3);
        let w = f.witness(&[r("0"), r("0"), r("0")], &[0, 1]).unwrap();
        assert!(f.eval(&w));
        let empty = compiled("x1 < x2 & x2 < x3 & x3 < x1", 3);
        assert!(!empty.exists(&[r("0"), r("0"), r("2")], &[0, 1]));
    }

    #[test]
    fn closure_membership() {
        let b = compiled("0 < x1 & x1 < 1 & x2 = x1", 2);
        let p = b.any_point().unwrap();
        assert!(in_closure(&b, &p, &[r("0"), r("0")]));
        assert!(in_closure(&b, &p, &[r("1"), r("1")]));
        assert!(!in_closure(&b, &p, &[r("1"), r("0")]));
        assert!(!in_closure(&b, &p, &[r("-1/8"), r("-1/8")]));
    }

    #[test]
    fn tropical_and_puiseux() {
        let z = Rat::zero();
        let line = [(vec![1, 0], z.clone()), (vec![0, 1], z.clone()), (vec![0, 0], z)];
        assert!(duplicate_min(&line, &[Rat::zero(), Rat::zero()]));
        assert!(!duplicate_min(&line, &[Rat::from_int(-1), Rat::from_int(-2)]));
        let f = FactoredPoly::parse("2*x*(x - t)^2").unwrap();
        let x = PuiseuxElement::parse("t + t^3").unwrap();
        assert_eq!(poly_valuation(&f, &x), Valuation::Finite(Rat::from_int(7)));
        assert_eq!(poly_valuation(&f, &PuiseuxElement::parse("t").unwrap()), Valuation::Infinite);
    }
}
