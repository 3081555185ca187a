//! Fourier–Motzkin elimination over (ℚ, +, <) with strict/weak bookkeeping.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::Rat;

use super::atom::{LinearAtom, Normalized, Rel};
use super::formula::{Expr, GammaFormula};

/// A conjunction of atoms: a rational polyhedron whose faces may be strict.
pub struct BasicSet {
    nvars: usize,
    atoms: Vec<LinearAtom>,
    empty: OnceLock<bool>,
}

impl Clone for BasicSet {
    fn clone(&self) -> Self {
        BasicSet { nvars: self.nvars, atoms: self.atoms.clone(), empty: self.empty.clone() }
    }
}

impl PartialEq for BasicSet {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.atoms == other.atoms
    }
}

impl Eq for BasicSet {}

impl PartialOrd for BasicSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasicSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.nvars, &self.atoms).cmp(&(other.nvars, &other.atoms))
    }
}

impl fmt::Debug for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasicSet[{}]({})", self.nvars, self)
    }
}

impl fmt::Display for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("true");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl BasicSet {
    pub fn new(nvars: usize, atoms: impl IntoIterator<Item = LinearAtom>) -> Self {
        let mut atoms: Vec<LinearAtom> = atoms.into_iter().collect();
        assert!(atoms.iter().all(|a| a.nvars() == nvars), "atom arity");
        atoms.sort();
        atoms.dedup();
        BasicSet { nvars, atoms, empty: OnceLock::new() }
    }

    pub fn universe(nvars: usize) -> Self {
        Self::new(nvars, [])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn atoms(&self) -> &[LinearAtom] {
        &self.atoms
    }

    pub fn eval(&self, point: &[Rat]) -> bool {
        self.atoms.iter().all(|a| a.eval(point))
    }

    pub fn intersect(&self, other: &BasicSet) -> BasicSet {
        assert_eq!(self.nvars, other.nvars);
        Self::new(self.nvars, self.atoms.iter().chain(other.atoms.iter()).cloned())
    }

    pub fn with_atom(&self, atom: LinearAtom) -> BasicSet {
        Self::new(self.nvars, self.atoms.iter().cloned().chain(std::iter::once(atom)))
    }

    /// True iff no rational point satisfies every atom. Decided by eliminating
    /// all variables; the answer is cached.
    pub fn is_empty(&self) -> bool {
        *self.empty.get_or_init(|| {
            let mut sys = self.atoms.clone();
            let mut remaining: Vec<usize> = (0..self.nvars).collect();
            while !remaining.is_empty() {
                let pick = cheapest_variable(&sys, &remaining);
                let var = remaining.swap_remove(pick);
                match eliminate_var(&sys, var) {
                    Some(next) => sys = next,
                    None => return true,
                }
            }
            false
        })
    }

    /// Existential projection along `vars`, keeping the arity. `None` when the
    /// set is empty.
    pub fn eliminate(&self, vars: &[usize]) -> Option<BasicSet> {
        let mut sys = self.atoms.clone();
        for &v in vars {
            sys = eliminate_var(&sys, v)?;
        }
        // a variable-free remainder was already evaluated away
        Some(BasicSet::new(self.nvars, sys))
    }

    /// Projection onto the variables in `keep` (ascending), renumbered.
    pub fn project(&self, keep: &[usize]) -> Option<BasicSet> {
        let drop: Vec<usize> = (0..self.nvars).rev().filter(|v| !keep.contains(v)).collect();
        let reduced = self.eliminate(&drop)?;
        let atoms = reduced.atoms.iter().map(|a| {
            let coeffs = keep.iter().map(|&k| a.coeff(k)).collect();
            LinearAtom::nonconstant(coeffs, a.rel(), a.rhs().clone())
        });
        Some(BasicSet::new(keep.len(), atoms))
    }

    /// A rational point of the set found by back-substitution through the
    /// elimination chain x_n, x_{n-1}, …, x_1.
    pub fn witness(&self) -> Option<Vec<Rat>> {
        let mut chain = vec![self.atoms.clone()];
        for v in (0..self.nvars).rev() {
            let next = eliminate_var(chain.last().unwrap(), v)?;
            chain.push(next);
        }
        // chain[n - k] involves only x_1..x_k
        let mut point: Vec<Rat> = Vec::with_capacity(self.nvars);
        for k in 0..self.nvars {
            let sys = &chain[self.nvars - k - 1];
            let value = pick_value(sys, k, &point)?;
            point.push(value);
        }
        debug_assert!(self.eval(&point));
        Some(point)
    }

    /// Every `<` weakened to `≤`.
    pub fn relaxed(&self) -> BasicSet {
        Self::new(self.nvars, self.atoms.iter().map(LinearAtom::relaxed))
    }

    pub fn is_closed_form(&self) -> bool {
        self.atoms.iter().all(|a| a.rel() != Rel::Lt)
    }

    pub fn to_formula(&self) -> GammaFormula {
        GammaFormula::new_unchecked(
            self.nvars,
            Expr::and(self.atoms.iter().cloned().map(Expr::Atom).collect()),
        )
    }

    /// `self ⊆ other`, decided atom by atom against `other`'s complement.
    pub fn is_subset(&self, other: &BasicSet) -> bool {
        other
            .atoms
            .iter()
            .all(|a| a.negate().into_iter().all(|n| self.with_atom(n).is_empty()))
    }
}

/// Value for coordinate `k` given x_1..x_k-1 fixed: any point of the interval
/// the system cuts out on that coordinate.
fn pick_value(sys: &[LinearAtom], k: usize, prefix: &[Rat]) -> Option<Rat> {
    let mut lower: Option<(Rat, bool)> = None; // (bound, strict)
    let mut upper: Option<(Rat, bool)> = None;
    let mut exact: Option<Rat> = None;
    for a in sys {
        let c = a.coeff(k);
        let rest = a.lhs(&pad(prefix, a.nvars()));
        let slack = a.rhs() - &rest;
        if c == 0 {
            if !a.rel().holds(&rest, a.rhs()) {
                return None;
            }
            continue;
        }
        let b = slack.div_int(c);
        match a.rel() {
            Rel::Eq => exact = Some(b),
            rel => {
                let strict = rel == Rel::Lt;
                if c > 0 {
                    if upper.as_ref().is_none_or(|(u, s)| b < *u || (b == *u && strict && !s)) {
                        upper = Some((b, strict));
                    }
                } else if lower.as_ref().is_none_or(|(l, s)| b > *l || (b == *l && strict && !s)) {
                    lower = Some((b, strict));
                }
            }
        }
    }
    Some(match (exact, lower, upper) {
        (Some(e), _, _) => e,
        (None, Some((l, ls)), Some((u, us))) => {
            if l == u && !ls && !us {
                l
            } else {
                Rat::midpoint(&l, &u)
            }
        }
        (None, Some((l, _)), None) => l + Rat::one(),
        (None, None, Some((u, _))) => u - Rat::one(),
        (None, None, None) => Rat::zero(),
    })
}

fn pad(prefix: &[Rat], n: usize) -> Vec<Rat> {
    let mut p = prefix.to_vec();
    p.resize(n, Rat::zero());
    p
}

fn cheapest_variable(sys: &[LinearAtom], remaining: &[usize]) -> usize {
    let cost = |v: usize| {
        let mut lo = 0usize;
        let mut hi = 0usize;
        for a in sys {
            let c = a.coeff(v);
            if c == 0 {
                continue;
            }
            if a.rel() == Rel::Eq {
                return 0;
            }
            if c > 0 {
                hi += 1;
            } else {
                lo += 1;
            }
        }
        lo * hi
    };
    (0..remaining.len()).min_by_key(|&i| (cost(remaining[i]), remaining[i])).unwrap()
}

fn combine(ma: i64, a: &LinearAtom, mb: i64, b: &LinearAtom, rel: Rel) -> Normalized {
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| {
            ma.checked_mul(*x)
                .and_then(|p| mb.checked_mul(*y).and_then(|q| p.checked_add(q)))
                .expect("integer coefficient overflow during elimination")
        })
        .collect();
    let rhs = a.rhs().mul_int(ma) + b.rhs().mul_int(mb);
    LinearAtom::new(coeffs, rel, rhs)
}

/// One elimination step. `None` when a contradiction appears.
pub(crate) fn eliminate_var(sys: &[LinearAtom], var: usize) -> Option<Vec<LinearAtom>> {
    let mut out: Vec<Normalized> = Vec::new();
    let pivot = sys
        .iter()
        .filter(|a| a.rel() == Rel::Eq && a.coeff(var) != 0)
        .min_by_key(|a| (a.coeff(var).unsigned_abs(), (*a).clone()));
    if let Some(e) = pivot {
        let ce = e.coeff(var);
        for a in sys {
            if std::ptr::eq(a, e) {
                continue;
            }
            let ca = a.coeff(var);
            if ca == 0 {
                out.push(Normalized::Atom(a.clone()));
            } else {
                out.push(combine(ce.abs(), a, -ce.signum() * ca, e, a.rel()));
            }
        }
    } else {
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for a in sys {
            match a.coeff(var).signum() {
                0 => out.push(Normalized::Atom(a.clone())),
                1 => upper.push(a),
                _ => lower.push(a),
            }
        }
        for u in &upper {
            for l in &lower {
                let rel = if u.rel() == Rel::Lt || l.rel() == Rel::Lt { Rel::Lt } else { Rel::Le };
                out.push(combine(-l.coeff(var), u, u.coeff(var), l, rel));
            }
        }
    }
    simplify(out)
}

/// Drops true constants, fails on false ones, and keeps only the tightest
/// inequality per coefficient vector.
pub(crate) fn simplify(items: Vec<Normalized>) -> Option<Vec<LinearAtom>> {
    let mut ineq: BTreeMap<Vec<i64>, (Rat, Rel)> = BTreeMap::new();
    let mut eqs: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for n in items {
        let a = match n {
            Normalized::Const(true) => continue,
            Normalized::Const(false) => return None,
            Normalized::Atom(a) => a,
        };
        match a.rel() {
            Rel::Eq => match eqs.get(a.coeffs()) {
                Some(r) if r != a.rhs() => return None,
                Some(_) => {}
                None => {
                    eqs.insert(a.coeffs().to_vec(), a.rhs().clone());
                }
            },
            rel => {
                let tighter = match ineq.get(a.coeffs()) {
                    None => true,
                    Some((r, old)) => a.rhs() < r || (a.rhs() == r && rel == Rel::Lt && *old == Rel::Le),
                };
                if tighter {
                    ineq.insert(a.coeffs().to_vec(), (a.rhs().clone(), rel));
                }
            }
        }
    }
    let mut out: Vec<LinearAtom> = Vec::with_capacity(ineq.len() + eqs.len());
    for (c, r) in eqs {
        out.push(LinearAtom::nonconstant(c, Rel::Eq, r));
    }
    for (c, (r, rel)) in ineq {
        out.push(LinearAtom::nonconstant(c, rel, r));
    }
    Some(out)
}

/// Disjunctive normal form with negations pushed into the atoms. Empty
/// disjuncts are pruned; the output is sorted and duplicate-free.
pub fn normalize_dnf(f: &GammaFormula) -> Vec<BasicSet> {
    let raw = dnf_expr(f.expr(), false);
    let mut sets: Vec<BasicSet> = raw
        .into_iter()
        .map(|atoms| BasicSet::new(f.nvars(), atoms))
        .filter(|b| !b.is_empty())
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

type Clauses = Vec<Vec<LinearAtom>>;

fn dnf_expr(e: &Expr, negated: bool) -> Clauses {
    match (e, negated) {
        (Expr::True, false) | (Expr::False, true) => vec![vec![]],
        (Expr::True, true) | (Expr::False, false) => vec![],
        (Expr::Atom(a), false) => vec![vec![a.clone()]],
        (Expr::Atom(a), true) => a.negate().into_iter().map(|n| vec![n]).collect(),
        (Expr::Not(inner), neg) => dnf_expr(inner, !neg),
        (Expr::And(es), false) | (Expr::Or(es), true) => {
            let mut acc: Clauses = vec![vec![]];
            for part in es {
                let rhs = dnf_expr(part, negated);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for l in &acc {
                    for r in &rhs {
                        let mut c = l.clone();
                        c.extend(r.iter().cloned());
                        if !trivially_contradictory(&c) {
                            next.push(c);
                        }
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        (Expr::Or(es), false) | (Expr::And(es), true) => {
            es.iter().flat_map(|part| dnf_expr(part, negated)).collect()
        }
    }
}

/// Cheap syntactic check: two atoms on the same line that cannot both hold.
fn trivially_contradictory(c: &[LinearAtom]) -> bool {
    let last = match c.last() {
        Some(a) => a,
        None => return false,
    };
    c[..c.len() - 1].iter().any(|a| {
        if a.coeffs() == last.coeffs() {
            a.rel() == Rel::Eq && last.rel() == Rel::Eq && a.rhs() != last.rhs()
        } else {
            false
        }
    })
}

/// Formula for a union of basic sets.
pub fn union_formula(nvars: usize, sets: &[BasicSet]) -> GammaFormula {
    let expr = Expr::or(
        sets.iter()
            .map(|b| Expr::and(b.atoms().iter().cloned().map(Expr::Atom).collect()))
            .collect(),
    );
    GammaFormula::new_unchecked(nvars, expr)
}

/// Eliminates `vars` existentially without changing the arity.
pub fn eliminate(f: &GammaFormula, vars: &[usize]) -> GammaFormula {
    let sets: Vec<BasicSet> = normalize_dnf(f).iter().filter_map(|b| b.eliminate(vars)).collect();
    union_formula(f.nvars(), &sets)
}

/// Coordinate projection onto the variables in `keep`; the result's
/// variables are the kept ones in ascending order.
pub fn project(f: &GammaFormula, keep: &[usize]) -> GammaFormula {
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    assert!(keep.iter().all(|&k| k < f.nvars()), "kept variable out of range");
    let mut sets: Vec<BasicSet> = normalize_dnf(f).iter().filter_map(|b| b.project(&keep)).collect();
    sets.sort();
    sets.dedup();
    union_formula(keep.len(), &sets)
}

/// True iff the formula defines the empty set.
pub fn is_empty_formula(f: &GammaFormula) -> bool {
    normalize_dnf(f).is_empty()
}

/// `f ⊆ g`.
pub fn is_subset_formula(f: &GammaFormula, g: &GammaFormula) -> bool {
    is_empty_formula(&f.and(&g.negate()))
}

pub fn equivalent(f: &GammaFormula, g: &GammaFormula) -> bool {
    is_subset_formula(f, g) && is_subset_formula(g, f)
}

impl Serialize for BasicSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.atoms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasicSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let atoms = Vec::<LinearAtom>::deserialize(d)?;
        let n = atoms.first().map_or(0, |a| a.nvars());
        if atoms.iter().any(|a| a.nvars() != n) {
            return Err(serde::de::Error::custom("atoms of differing arity"));
        }
        Ok(BasicSet::new(n, atoms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::parse_formula;

    fn f(s: &str) -> GammaFormula {
        parse_formula(s).unwrap()
    }

    fn single(s: &str) -> BasicSet {
        let g = f(s);
        let atoms = g.expr().atoms().into_iter().cloned().collect::<Vec<_>>();
        BasicSet::new(g.nvars(), atoms)
    }

    #[test]
    fn emptiness_examples() {
        assert!(single("x1 < 0 & x1 >= 0").is_empty());
        assert!(single("x1 < x2 & x2 < x1").is_empty());
        let b = single("x1 < x2 & x2 < x1 + 1");
        assert!(!b.is_empty());
        let w = b.witness().unwrap();
        assert!(b.eval(&w));
        assert!(single("x1 <= 0 & x1 >= 0").witness().is_some());
        assert!(single("2*x1 = 1 & 2*x1 = 3").is_empty());
    }

    #[test]
    fn projection_examples() {
        let p = project(&f("x1 < x2 & x2 < 1"), &[0]);
        assert!(equivalent(&p, &f("x1 < 1")));
        let p = project(&f("2*x2 = x1"), &[0]);
        assert!(equivalent(&p, &GammaFormula::top(1)));
        let p = project(&f("x1 <= x2 & x2 <= x1 & x2 < 0"), &[0]);
        assert!(equivalent(&p, &f("x1 < 0")));
        assert!(is_empty_formula(&project(&f("x1 < 0 & x1 > 0"), &[])));
    }

    #[test]
    fn dnf_examples() {
        assert_eq!(normalize_dnf(&f("x1 < 1")).len(), 1);
        assert_eq!(normalize_dnf(&f("x1 = 0 | x1 = 1")).len(), 2);
        let d = normalize_dnf(&f("!(x1 < 0 & x1 > 1)"));
        // covers ℚ: grid check
        for k in -8..=8 {
            let p = [Rat::new(k, 4)];
            assert!(d.iter().any(|b| b.eval(&p)));
        }
        assert!(normalize_dnf(&f("x1 < 0 & x1 > 0")).is_empty());
    }

    #[test]
    fn subset() {
        assert!(single("0 < x1 & x1 < 1").is_subset(&single("x1 <= 1")));
        assert!(!single("x1 <= 1").is_subset(&single("x1 < 1")));
    }
}
