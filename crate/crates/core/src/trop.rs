//! Tropical hypersurfaces and monomial images in the min-plus convention.
//!
//! A point of the valued torus has coordinates `X_i = v(x_i)`; with the
//! absolute value `|x| = exp(−v(x))` this is the additive picture of the
//! coordinatewise norm map. A Laurent polynomial `Σ c_ν x^ν` tropicalizes to
//! `min_ν (v(c_ν) + ν·X)`, and its hypersurface is the locus where this
//! minimum is attained at least twice.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dim::Dim;
use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::mixedcell::{parse_puiseux, PuiseuxElement, Valuation};
use crate::rat::Rat;
use crate::semilinear::{
    closure, dimension, is_polyhedral, project, BasicSet, Expr, GammaFormula, LinearAtom,
    Normalized, Rel,
};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 3;

/// A min-plus polynomial: one weight per exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TropPolyRepr", into = "TropPolyRepr")]
pub struct TropPoly {
    nvars: usize,
    /// Sorted by exponent, exponents distinct.
    terms: Vec<(Vec<u32>, Rat)>,
}

#[derive(Serialize, Deserialize)]
struct TropPolyRepr {
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponent: Vec<u32>,
    weight: Rat,
}

impl TryFrom<TropPolyRepr> for TropPoly {
    type Error = Error;
    fn try_from(r: TropPolyRepr) -> Result<Self> {
        TropPoly::new(r.terms.into_iter().map(|t| (t.exponent, t.weight)).collect())
    }
}

impl From<TropPoly> for TropPolyRepr {
    fn from(p: TropPoly) -> Self {
        let terms = p.terms.into_iter().map(|(exponent, weight)| TermRepr { exponent, weight }).collect();
        TropPolyRepr { terms }
    }
}

impl TropPoly {
    /// Rejects an empty term list, mixed arities, more than [`MAX_VARS`]
    /// variables and repeated exponents.
    pub fn new(mut terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let nvars = match terms.first() {
            Some((e, _)) => e.len(),
            None => return Err(Error::Invalid("a tropical polynomial needs a term".into())),
        };
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::Invalid(format!("{nvars} variables, expected 1 to {MAX_VARS}")));
        }
        if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != nvars) {
            return Err(Error::Arity { expected: nvars, found: e.len() });
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = terms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid(format!("exponent {:?} repeated", w[0].0)));
        }
        Ok(TropPoly { nvars, terms })
    }

    /// Tropicalization of `Σ c_ν x^ν`. Coefficients on a repeated exponent
    /// are summed first and zero coefficients dropped.
    pub fn from_puiseux(terms: Vec<(Vec<u32>, PuiseuxElement)>) -> Result<Self> {
        let mut merged: Vec<(Vec<u32>, PuiseuxElement)> = Vec::new();
        for (e, c) in terms {
            match merged.iter_mut().find(|(f, _)| *f == e) {
                Some(slot) => slot.1 = &slot.1 + &c,
                None => merged.push((e, c)),
            }
        }
        let weighted = merged
            .into_iter()
            .filter_map(|(e, c)| match c.valuation() {
                Valuation::Finite(w) => Some((e, w)),
                Valuation::Infinite => None,
            })
            .collect();
        Self::new(weighted)
    }

    /// Parses `w @ (e1,..,en) + ...` where each weight is a signed rational
    /// or a bracketed Puiseux coefficient `[c]`, whose valuation is used. The
    /// two forms cannot be mixed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let mut plain = Vec::new();
        let mut series = Vec::new();
        loop {
            let pos = cur.pos();
            if cur.eat_sym("[") {
                let c = parse_puiseux(&mut cur)?;
                cur.expect_sym("]")?;
                series.push((parse_exponent(&mut cur)?, c));
            } else {
                let w = cur.rational()?;
                plain.push((parse_exponent(&mut cur)?, w));
            }
            if !plain.is_empty() && !series.is_empty() {
                return Err(Error::syntax(pos, "weights and Puiseux coefficients mixed"));
            }
            if !cur.eat_sym("+") {
                break;
            }
        }
        cur.expect_end()?;
        if series.is_empty() {
            Self::new(plain)
        } else {
            Self::from_puiseux(series)
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rat)] {
        &self.terms
    }

    fn term_value(&self, i: usize, x: &[Rat]) -> Rat {
        let (e, w) = &self.terms[i];
        e.iter().zip(x).fold(w.clone(), |acc, (&k, xi)| acc + xi.mul_int(k as i64))
    }

    /// `min_ν (w_ν + ν·x)`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        (0..self.terms.len()).map(|i| self.term_value(i, x)).min().expect("nonempty")
    }

    /// Linear form `(w_μ + μ·X) − (w_λ + λ·X) REL 0` as an atom, or `None`
    /// when it is constant and true.
    fn compare(&self, mu: usize, lambda: usize, rel: Rel) -> Option<LinearAtom> {
        let (em, wm) = &self.terms[mu];
        let (el, wl) = &self.terms[lambda];
        let coeffs = em.iter().zip(el).map(|(&a, &b)| a as i64 - b as i64).collect();
        match LinearAtom::new(coeffs, rel, wl - wm) {
            Normalized::Atom(a) => Some(a),
            Normalized::Const(true) => None,
            Normalized::Const(false) => unreachable!("exponents are distinct"),
        }
    }
}

fn parse_exponent(cur: &mut Cursor) -> Result<Vec<u32>> {
    cur.expect_sym("@")?;
    cur.expect_sym("(")?;
    let mut e = Vec::new();
    loop {
        let pos = cur.pos();
        if !matches!(cur.peek(), Tok::Int(_)) {
            return Err(cur.error("expected a nonnegative exponent"));
        }
        let k = cur.integer()?;
        e.push(u32::try_from(k).map_err(|_| Error::syntax(pos, "exponent out of range"))?);
        if !cur.eat_sym(",") {
            break;
        }
    }
    cur.expect_sym(")")?;
    Ok(e)
}

impl FromStr for TropPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let e: Vec<String> = e.iter().map(u32::to_string).collect();
            write!(f, "{w}@({})", e.join(","))?;
        }
        Ok(())
    }
}

/// A nonempty rational polyhedron with its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polyhedron {
    #[serde(rename = "constraints")]
    set: BasicSet,
    dim: u32,
}

impl Polyhedron {
    /// `None` when `set` is empty.
    pub fn new(set: BasicSet) -> Option<Self> {
        if set.is_empty() {
            return None;
        }
        let dim = dimension(&set.to_formula()).finite().expect("nonempty polyhedron");
        Some(Polyhedron { set, dim })
    }

    pub fn set(&self) -> &BasicSet {
        &self.set
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.set.eval(x)
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  [dim {}]", self.set, self.dim)
    }
}

/// A finite union of polyhedra, none contained in another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyhedralComplex {
    #[serde(skip)]
    nvars: usize,
    faces: Vec<Polyhedron>,
}

impl PolyhedralComplex {
    /// Drops every face contained in another one; of two equal faces the
    /// first is kept.
    pub fn new(nvars: usize, faces: Vec<Polyhedron>) -> Self {
        let keep: Vec<bool> = (0..faces.len())
            .map(|i| {
                !faces.iter().enumerate().any(|(j, g)| {
                    j != i
                        && faces[i].set.is_subset(&g.set)
                        && (j < i || !g.set.is_subset(&faces[i].set))
                })
            })
            .collect();
        let faces = faces.into_iter().zip(keep).filter_map(|(f, k)| k.then_some(f)).collect();
        PolyhedralComplex { nvars, faces }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn faces(&self) -> &[Polyhedron] {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.faces.iter().any(|f| f.contains(x))
    }

    pub fn dim(&self) -> Dim {
        self.faces.iter().map(|f| Dim::Finite(f.dim)).max().unwrap_or(Dim::NegInf)
    }

    pub fn to_formula(&self) -> GammaFormula {
        let parts = self.faces.iter().map(|f| f.set.to_formula().expr().clone()).collect();
        GammaFormula::new(self.nvars, Expr::or(parts)).expect("face arity")
    }
}

impl fmt::Display for PolyhedralComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.faces.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, face) in self.faces.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{face}")?;
        }
        Ok(())
    }
}

/// The duplicate-minimum locus of `p`, one candidate face per pair of terms.
pub fn trop_hypersurface(p: &TropPoly) -> PolyhedralComplex {
    let m = p.terms.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let faces: Vec<Polyhedron> = pairs
        .par_iter()
        .filter_map(|&(mu, nu)| {
            let eq = p.compare(mu, nu, Rel::Eq);
            let le = (0..m).filter(|&l| l != mu && l != nu).filter_map(|l| p.compare(mu, l, Rel::Le));
            Polyhedron::new(BasicSet::new(p.nvars, eq.into_iter().chain(le)))
        })
        .collect();
    PolyhedralComplex::new(p.nvars, faces)
}

/// Whether the minimum defining `p` is attained at least twice at `x`.
pub fn point_on_trop(p: &TropPoly, x: &[Rat]) -> Result<bool> {
    if x.len() != p.nvars {
        return Err(Error::Arity { expected: p.nvars, found: x.len() });
    }
    let min = p.eval(x);
    let ties = (0..p.terms.len()).filter(|&i| p.term_value(i, x) == min).count();
    Ok(ties >= 2)
}

/// Every face has dimension exactly `d`. Vacuously true for the empty complex.
pub fn pure_dimension_check(c: &PolyhedralComplex, d: u32) -> bool {
    c.faces.iter().all(|f| f.dim == d)
}

/// `X ↦ U·X` for an integer `k × n` matrix `U`, the valuation of the map
/// `x ↦ (x^{u_1}, …, x^{u_k})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct MonomialMap {
    rows: Vec<Vec<i64>>,
    ninputs: usize,
}

impl MonomialMap {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let ninputs = match rows.first() {
            Some(r) => r.len(),
            None => return Err(Error::Invalid("a monomial map needs an output".into())),
        };
        if ninputs == 0 {
            return Err(Error::Invalid("a monomial map needs an input".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != ninputs) {
            return Err(Error::Arity { expected: ninputs, found: r.len() });
        }
        Ok(MonomialMap { rows, ninputs })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        MonomialMap { rows, ninputs: n }
    }

    /// Parses a JSON matrix such as `[[1,0],[1,1]]`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| Error::Syntax {
            pos: e.column().saturating_sub(1),
            msg: e.to_string(),
        })?;
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn ninputs(&self) -> usize {
        self.ninputs
    }

    pub fn noutputs(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).fold(Rat::zero(), |acc, (&u, xi)| acc + xi.mul_int(u)))
            .collect()
    }
}

impl TryFrom<Vec<Vec<i64>>> for MonomialMap {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<MonomialMap> for Vec<Vec<i64>> {
    fn from(m: MonomialMap) -> Self {
        m.rows
    }
}

/// `{η : ∃X ∈ domain, η = U·X}` as a formula over the `k` outputs.
pub fn trop_image_monomial(domain: &GammaFormula, map: &MonomialMap) -> Result<GammaFormula> {
    let n = map.ninputs;
    if domain.nvars() != n {
        return Err(Error::Arity { expected: n, found: domain.nvars() });
    }
    let k = map.noutputs();
    // variables: η_1..η_k then X_1..X_n
    let graph = map.rows.iter().enumerate().map(|(i, row)| {
        let mut coeffs = vec![0; k + n];
        coeffs[i] = 1;
        for (j, &u) in row.iter().enumerate() {
            coeffs[k + j] = -u;
        }
        LinearAtom::nonconstant(coeffs, Rel::Eq, Rat::zero())
    });
    let inputs: Vec<usize> = (k..k + n).collect();
    let joint = GammaFormula::conjunction(k + n, graph)?.and(&domain.embed(k + n, &inputs));
    let outputs: Vec<usize> = (0..k).collect();
    Ok(project(&joint, &outputs))
}

/// The image together with the checks it is expected to pass.
#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    #[serde(serialize_with = "as_text")]
    pub image: GammaFormula,
    pub image_dim: Dim,
    pub domain_dim: Dim,
    /// The closure of the image is a finite union of closed polyhedra.
    pub closure_polyhedral: bool,
    /// The image equals its closure.
    pub image_closed: bool,
}

impl ImageReport {
    pub fn dimension_bounded(&self) -> bool {
        self.image_dim <= self.domain_dim
    }
}

fn as_text<S: serde::Serializer>(f: &GammaFormula, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

pub fn image_report(domain: &GammaFormula, map: &MonomialMap) -> Result<ImageReport> {
    let image = trop_image_monomial(domain, map)?;
    let closed = closure(&image);
    Ok(ImageReport {
        image_dim: dimension(&image),
        domain_dim: dimension(domain),
        closure_polyhedral: is_polyhedral(&closed).polyhedral,
        image_closed: is_polyhedral(&image).polyhedral,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::{equivalent, parse_formula, parse_formula_n};

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn grid(n: usize, half: i64, den: i64) -> Vec<Vec<Rat>> {
        let axis: Vec<Rat> = (-half * den..=half * den).map(|k| Rat::new(k, den)).collect();
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| axis.iter().map(move |a| [p.clone(), vec![a.clone()]].concat()))
                .collect();
        }
        out
    }

    fn agrees_on_grid(p: &TropPoly, c: &PolyhedralComplex) {
        for x in grid(p.nvars(), 2, 4) {
            assert_eq!(c.contains(&x), point_on_trop(p, &x).unwrap(), "{p} at {x:?}");
        }
    }

    #[test]
    fn tropical_line() {
        let p = TropPoly::parse("0@(1,0)+0@(0,1)+0@(0,0)").unwrap();
        let c = trop_hypersurface(&p);
        assert_eq!(c.faces().len(), 3);
        assert!(pure_dimension_check(&c, 1));
        assert!(!pure_dimension_check(&c, 0));
        assert!(c.contains(&[r("5"), r("0")]));
        assert!(!c.contains(&[r("-5"), r("0")]));
        assert!(c.contains(&[r("0"), r("7/2")]));
        assert!(c.contains(&[r("-1"), r("-1")]));
        assert!(!c.contains(&[r("1"), r("2")]));
        agrees_on_grid(&p, &c);
    }

    #[test]
    fn shifted_vertex() {
        let p = TropPoly::parse("0@(1,0) + 0@(0,1) + 1@(0,0)").unwrap();
        let c = trop_hypersurface(&p);
        assert!(c.contains(&[r("1"), r("1")]));
        assert!(c.contains(&[r("0"), r("0")]));
        assert!(!c.contains(&[r("2"), r("3")]));
        assert!(pure_dimension_check(&c, 1));
        agrees_on_grid(&p, &c);
    }

    #[test]
    fn membership_examples() {
        let p = TropPoly::parse("0@(1,0)+0@(0,1)+0@(0,0)").unwrap();
        assert!(point_on_trop(&p, &[r("0"), r("0")]).unwrap());
        assert!(!point_on_trop(&p, &[r("-1"), r("-2")]).unwrap());
        assert!(point_on_trop(&p, &[r("0")]).is_err());
        let mono = TropPoly::parse("3@(1,0)").unwrap();
        assert!(!point_on_trop(&mono, &[r("0"), r("0")]).unwrap());
        assert!(trop_hypersurface(&mono).is_empty());
        assert!(pure_dimension_check(&trop_hypersurface(&mono), 7));
    }

    #[test]
    fn collinear_exponents_collapse() {
        // 1 + x + x^2 all of weight 0: three pairs, one point
        let p = TropPoly::parse("0@(0) + 0@(1) + 0@(2)").unwrap();
        let c = trop_hypersurface(&p);
        assert_eq!(c.faces().len(), 1);
        assert!(pure_dimension_check(&c, 0));
        // 1 + x + t·x^2: breakpoints -1 and 0, the middle term wins between them
        let p = TropPoly::parse("0@(0) + 0@(1) + 1@(2)").unwrap();
        let c = trop_hypersurface(&p);
        assert_eq!(c.faces().len(), 2);
        assert!(c.contains(&[r("-1")]) && c.contains(&[r("0")]));
        agrees_on_grid(&p, &c);
    }

    #[test]
    fn three_variables() {
        let p = TropPoly::parse("0@(1,0,0) + 0@(0,1,0) + 0@(0,0,1) + 0@(0,0,0)").unwrap();
        let c = trop_hypersurface(&p);
        assert_eq!(c.faces().len(), 6);
        assert!(pure_dimension_check(&c, 2));
    }

    #[test]
    fn puiseux_coefficients() {
        let p = TropPoly::parse("[1]@(1,0) + [2 - t]@(0,1) + [t]@(0,0)").unwrap();
        assert_eq!(p, TropPoly::parse("0@(1,0) + 0@(0,1) + 1@(0,0)").unwrap());
        // cancelling coefficients remove the term
        let q = TropPoly::parse("[t]@(1,0) + [1]@(0,0) + [-t]@(1,0)").unwrap();
        assert_eq!(q.terms().len(), 1);
    }

    #[test]
    fn rejected_inputs() {
        assert!(TropPoly::parse("0@(1,0,0,0)").is_err());
        assert!(TropPoly::parse("0@(1,0) + 1@(1,0)").is_err());
        assert!(TropPoly::parse("0@(1,0) + 1@(1)").is_err());
        assert!(TropPoly::parse("0@(1,-1)").unwrap_err().is_parse());
        assert!(TropPoly::parse("0@(1) + [1]@(0)").unwrap_err().is_parse());
        assert!(TropPoly::parse("[t]@(1) + [-t]@(1)").is_err());
    }

    #[test]
    fn json_shape() {
        let p = TropPoly::parse("0@(1,0)+0@(0,1)+0@(0,0)").unwrap();
        let v = serde_json::to_value(trop_hypersurface(&p)).unwrap();
        let faces = v["faces"].as_array().unwrap();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f["dim"] == 1 && f["constraints"].is_array()));
        let back: TropPoly = serde_json::from_value(serde_json::to_value(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn monomial_images() {
        let xy = MonomialMap::parse("[[1,1]]").unwrap();
        let img = trop_image_monomial(&parse_formula("x1 >= 0 & x2 >= 0").unwrap(), &xy).unwrap();
        assert!(equivalent(&img, &parse_formula("x1 >= 0").unwrap()));

        let shear = MonomialMap::parse("[[1,0],[1,1]]").unwrap();
        let dom = parse_formula("x1 = 0 & x2 >= 0").unwrap();
        let rep = image_report(&dom, &shear).unwrap();
        assert!(equivalent(&rep.image, &parse_formula("x1 = 0 & x2 >= 0").unwrap()));
        assert_eq!((rep.image_dim, rep.domain_dim), (Dim::Finite(1), Dim::Finite(1)));
        assert!(rep.closure_polyhedral && rep.image_closed && rep.dimension_bounded());

        let rep = image_report(&parse_formula("0 < x1 & x1 < 1").unwrap(), &MonomialMap::identity(1)).unwrap();
        assert!(equivalent(&rep.image, &parse_formula("0 < x1 & x1 < 1").unwrap()));
        assert!(rep.closure_polyhedral && !rep.image_closed);

        let err = trop_image_monomial(&parse_formula_n("x1 > 0", 3).unwrap(), &xy);
        assert!(err.is_err());
        assert!(MonomialMap::parse("[[1],[1,2]]").is_err());
        assert!(MonomialMap::parse("[[1,").unwrap_err().is_parse());
    }
}
