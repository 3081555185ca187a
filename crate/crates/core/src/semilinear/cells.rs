//! Cell decomposition of Γ-definable sets.
//!
//! The last variable is eliminated first. Every linear form that occurs in
//! the formula, together with the pairwise differences of the bounding
//! functions it induces on the last coordinate, is made sign-invariant on a
//! decomposition of the base; over each base cell the bounding functions are
//! then totally ordered and the fiber splits into graphs and open bands. In
//! the top fiber, consecutive cells in the set are merged into maximal
//! intervals, which is the one-variable canonical form applied uniformly over
//! the base.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dim::Dim;
use crate::rat::{denom_lcm, Rat};

use super::atom::{LinearAtom, Normalized, Rel};
use super::fm::{self, BasicSet};
use super::formula::GammaFormula;

/// A bounding function `(coeffs·x + constant) / div` over the earlier
/// coordinates, or ±∞. Finite bounds are stored with `gcd(coeffs, div) = 1`,
/// so equal functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineBound {
    NegInf,
    PosInf,
    Finite { coeffs: Vec<i64>, constant: Rat, div: u64 },
}

impl AffineBound {
    pub fn constant(c: Rat) -> Self {
        AffineBound::Finite { coeffs: Vec::new(), constant: c, div: 1 }
    }

    fn from_form(form: &LinForm) -> Self {
        let a = denom_lcm(form.coeffs.iter());
        let ar = Rat::from_bigs(a.clone(), BigInt::one());
        let coeffs = form
            .coeffs
            .iter()
            .map(|c| to_i64(&(c * &ar)))
            .collect::<Vec<_>>();
        AffineBound::Finite {
            coeffs,
            constant: &form.constant * &ar,
            div: a.to_u64().expect("divisor overflow"),
        }
    }

    /// Value at a point of the earlier coordinates; `None` for ±∞.
    pub fn eval(&self, prefix: &[Rat]) -> Option<Rat> {
        match self {
            AffineBound::Finite { coeffs, constant, div } => {
                let mut acc = constant.clone();
                for (c, x) in coeffs.iter().zip(prefix) {
                    if *c != 0 {
                        acc += &x.mul_int(*c);
                    }
                }
                Some(acc.div_int(*div as i64))
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, AffineBound::Finite { .. })
    }

    /// `div·x_k − coeffs·x` padded to `nvars` coefficients, and `constant`:
    /// the pieces of the atom comparing `x_k` with this bound.
    fn atom_parts(&self, k: usize, nvars: usize) -> (Vec<i64>, Rat) {
        match self {
            AffineBound::Finite { coeffs, constant, div } => {
                let mut v = vec![0i64; nvars];
                for (i, c) in coeffs.iter().enumerate() {
                    v[i] = -c;
                }
                v[k] = *div as i64;
                (v, constant.clone())
            }
            _ => unreachable!("infinite bound has no atom"),
        }
    }
}

fn to_i64(r: &Rat) -> i64 {
    r.to_i64().expect("integer coefficient overflow")
}

impl fmt::Display for AffineBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineBound::NegInf => f.write_str("-inf"),
            AffineBound::PosInf => f.write_str("inf"),
            AffineBound::Finite { coeffs, constant, div } => {
                let linear = coeffs.iter().any(|&c| c != 0);
                if *div != 1 {
                    f.write_str("(")?;
                }
                if linear {
                    super::atom::write_linear(f, coeffs, |i| format!("x{}", i + 1))?;
                    if !constant.is_zero() {
                        if constant.signum() < 0 {
                            write!(f, " - {}", constant.abs())?;
                        } else {
                            write!(f, " + {constant}")?;
                        }
                    }
                } else {
                    write!(f, "{constant}")?;
                }
                if *div != 1 {
                    write!(f, ")/{div}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for AffineBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            coeffs: &'a [i64],
            #[serde(rename = "const")]
            constant: &'a Rat,
            div: u64,
        }
        match self {
            AffineBound::NegInf => s.serialize_str("-inf"),
            AffineBound::PosInf => s.serialize_str("inf"),
            AffineBound::Finite { coeffs, constant, div } => {
                Repr { coeffs, constant, div: *div }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for AffineBound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Fin {
            coeffs: Vec<i64>,
            #[serde(rename = "const")]
            constant: Rat,
            div: u64,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            S(String),
            F(Fin),
        }
        match Repr::deserialize(d)? {
            Repr::S(s) if s == "inf" => Ok(AffineBound::PosInf),
            Repr::S(s) if s == "-inf" => Ok(AffineBound::NegInf),
            Repr::S(s) => Err(serde::de::Error::custom(format!("bad bound `{s}`"))),
            Repr::F(f) if f.div == 0 => Err(serde::de::Error::custom("zero divisor")),
            Repr::F(f) => Ok(AffineBound::Finite { coeffs: f.coeffs, constant: f.constant, div: f.div }),
        }
    }
}

/// Rational affine function `coeffs·x + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LinForm {
    coeffs: Vec<Rat>,
    constant: Rat,
}

impl LinForm {
    fn sub(&self, other: &LinForm) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            constant: &self.constant - &other.constant,
        }
    }

    /// The hyperplane `self = 0` as a factor, unless the form is constant.
    fn zero_factor(&self) -> Option<Factor> {
        if self.coeffs.iter().all(Rat::is_zero) {
            return None;
        }
        let l = Rat::from_bigs(denom_lcm(self.coeffs.iter()), BigInt::one());
        let ints = self.coeffs.iter().map(|c| to_i64(&(c * &l))).collect();
        Factor::new(ints, -(&self.constant * &l))
    }
}

/// A linear form `coeffs·x − rhs` whose sign must be constant on every cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Factor {
    coeffs: Vec<i64>,
    rhs: Rat,
}

impl Factor {
    fn new(coeffs: Vec<i64>, rhs: Rat) -> Option<Factor> {
        match LinearAtom::new(coeffs, Rel::Eq, rhs) {
            Normalized::Atom(a) => Some(Factor { coeffs: a.coeffs().to_vec(), rhs: a.rhs().clone() }),
            Normalized::Const(_) => None,
        }
    }

    /// Solved for the last variable.
    fn as_bound(&self) -> LinForm {
        let k = self.coeffs.len() - 1;
        let ck = self.coeffs[k];
        LinForm {
            coeffs: self.coeffs[..k].iter().map(|&c| Rat::new(-c, ck)).collect(),
            constant: self.rhs.div_int(ck),
        }
    }
}

/// One coordinate of a cell: the graph of a bound, or the open band between
/// two bounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CellCoord {
    Graph(AffineBound),
    Band(AffineBound, AffineBound),
}

impl Serialize for CellCoord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CellCoord::Graph(b) => [b].serialize(s),
            CellCoord::Band(lo, hi) => [lo, hi].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for CellCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut v = Vec::<AffineBound>::deserialize(d)?;
        match v.len() {
            1 => Ok(CellCoord::Graph(v.pop().unwrap())),
            2 => {
                let hi = v.pop().unwrap();
                Ok(CellCoord::Band(v.pop().unwrap(), hi))
            }
            _ => Err(serde::de::Error::custom("a coordinate has one or two bounds")),
        }
    }
}

/// An (i₁,…,iₙ)-cell: coordinate k is a graph over the cell of the first k
/// coordinates when iₖ = 0 and an open band when iₖ = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaCell {
    signature: Vec<u8>,
    bounds: Vec<CellCoord>,
}

impl GammaCell {
    pub fn new(bounds: Vec<CellCoord>) -> Self {
        let signature = bounds
            .iter()
            .map(|b| matches!(b, CellCoord::Band(..)) as u8)
            .collect();
        GammaCell { signature, bounds }
    }

    pub fn signature(&self) -> &[u8] {
        &self.signature
    }

    pub fn bounds(&self) -> &[CellCoord] {
        &self.bounds
    }

    pub fn nvars(&self) -> usize {
        self.bounds.len()
    }

    /// `i₁ + … + iₙ`.
    pub fn dim(&self) -> u32 {
        self.signature.iter().map(|&i| i as u32).sum()
    }

    /// The cell as a conjunction of atoms.
    pub fn to_basic_set(&self) -> BasicSet {
        let n = self.nvars();
        let mut atoms = Vec::new();
        for (k, c) in self.bounds.iter().enumerate() {
            match c {
                CellCoord::Graph(b) => {
                    let (v, c0) = b.atom_parts(k, n);
                    atoms.push(LinearAtom::nonconstant(v, Rel::Eq, c0));
                }
                CellCoord::Band(lo, hi) => {
                    if lo.is_finite() {
                        // lo < x_k  <=>  -(div·x_k - coeffs·x) < -constant
                        let (v, c0) = lo.atom_parts(k, n);
                        atoms.push(LinearAtom::nonconstant(
                            v.into_iter().map(|c| -c).collect(),
                            Rel::Lt,
                            -c0,
                        ));
                    }
                    if hi.is_finite() {
                        let (v, c0) = hi.atom_parts(k, n);
                        atoms.push(LinearAtom::nonconstant(v, Rel::Lt, c0));
                    }
                }
            }
        }
        BasicSet::new(n, atoms)
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.nvars());
        self.bounds.iter().enumerate().all(|(k, c)| {
            let prefix = &point[..k];
            let x = &point[k];
            match c {
                CellCoord::Graph(b) => b.eval(prefix).as_ref() == Some(x),
                CellCoord::Band(lo, hi) => {
                    lo.eval(prefix).is_none_or(|l| l < *x) && hi.eval(prefix).is_none_or(|h| *x < h)
                }
            }
        })
    }

    /// A deterministic point of the cell: graphs are evaluated, finite bands
    /// take the midpoint, half-lines step one unit past their finite end.
    pub fn sample_point(&self) -> Vec<Rat> {
        let mut p = Vec::with_capacity(self.nvars());
        for c in &self.bounds {
            let v = match c {
                CellCoord::Graph(b) => b.eval(&p).expect("finite graph"),
                CellCoord::Band(lo, hi) => band_sample(lo.eval(&p), hi.eval(&p)),
            };
            p.push(v);
        }
        p
    }
}

fn band_sample(lo: Option<Rat>, hi: Option<Rat>) -> Rat {
    match (lo, hi) {
        (Some(l), Some(h)) => Rat::midpoint(&l, &h),
        (Some(l), None) => l + Rat::one(),
        (None, Some(h)) => h - Rat::one(),
        (None, None) => Rat::zero(),
    }
}

impl fmt::Display for GammaCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig: Vec<String> = self.signature.iter().map(|i| i.to_string()).collect();
        write!(f, "({})-cell:", sig.join(","))?;
        for (k, c) in self.bounds.iter().enumerate() {
            match c {
                CellCoord::Graph(b) => write!(f, " x{} = {b};", k + 1)?,
                CellCoord::Band(lo, hi) => write!(f, " {lo} < x{} < {hi};", k + 1)?,
            }
        }
        Ok(())
    }
}

/// Ordered fiber over one base point: distinct bound representatives sorted
/// by value. Fiber cell `j` is a band when `j` is even and the graph of
/// `reps[(j - 1) / 2]` when `j` is odd.
struct Fiber {
    reps: Vec<(Rat, AffineBound)>,
}

impl Fiber {
    fn new(bounds: &BTreeSet<AffineBound>, base: &[Rat]) -> Fiber {
        let mut vals: Vec<(Rat, AffineBound)> = bounds
            .iter()
            .map(|b| (b.eval(base).expect("finite"), b.clone()))
            .collect();
        // equal values keep the lexicographically least function
        vals.sort();
        vals.dedup_by(|later, earlier| later.0 == earlier.0);
        Fiber { reps: vals }
    }

    fn len(&self) -> usize {
        2 * self.reps.len() + 1
    }

    fn lower(&self, j: usize) -> AffineBound {
        if j == 0 {
            AffineBound::NegInf
        } else {
            self.reps[j / 2 - 1].1.clone()
        }
    }

    fn upper(&self, j: usize) -> AffineBound {
        if j / 2 == self.reps.len() {
            AffineBound::PosInf
        } else {
            self.reps[j / 2].1.clone()
        }
    }

    fn sample(&self, j: usize) -> Rat {
        if j % 2 == 1 {
            return self.reps[(j - 1) / 2].0.clone();
        }
        let lo = (j > 0).then(|| self.reps[j / 2 - 1].0.clone());
        let hi = (j / 2 < self.reps.len()).then(|| self.reps[j / 2].0.clone());
        band_sample(lo, hi)
    }

    fn coord(&self, j: usize) -> CellCoord {
        if j % 2 == 1 {
            CellCoord::Graph(self.reps[(j - 1) / 2].1.clone())
        } else {
            CellCoord::Band(self.lower(j), self.upper(j))
        }
    }

    /// Cells for a maximal run `s..=e` of fiber positions: a leading graph,
    /// one band spanning the interior, a trailing graph.
    fn merged(&self, s: usize, e: usize) -> Vec<CellCoord> {
        let mut out = Vec::new();
        let mut s = s;
        let mut e = e;
        if s % 2 == 1 {
            out.push(self.coord(s));
            s += 1;
        }
        let trailing = (e % 2 == 1 && e >= s).then_some(e);
        if e % 2 == 1 {
            e -= 1;
        }
        if s <= e && s.is_multiple_of(2) {
            out.push(CellCoord::Band(self.lower(s), self.upper(e)));
        }
        if let Some(t) = trailing {
            out.push(self.coord(t));
        }
        out
    }
}

/// Maximal runs of consecutive `true` entries, as inclusive ranges.
fn runs(truth: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &t) in truth.iter().enumerate() {
        match (t, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, truth.len() - 1));
    }
    out
}

struct Lifted {
    cell: GammaCell,
    sample: Vec<Rat>,
}

fn cad(region: &GammaFormula, mut factors: BTreeSet<Factor>, top: bool) -> Vec<Lifted> {
    let n = region.nvars();
    for a in region.expr().atoms() {
        if let Some(f) = Factor::new(a.coeffs().to_vec(), a.rhs().clone()) {
            factors.insert(f);
        }
    }
    if n == 0 {
        return if region.eval(&[]) {
            vec![Lifted { cell: GammaCell::new(vec![]), sample: vec![] }]
        } else {
            vec![]
        };
    }
    let k = n - 1;
    let mut bounds: BTreeSet<AffineBound> = BTreeSet::new();
    let mut forms: Vec<LinForm> = Vec::new();
    let mut pass: BTreeSet<Factor> = BTreeSet::new();
    for f in &factors {
        if f.coeffs[k] != 0 {
            let form = f.as_bound();
            if bounds.insert(AffineBound::from_form(&form)) {
                forms.push(form);
            }
        } else if let Some(g) = Factor::new(f.coeffs[..k].to_vec(), f.rhs.clone()) {
            pass.insert(g);
        }
    }
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if let Some(g) = forms[i].sub(&forms[j]).zero_factor() {
                pass.insert(g);
            }
        }
    }
    let keep: Vec<usize> = (0..k).collect();
    let base_region = fm::project(region, &keep);
    let base_cells = cad(&base_region, pass, false);

    let mut out = Vec::new();
    for base in base_cells {
        let fiber = Fiber::new(&bounds, &base.sample);
        let samples: Vec<Vec<Rat>> = (0..fiber.len())
            .map(|j| {
                let mut p = base.sample.clone();
                p.push(fiber.sample(j));
                p
            })
            .collect();
        let truth: Vec<bool> = samples.iter().map(|p| region.eval(p)).collect();
        if top {
            for (s, e) in runs(&truth) {
                for coord in fiber.merged(s, e) {
                    let mut coords = base.cell.bounds.clone();
                    coords.push(coord);
                    let cell = GammaCell::new(coords);
                    let sample = cell.sample_point();
                    out.push(Lifted { cell, sample });
                }
            }
        } else {
            for (j, p) in samples.into_iter().enumerate() {
                if truth[j] {
                    let mut coords = base.cell.bounds.clone();
                    coords.push(fiber.coord(j));
                    out.push(Lifted { cell: GammaCell::new(coords), sample: p });
                }
            }
        }
    }
    out
}

/// Partition of the set defined by `f` into pairwise disjoint cells.
pub fn cell_decompose(f: &GammaFormula) -> Vec<GammaCell> {
    cad(f, BTreeSet::new(), true).into_iter().map(|l| l.cell).collect()
}

/// Maximum cell dimension over a cell decomposition; `−∞` when empty.
pub fn dimension(f: &GammaFormula) -> Dim {
    cell_decompose(f)
        .iter()
        .map(|c| Dim::Finite(c.dim()))
        .max()
        .unwrap_or(Dim::NegInf)
}

/// End of a maximal interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Unbounded,
    Open(Rat),
    Closed(Rat),
}

impl Endpoint {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Endpoint::Unbounded => None,
            Endpoint::Open(v) | Endpoint::Closed(v) => Some(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn contains(&self, x: &Rat) -> bool {
        let above = match &self.lo {
            Endpoint::Unbounded => true,
            Endpoint::Open(v) => x > v,
            Endpoint::Closed(v) => x >= v,
        };
        let below = match &self.hi {
            Endpoint::Unbounded => true,
            Endpoint::Open(v) => x < v,
            Endpoint::Closed(v) => x <= v,
        };
        above && below
    }
}

/// Canonical form of a one-variable Γ-definable set: its maximal intervals
/// (`M` of them) and isolated points (`N`), both in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalType {
    pub intervals: Vec<Interval>,
    pub points: Vec<Rat>,
}

impl IntervalType {
    /// The type `(M, N)`.
    pub fn type_mn(&self) -> (usize, usize) {
        (self.intervals.len(), self.points.len())
    }

    /// `Bd(A)`: interval endpoints and isolated points, sorted.
    pub fn boundary(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .intervals
            .iter()
            .flat_map(|i| [i.lo.value().cloned(), i.hi.value().cloned()])
            .flatten()
            .chain(self.points.iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.points.contains(x) || self.intervals.iter().any(|i| i.contains(x))
    }
}

impl fmt::Display for IntervalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Option<Rat>, String)> = Vec::new();
        for i in &self.intervals {
            let (l, lv) = match &i.lo {
                Endpoint::Unbounded => ("(-inf".to_string(), None),
                Endpoint::Open(v) => (format!("({v}"), Some(v.clone())),
                Endpoint::Closed(v) => (format!("[{v}"), Some(v.clone())),
            };
            let h = match &i.hi {
                Endpoint::Unbounded => "inf)".to_string(),
                Endpoint::Open(v) => format!("{v})"),
                Endpoint::Closed(v) => format!("{v}]"),
            };
            parts.push((lv, format!("{l}, {h}")));
        }
        for p in &self.points {
            parts.push((Some(p.clone()), format!("{{{p}}}")));
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        if parts.is_empty() {
            return f.write_str("{}");
        }
        let s: Vec<String> = parts.into_iter().map(|p| p.1).collect();
        f.write_str(&s.join(" u "))
    }
}

/// Maximal intervals and isolated points of a one-variable formula.
pub fn one_var_canonical(f: &GammaFormula) -> IntervalType {
    assert_eq!(f.nvars(), 1, "one_var_canonical needs exactly one variable");
    let mut bounds = BTreeSet::new();
    for a in f.expr().atoms() {
        bounds.insert(AffineBound::constant(a.rhs().div_int(a.coeff(0))));
    }
    let fiber = Fiber::new(&bounds, &[]);
    let truth: Vec<bool> = (0..fiber.len()).map(|j| f.eval(&[fiber.sample(j)])).collect();
    let value = |j: usize| fiber.reps[(j - 1) / 2].0.clone();
    let mut intervals = Vec::new();
    let mut points = Vec::new();
    for (s, e) in runs(&truth) {
        if s == e && s % 2 == 1 {
            points.push(value(s));
            continue;
        }
        let lo = if s % 2 == 1 {
            Endpoint::Closed(value(s))
        } else if s == 0 {
            Endpoint::Unbounded
        } else {
            Endpoint::Open(value(s - 1))
        };
        let hi = if e % 2 == 1 {
            Endpoint::Closed(value(e))
        } else if e / 2 == fiber.reps.len() {
            Endpoint::Unbounded
        } else {
            Endpoint::Open(value(e + 1))
        };
        intervals.push(Interval { lo, hi });
    }
    IntervalType { intervals, points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::parse_formula;

    fn f(s: &str) -> GammaFormula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn runs_and_merge() {
        assert_eq!(runs(&[true, false, true, true]), vec![(0, 0), (2, 3)]);
        assert_eq!(runs(&[false, false]), vec![]);
    }

    #[test]
    fn interval_types() {
        let t = one_var_canonical(&f("0 < x1 < 1 | x1 = 2"));
        assert_eq!(t.type_mn(), (1, 1));
        assert_eq!(t.boundary(), vec![Rat::zero(), Rat::one(), Rat::from_int(2)]);
        let t = one_var_canonical(&f("x1 <= 0"));
        assert_eq!(t.type_mn(), (1, 0));
        assert_eq!(t.intervals[0].hi, Endpoint::Closed(Rat::zero()));
        let t = one_var_canonical(&f("x1 < 1 & x1 != 0"));
        assert_eq!(t.type_mn(), (2, 0));
        assert_eq!(t.to_string(), "(-inf, 0) u (0, 1)");
        let t = one_var_canonical(&f("x1 < 0 & x1 > 0"));
        assert_eq!(t.type_mn(), (0, 0));
    }

    #[test]
    fn small_decompositions() {
        let c = cell_decompose(&f("0 < x1 & x1 < 1"));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].signature(), &[1]);

        let c = cell_decompose(&f("0 < x1 & x1 < 1 & x2 = x1"));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].signature(), &[1, 0]);
        assert_eq!(
            c[0].bounds()[1],
            CellCoord::Graph(AffineBound::Finite { coeffs: vec![1], constant: Rat::zero(), div: 1 })
        );

        let c = cell_decompose(&f("0 < x1 & x1 < 1 & x1 < x2 & x2 < x1 + 1"));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].signature(), &[1, 1]);

        assert!(cell_decompose(&f("x1 < 0 & x1 > 0")).is_empty());
        assert_eq!(cell_decompose(&GammaFormula::top(2)).len(), 1);
    }

    #[test]
    fn cell_membership_matches_formula_on_grid() {
        let g = f("0 < x1 & x1 < 1 & x2 = x1 | x1 >= 1 & 2*x2 <= x1");
        let cells = cell_decompose(&g);
        for a in -8..=16 {
            for b in -8..=16 {
                let p = [Rat::new(a, 8), Rat::new(b, 8)];
                let hits = cells.iter().filter(|c| c.contains(&p)).count();
                assert_eq!(hits, g.eval(&p) as usize, "at {p:?}");
            }
        }
        for c in &cells {
            assert!(c.contains(&c.sample_point()));
            assert!(!c.to_basic_set().is_empty());
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&GammaFormula::top(2)), Dim::Finite(2));
        assert_eq!(dimension(&f("x2 = x1")), Dim::Finite(1));
        assert_eq!(dimension(&f("x2 = x1 | 0 < x1 < 1 & 0 < x2 < 1")), Dim::Finite(2));
        assert_eq!(dimension(&f("x1 < 0 & x1 > 0")), Dim::NegInf);
        assert_eq!(dimension(&f("x1 = 1 & x2 = 2")), Dim::Finite(0));
    }

    #[test]
    fn bound_json() {
        let b = AffineBound::Finite { coeffs: vec![1, -2], constant: Rat::new(1, 2), div: 3 };
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"coeffs":[1,-2],"const":"1/2","div":3}"#);
        assert_eq!(serde_json::from_str::<AffineBound>(&s).unwrap(), b);
        assert_eq!(serde_json::to_string(&AffineBound::NegInf).unwrap(), "\"-inf\"");
        assert_eq!(b.to_string(), "(x1 - 2*x2 + 1/2)/3");
    }
}
