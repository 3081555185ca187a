//! Relative cells over the valued field, mixed dimension and Γ-projection.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lowerset::{DimPoint2, LowerSet2};
use crate::rat::Rat;
use crate::semilinear::{cell_decompose, project, Expr, GammaCell, GammaFormula};

use super::formula::{MixedAtom, MixedExpr, MixedFormula};
use super::pieces::{centers_of, pieces_for_centers, SwissPiece};
use super::puiseux::{PuiseuxElement, Valuation};

/// Mixed dimension of a subset of `K × Γⁿ`.
pub type MixedDimension = LowerSet2;

/// A family of Γ-cells over a piece of the valued field. For an infinite
/// piece the fiber lives over `(ρ, g1..gn)` with `ρ = v(x − center)`, and
/// the fiber over a point `x` is the slice at `ρ(x)`; for a point piece it
/// lives over `g1..gn` directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedCell {
    pub base: SwissPiece,
    pub kdim: u32,
    #[serde(flatten)]
    pub fiber: GammaCell,
}

impl MixedCell {
    fn linked(&self) -> bool {
        self.kdim == 1
    }

    /// `(kdim, i₁ + … + iₙ)`, the signature of the radius coordinate left out.
    pub fn dim(&self) -> DimPoint2 {
        let sig = self.fiber.signature();
        let skip = self.linked() as usize;
        DimPoint2::new(self.kdim, sig[skip..].iter().map(|&i| i as u32).sum())
    }

    pub fn contains(&self, x: &PuiseuxElement, gamma: &[Rat]) -> bool {
        if !self.base.contains(x) {
            return false;
        }
        if !self.linked() {
            return self.fiber.contains(gamma);
        }
        match self.base.radius_of(x) {
            Valuation::Infinite => false,
            Valuation::Finite(rho) => {
                let mut p = Vec::with_capacity(gamma.len() + 1);
                p.push(rho);
                p.extend_from_slice(gamma);
                self.fiber.contains(&p)
            }
        }
    }

    /// `π(C)`, the image in `Γⁿ`.
    pub fn projection(&self) -> GammaFormula {
        let own = self.fiber.to_basic_set().to_formula();
        if self.linked() {
            let keep: Vec<usize> = (1..own.nvars()).collect();
            project(&own, &keep)
        } else {
            own
        }
    }
}

impl fmt::Display for MixedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        write!(f, "({},{})-cell over [{}]: {}", d.0[0], d.0[1], self.base, self.fiber)
    }
}

/// Pieces induced by every polynomial of `f`.
pub fn formula_pieces(f: &MixedFormula) -> Vec<SwissPiece> {
    pieces_for_centers(&centers_of(&f.polys()))
}

/// Partition of the set of `f` into mixed cells, ordered by piece.
pub fn mixed_cell_decompose(f: &MixedFormula) -> Vec<MixedCell> {
    let mut out = Vec::new();
    for piece in formula_pieces(f) {
        let g = f.on_piece(&piece);
        for fiber in cell_decompose(&g) {
            out.push(MixedCell { base: piece.clone(), kdim: piece.k_dimension(), fiber });
        }
    }
    out
}

pub fn mixed_dimension(f: &MixedFormula) -> MixedDimension {
    LowerSet2::lower_closure(mixed_cell_decompose(f).iter().map(MixedCell::dim))
}

/// `{γ : ∃x (x, γ) ∈ S}`.
pub fn project_to_gamma(f: &MixedFormula) -> GammaFormula {
    let n = f.ngamma();
    let keep: Vec<usize> = (1..=n).collect();
    let parts: Vec<Expr> = formula_pieces(f)
        .iter()
        .map(|piece| {
            let g = f.on_piece(piece);
            if piece.k_dimension() == 1 {
                project(&g, &keep).expr().clone()
            } else {
                g.expr().clone()
            }
        })
        .collect();
    GammaFormula::new(n, Expr::or(parts)).expect("arity is consistent")
}

/// A definable bijection of `K × Γⁿ` of one of the supported shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bijection {
    /// `g_i ↦ g_{perm[i]}` (0-based).
    PermuteGamma(Vec<usize>),
    /// `g ↦ g + c`.
    TranslateGamma(Vec<Rat>),
    /// `g ↦ M·g` with `M ∈ GL(n, ℤ)`, given by rows.
    Unimodular(Vec<Vec<i64>>),
    /// `x ↦ x − a`.
    TranslateK(PuiseuxElement),
}

/// Formula for the image of the set of `f` under `b`.
pub fn apply_bijection(f: &MixedFormula, b: &Bijection) -> Result<MixedFormula> {
    let n = f.ngamma();
    // how a Γ-part `(a, rhs)` of an atom transforms
    let gamma_map: Box<dyn Fn(&[i64], &Rat) -> (Vec<i64>, Rat)> = match b {
        Bijection::PermuteGamma(perm) => {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
                return Err(Error::Invalid(format!("not a permutation of {n} Γ-variables")));
            }
            let perm = perm.clone();
            Box::new(move |a, r| {
                let mut out = vec![0; a.len()];
                for (i, c) in a.iter().enumerate() {
                    out[perm[i]] = *c;
                }
                (out, r.clone())
            })
        }
        Bijection::TranslateGamma(c) => {
            if c.len() != n {
                return Err(Error::Arity { expected: n, found: c.len() });
            }
            let c = c.clone();
            Box::new(move |a, r| {
                let mut r = r.clone();
                for (ai, ci) in a.iter().zip(&c) {
                    r += &ci.mul_int(*ai);
                }
                (a.to_vec(), r)
            })
        }
        Bijection::Unimodular(m) => {
            let inv = unimodular_inverse(m, n)?;
            Box::new(move |a, r| {
                let out = (0..n).map(|j| (0..n).map(|i| a[i] * inv[i][j]).sum()).collect();
                (out, r.clone())
            })
        }
        Bijection::TranslateK(s) => {
            let expr = f.expr().map_atoms(&mut |atom| {
                MixedExpr::Atom(match atom {
                    MixedAtom::Zero(p) => MixedAtom::Zero(p.translated(s)),
                    MixedAtom::Val { terms, gamma, rel, rhs } => MixedAtom::Val {
                        terms: terms.iter().map(|(w, p)| (*w, p.translated(s))).collect(),
                        gamma: gamma.clone(),
                        rel: *rel,
                        rhs: rhs.clone(),
                    },
                })
            });
            return MixedFormula::new(n, expr);
        }
    };
    let expr = f.expr().map_atoms(&mut |atom| match atom {
        MixedAtom::Zero(_) => MixedExpr::Atom(atom.clone()),
        MixedAtom::Val { terms, gamma, rel, rhs } => {
            let (g, r) = gamma_map(gamma, rhs);
            MixedAtom::val(terms.clone(), g, *rel, r)
        }
    });
    MixedFormula::new(n, expr)
}

/// Integer inverse of an `n × n` matrix with determinant ±1.
fn unimodular_inverse(m: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Arity { expected: n, found: m.len() });
    }
    // Gauss–Jordan over ℚ on [M | I]
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_int(x)).collect();
            r.extend((0..n).map(|j| Rat::from_int((i == j) as i64)));
            r
        })
        .collect();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::NonUnimodular)?;
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..2 * n {
                    let sub = &factor * &a[col][j];
                    a[r][j] -= &sub;
                }
            }
        }
    }
    if det.abs() != Rat::one() {
        return Err(Error::NonUnimodular);
    }
    Ok(a.iter()
        .map(|row| row[n..].iter().map(|x| x.to_i64().expect("integral inverse")).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedcell::parse_mixed;
    use crate::semilinear::{dimension, equivalent, parse_formula_n};
    use crate::Dim;

    fn p(s: &str) -> PuiseuxElement {
        PuiseuxElement::parse(s).unwrap()
    }

    fn dims(f: &MixedFormula) -> Vec<(u32, u32)> {
        mixed_dimension(f).maxima().iter().map(|d| (d.0[0], d.0[1])).collect()
    }

    #[test]
    fn graph_over_annulus() {
        let f = parse_mixed("g1 = v(x) & 0 < v(x) < 1").unwrap();
        let cells = mixed_cell_decompose(&f);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].dim(), DimPoint2::new(1, 0));
        assert_eq!(cells[0].fiber.signature(), &[1, 0]);
        for (x, g, inside) in [("t^(1/2)", Rat::new(1, 2), true), ("t^(1/2)", Rat::one(), false), ("t", Rat::one(), false)] {
            assert_eq!(cells[0].contains(&p(x), std::slice::from_ref(&g)), inside);
            assert_eq!(f.eval(&p(x), &[g]), inside);
        }
    }

    #[test]
    fn examples() {
        assert_eq!(dims(&parse_mixed("v(x) >= 0 & 0 < g1 < 1").unwrap()), [(1, 1)]);
        assert_eq!(dims(&parse_mixed("x = 0 & g1 = g1").unwrap()), [(0, 1)]);
        let ex2 = parse_mixed("(x - 1) = 0 & 0 < g1 < 1 & 0 < g2 < 1 | v(x) >= 0 & g1 = 2 & g2 = 3").unwrap();
        assert_eq!(dims(&ex2), [(0, 2), (1, 0)]);
        assert_eq!(mixed_dimension(&ex2).dim_nat(), Dim::Finite(2));
        let full = parse_mixed("g1 = g1 & g2 = g2").unwrap();
        assert_eq!(dims(&full), [(1, 2)]);
        assert!(mixed_dimension(&parse_mixed("v(x) < 0 & v(x) > 1").unwrap()).is_empty());
    }

    #[test]
    fn projections() {
        let f = parse_mixed("g1 = v(x) & 0 < v(x) < 1").unwrap();
        assert!(equivalent(&project_to_gamma(&f), &parse_formula_n("0 < x1 < 1", 1).unwrap()));
        let g = parse_mixed("g1 = v(x) & g2 = v(x)").unwrap();
        let pg = project_to_gamma(&g);
        assert!(equivalent(&pg, &parse_formula_n("x1 = x2", 2).unwrap()));
        assert_eq!(dimension(&pg), Dim::Finite(1));
        let h = parse_mixed("v(x) = 0 & g1 = v(x)").unwrap();
        assert!(equivalent(&project_to_gamma(&h), &parse_formula_n("x1 = 0", 1).unwrap()));
        for c in mixed_cell_decompose(&g) {
            let d = c.dim();
            assert!(dimension(&c.projection()) <= Dim::Finite(d.0[0] + d.0[1]));
        }
    }

    #[test]
    fn bijections() {
        let f = parse_mixed("g1 = v(x) & 0 < g2 < 1").unwrap();
        let swapped = apply_bijection(&f, &Bijection::PermuteGamma(vec![1, 0])).unwrap();
        assert_eq!(swapped, parse_mixed("g2 = v(x) & 0 < g1 < 1").unwrap());
        let k = parse_mixed("v(x) = 0").unwrap();
        let moved = apply_bijection(&k, &Bijection::TranslateK(p("t"))).unwrap();
        assert_eq!(moved, parse_mixed("v(x + t) = 0").unwrap());
        let box1 = parse_mixed("0 < g1 < 1").unwrap();
        let shifted = apply_bijection(&box1, &Bijection::TranslateGamma(vec![Rat::one()])).unwrap();
        assert!(shifted.eval(&p("0"), &[Rat::new(3, 2)]) && !shifted.eval(&p("0"), &[Rat::new(1, 2)]));
        let shear = apply_bijection(&f, &Bijection::Unimodular(vec![vec![1, 1], vec![0, 1]])).unwrap();
        // (g1, g2) ↦ (g1 + g2, g2)
        assert!(shear.eval(&p("t"), &[Rat::new(3, 2), Rat::new(1, 2)]));
        assert_eq!(mixed_dimension(&shear), mixed_dimension(&f));
        assert!(matches!(
            apply_bijection(&f, &Bijection::Unimodular(vec![vec![2, 0], vec![0, 1]])),
            Err(Error::NonUnimodular)
        ));
    }

    #[test]
    fn cell_json() {
        let f = parse_mixed("g1 = v(x) & 0 < v(x) < 1").unwrap();
        let c = &mixed_cell_decompose(&f)[0];
        let s = serde_json::to_string(c).unwrap();
        assert!(s.starts_with(r#"{"base":{"kind":"annulus","center":"0","lo":null,"hi":null},"kdim":1,"signature":[1,0]"#), "{s}");
        assert_eq!(&serde_json::from_str::<MixedCell>(&s).unwrap(), c);
    }
}
