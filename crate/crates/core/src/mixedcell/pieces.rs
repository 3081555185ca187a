//! Decomposition of the valued field into pieces on which every tracked
//! polynomial has a monomial valuation `c + n·ρ`, `ρ = v(x − center)`.
//!
//! With `R` the set of all roots, a center `a ∈ R` sees the critical radii
//! `v(a − b)`, `b ∈ R \ {a}`. Between consecutive critical radii lies an open
//! annulus; on a critical sphere `v(x − a) = r` the generic part (no deeper
//! branch entered) is one piece, while the points entering a branch `b` are
//! covered by the annuli around `b`. A piece reachable from several centers
//! is kept only at the least of them, so the pieces partition the field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

use super::puiseux::{FactoredPoly, PuiseuxElement, Valuation};

/// A Swiss-cheese piece of the valued field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SwissPiece {
    /// `lo < v(x − center) < hi`, a missing end being infinite; `x = center`
    /// is excluded.
    Annulus { center: PuiseuxElement, lo: Option<Rat>, hi: Option<Rat> },
    /// `v(x − center) = radius` and `v(x − b) = radius` for every `b` in
    /// `avoid`, the tracked roots on the same sphere.
    Sphere { center: PuiseuxElement, radius: Rat, avoid: Vec<PuiseuxElement> },
    /// The single point `center`.
    Point { center: PuiseuxElement },
}

impl SwissPiece {
    pub fn center(&self) -> &PuiseuxElement {
        match self {
            SwissPiece::Annulus { center, .. }
            | SwissPiece::Sphere { center, .. }
            | SwissPiece::Point { center } => center,
        }
    }

    /// `ρ = v(x − center)`.
    pub fn radius_of(&self, x: &PuiseuxElement) -> Valuation {
        (x - self.center()).valuation()
    }

    pub fn contains(&self, x: &PuiseuxElement) -> bool {
        match self {
            SwissPiece::Point { center } => x == center,
            SwissPiece::Annulus { lo, hi, .. } => match self.radius_of(x) {
                Valuation::Infinite => false,
                Valuation::Finite(r) => {
                    lo.as_ref().is_none_or(|l| *l < r) && hi.as_ref().is_none_or(|h| r < *h)
                }
            },
            SwissPiece::Sphere { radius, avoid, .. } => {
                let on = |c: &PuiseuxElement| (x - c).valuation() == Valuation::Finite(radius.clone());
                on(self.center()) && avoid.iter().all(on)
            }
        }
    }

    /// 0 for a point, 1 for every other (infinite, open) piece.
    pub fn k_dimension(&self) -> u32 {
        match self {
            SwissPiece::Point { .. } => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SwissPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rho = |c: &PuiseuxElement| {
            if c.is_zero() {
                "v(x)".to_string()
            } else {
                format!("v(x - ({c}))")
            }
        };
        match self {
            SwissPiece::Point { center } => write!(f, "x = {center}"),
            SwissPiece::Annulus { center, lo, hi } => {
                let lo = lo.as_ref().map_or("-inf".to_string(), |r| r.to_string());
                let hi = hi.as_ref().map_or("inf".to_string(), |r| r.to_string());
                write!(f, "{lo} < {} < {hi}", rho(center))
            }
            SwissPiece::Sphere { center, radius, avoid } => {
                write!(f, "{} = {radius}", rho(center))?;
                for b in avoid {
                    write!(f, ", {} = {radius}", rho(b))?;
                }
                Ok(())
            }
        }
    }
}

/// `v(f(x)) = constant + slope·ρ` on a piece, or identically `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialValuation {
    Affine { constant: Rat, slope: u32 },
    Infinite,
}

impl MonomialValuation {
    pub fn eval(&self, rho: &Valuation) -> Valuation {
        match (self, rho) {
            (MonomialValuation::Infinite, _) => Valuation::Infinite,
            (MonomialValuation::Affine { constant, slope: 0 }, _) => Valuation::Finite(constant.clone()),
            (MonomialValuation::Affine { .. }, Valuation::Infinite) => Valuation::Infinite,
            (MonomialValuation::Affine { constant, slope }, Valuation::Finite(r)) => {
                Valuation::Finite(constant + &r.mul_int(*slope as i64))
            }
        }
    }
}

fn distance(a: &PuiseuxElement, b: &PuiseuxElement) -> Valuation {
    (a - b).valuation()
}

/// Valuation of `f` on `piece`.
pub fn monomial_valuation(f: &FactoredPoly, piece: &SwissPiece) -> MonomialValuation {
    let a = piece.center();
    // roots at distance ≥ `deep` from the center contribute ρ, the rest a constant
    let deep = match piece {
        SwissPiece::Point { center } => {
            if f.is_root(center) {
                return MonomialValuation::Infinite;
            }
            Valuation::Infinite
        }
        SwissPiece::Annulus { hi, .. } => hi.clone().map_or(Valuation::Infinite, Valuation::Finite),
        SwissPiece::Sphere { radius, .. } => Valuation::Finite(radius.clone()),
    };
    let mut constant = Rat::zero();
    let mut slope = 0;
    for (root, m) in f.roots() {
        let d = distance(a, root);
        if d >= deep {
            slope += m;
        } else {
            let d = d.finite().expect("shallow root is at finite distance");
            constant += &d.mul_int(*m as i64);
        }
    }
    MonomialValuation::Affine { constant, slope }
}

/// Pieces generated by the roots `centers` (sorted, distinct, nonempty).
pub fn pieces_for_centers(centers: &[PuiseuxElement]) -> Vec<SwissPiece> {
    let mut out = Vec::new();
    for a in centers {
        // least center among those at distance ≥ r from `a` (including `a`)
        let least_within = |r: &Valuation| {
            centers
                .iter()
                .find(|b| distance(a, b) >= *r)
                .is_some_and(|b| b == a)
        };
        let mut crs: Vec<Rat> = centers
            .iter()
            .filter(|b| *b != a)
            .filter_map(|b| distance(a, b).finite().cloned())
            .collect();
        crs.sort();
        crs.dedup();
        let mut lo: Option<Rat> = None;
        for r in crs.iter().map(Some).chain([None]) {
            let hi = r.cloned();
            let hi_v = hi.clone().map_or(Valuation::Infinite, Valuation::Finite);
            if least_within(&hi_v) {
                out.push(SwissPiece::Annulus { center: a.clone(), lo: lo.clone(), hi: hi.clone() });
            }
            if let Some(r) = r {
                let rv = Valuation::Finite(r.clone());
                if least_within(&rv) {
                    let avoid = centers.iter().filter(|b| distance(a, b) == rv).cloned().collect();
                    out.push(SwissPiece::Sphere { center: a.clone(), radius: r.clone(), avoid });
                }
            }
            lo = hi;
        }
        out.push(SwissPiece::Point { center: a.clone() });
    }
    out
}

/// Tracked roots of `polys`, or `{0}` when there are none.
pub fn centers_of<'a>(polys: impl IntoIterator<Item = &'a FactoredPoly>) -> Vec<PuiseuxElement> {
    let mut centers: Vec<PuiseuxElement> = polys
        .into_iter()
        .flat_map(|f| f.roots().iter().map(|r| r.0.clone()))
        .collect();
    centers.sort();
    centers.dedup();
    if centers.is_empty() {
        centers.push(PuiseuxElement::zero());
    }
    centers
}

/// A partition of the field into pieces, each with the monomial valuation of
/// every input polynomial (in input order).
pub fn monomial_decompose(polys: &[FactoredPoly]) -> Vec<(SwissPiece, Vec<MonomialValuation>)> {
    pieces_for_centers(&centers_of(polys))
        .into_iter()
        .map(|p| {
            let vals = polys.iter().map(|f| monomial_valuation(f, &p)).collect();
            (p, vals)
        })
        .collect()
}

/// K-dimension of a piece.
pub fn piece_k_dimension(p: &SwissPiece) -> u32 {
    p.k_dimension()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PuiseuxElement {
        PuiseuxElement::parse(s).unwrap()
    }

    fn samples() -> Vec<PuiseuxElement> {
        let mut out = vec![p("0"), p("1"), p("t"), p("1 + t")];
        for base in ["0", "1", "t", "1 + t", "2*t", "1 + 2*t"] {
            for e in ["1/2", "1", "3/2", "2", "-1", "0"] {
                for c in ["1", "-1", "3"] {
                    out.push(&p(base) + &p(&format!("{c}*t^({e})")));
                }
            }
        }
        out
    }

    fn check_partition(polys: &[FactoredPoly]) {
        let dec = monomial_decompose(polys);
        for x in samples() {
            let hits: Vec<_> = dec.iter().filter(|(piece, _)| piece.contains(&x)).collect();
            assert_eq!(hits.len(), 1, "{x}: {:?}", hits.iter().map(|h| h.0.to_string()).collect::<Vec<_>>());
            let (piece, vals) = hits[0];
            let rho = piece.radius_of(&x);
            for (f, mv) in polys.iter().zip(vals) {
                assert_eq!(mv.eval(&rho), f.valuation_at(&x), "{f} at {x} on {piece}");
            }
        }
    }

    #[test]
    fn two_close_roots() {
        let f = FactoredPoly::parse("x*(x - t)").unwrap();
        let dec = monomial_decompose(std::slice::from_ref(&f));
        let shown: Vec<String> = dec.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(
            shown,
            [
                "-inf < v(x) < 1",
                "v(x) = 1, v(x - (t)) = 1",
                "1 < v(x) < inf",
                "x = 0",
                "1 < v(x - (t)) < inf",
                "x = t",
            ]
        );
        assert_eq!(dec[0].1[0], MonomialValuation::Affine { constant: Rat::zero(), slope: 2 });
        assert_eq!(dec[1].1[0], MonomialValuation::Affine { constant: Rat::zero(), slope: 2 });
        assert_eq!(dec[2].1[0], MonomialValuation::Affine { constant: Rat::one(), slope: 1 });
        assert_eq!(dec[3].1[0], MonomialValuation::Infinite);
        check_partition(&[f]);
    }

    #[test]
    fn single_root_and_translates() {
        let f = FactoredPoly::parse("x").unwrap();
        assert_eq!(monomial_decompose(std::slice::from_ref(&f)).len(), 2);
        check_partition(&[f]);
        check_partition(&[FactoredPoly::parse("(x - 1)*(x - 1 - t)").unwrap()]);
        check_partition(&[
            FactoredPoly::parse("x^2*(x - 1)").unwrap(),
            FactoredPoly::parse("(x - t)*(x - 2*t)*(x - 1 - t^2)").unwrap(),
        ]);
        check_partition(&[FactoredPoly::parse("5").unwrap()]);
    }

    #[test]
    fn point_pieces_have_dimension_zero() {
        let dec = monomial_decompose(&[FactoredPoly::parse("x*(x - t)").unwrap()]);
        let dims: Vec<u32> = dec.iter().map(|(p, _)| piece_k_dimension(p)).collect();
        assert_eq!(dims, [1, 1, 1, 0, 1, 0]);
    }
}
