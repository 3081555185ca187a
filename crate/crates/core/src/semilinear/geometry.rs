//! Dimension by interior testing, topological closure and polyhedrality.

use serde::Serialize;

use crate::dim::Dim;

use super::atom::{LinearAtom, Rel};
use super::fm::{normalize_dnf, union_formula, BasicSet};
use super::formula::GammaFormula;

/// A polyhedron has nonempty interior iff its strict version (every `≤` made
/// `<`) is satisfiable and it has no equality.
fn has_interior(b: &BasicSet) -> bool {
    if b.atoms().iter().any(|a| a.rel() == Rel::Eq) {
        return false;
    }
    let strict = b
        .atoms()
        .iter()
        .map(|a| LinearAtom::nonconstant(a.coeffs().to_vec(), Rel::Lt, a.rhs().clone()));
    !BasicSet::new(b.nvars(), strict).is_empty()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Largest `d` such that some coordinate projection of a disjunct onto `ℚᵈ`
/// has nonempty interior. Independent of the cell decomposition.
pub fn interior_dimension(f: &GammaFormula) -> Dim {
    let n = f.nvars();
    let mut best = Dim::NegInf;
    for b in normalize_dnf(f) {
        for k in (0..=n).rev() {
            if Dim::Finite(k as u32) <= best {
                break;
            }
            let open = subsets_of_size(n, k)
                .iter()
                .any(|s| b.project(s).is_some_and(|p| has_interior(&p)));
            if open {
                best = Dim::Finite(k as u32);
                break;
            }
        }
    }
    best
}

/// Closure: every nonempty disjunct relaxed, empty disjuncts dropped.
pub fn closure(f: &GammaFormula) -> GammaFormula {
    let sets: Vec<BasicSet> = normalize_dnf(f).iter().map(BasicSet::relaxed).collect();
    union_formula(f.nvars(), &sets)
}

/// Outcome of [`is_polyhedral`]. When the set is polyhedral the witness is a
/// finite union of closed polyhedra defining it.
#[derive(Clone, Debug, Serialize)]
pub struct Polyhedrality {
    pub polyhedral: bool,
    pub witness: Option<Vec<BasicSet>>,
}

/// Whether `f` defines a finite union of closed polyhedra.
pub fn is_polyhedral(f: &GammaFormula) -> Polyhedrality {
    let dnf = normalize_dnf(f);
    if dnf.iter().all(BasicSet::is_closed_form) {
        return Polyhedrality { polyhedral: true, witness: Some(dnf) };
    }
    let closed: Vec<BasicSet> = dnf.iter().map(BasicSet::relaxed).collect();
    // closure ⊇ f always, so equality reduces to closure ∧ ¬f = ∅
    let gap = union_formula(f.nvars(), &closed).and(&f.negate());
    if normalize_dnf(&gap).is_empty() {
        Polyhedrality { polyhedral: true, witness: Some(closed) }
    } else {
        Polyhedrality { polyhedral: false, witness: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::{equivalent, parse_formula, parse_formula_n};

    fn f(s: &str) -> GammaFormula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn interior_examples() {
        assert_eq!(interior_dimension(&GammaFormula::top(2)), Dim::Finite(2));
        assert_eq!(interior_dimension(&f("x2 = x1")), Dim::Finite(1));
        assert_eq!(interior_dimension(&f("x1 = 1 & x2 = 2")), Dim::Finite(0));
        assert_eq!(interior_dimension(&f("x1 < 0 & x1 > 0")), Dim::NegInf);
        assert_eq!(interior_dimension(&f("x1 = x2 & x2 = x3")), Dim::Finite(1));
    }

    #[test]
    fn closure_examples() {
        assert!(equivalent(&closure(&f("0 < x1 <= 1")), &f("0 <= x1 <= 1")));
        let empty = closure(&f("x1 < 0 & x1 >= 0"));
        assert!(normalize_dnf(&empty).is_empty());
        let c = closure(&f("x1 < x2"));
        assert!(equivalent(&c, &parse_formula_n("x1 <= x2", 2).unwrap()));
    }

    #[test]
    fn polyhedrality() {
        assert!(is_polyhedral(&f("x1 <= 0 | x1 >= 1")).polyhedral);
        assert!(!is_polyhedral(&f("x1 < 0")).polyhedral);
        // written strict, closed as a set
        assert!(is_polyhedral(&f("x1 < 1 | x1 >= 0")).polyhedral);
        let g = f("0 < x1 < 1 | x2 < x1 & x1 != 3");
        assert!(is_polyhedral(&closure(&g)).polyhedral);
    }
}
