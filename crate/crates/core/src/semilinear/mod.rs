//! Γ-sort engine over the ordered group (ℚ, +, <).

mod atom;
mod cells;
mod fm;
mod formula;
mod geometry;
mod parse;

pub use atom::{LinearAtom, Normalized, Rel};
pub use cells::{
    cell_decompose, dimension, one_var_canonical, AffineBound, CellCoord, Endpoint, GammaCell,
    Interval, IntervalType,
};
pub use fm::{
    eliminate, equivalent, is_empty_formula, is_subset_formula, normalize_dnf, project,
    union_formula, BasicSet,
};
pub use formula::{Expr, GammaFormula};
pub use geometry::{closure, interior_dimension, is_polyhedral, Polyhedrality};
pub use parse::{parse_formula, parse_formula_n};
