//! One valued-field variable over finite Puiseux elements: monomial
//! valuation pieces, relative cells over `K × Γⁿ` and mixed dimension.

mod decompose;
mod formula;
mod parse;
mod pieces;
mod puiseux;

pub use decompose::{
    apply_bijection, formula_pieces, mixed_cell_decompose, mixed_dimension, project_to_gamma,
    Bijection, MixedCell, MixedDimension,
};
pub use formula::{gamma_expr_to_mixed, MixedAtom, MixedExpr, MixedFormula};
pub use parse::{parse_mixed, parse_mixed_n};
pub use pieces::{
    centers_of, monomial_decompose, monomial_valuation, piece_k_dimension, pieces_for_centers,
    MonomialValuation, SwissPiece,
};
pub use puiseux::{FactoredPoly, PuiseuxElement, Valuation};

pub(crate) use puiseux::parse_puiseux;
