//! One runner per acceptance criterion.

pub mod figures;
pub mod gamma;
pub mod mixed;
pub mod trop;

use crate::report::{Config, Report};

/// Criterion `id` (1 to 7).
pub fn criterion(id: u8, cfg: &Config) -> Option<Report> {
    Some(match id {
        1 => figures::run(),
        2 => gamma::elimination(cfg),
        3 => gamma::cells(cfg),
        4 => gamma::axioms(cfg),
        5 => mixed::run(cfg),
        6 => trop::run(cfg),
        7 => gamma::closures(cfg),
        _ => return None,
    })
}

/// The randomized property suites, criteria 2 to 7.
pub fn axioms(cfg: &Config) -> Vec<Report> {
    (2..=7).filter_map(|id| criterion(id, cfg)).collect()
}

/// Every criterion, figures included.
pub fn paper_suite(cfg: &Config) -> Vec<Report> {
    (1..=7).filter_map(|id| criterion(id, cfg)).collect()
}
