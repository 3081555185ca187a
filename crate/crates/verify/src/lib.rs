//! Seeded property suites and reference oracles.
//!
//! Each acceptance criterion has a runner in [`suites`] returning a
//! [`Report`]. Random instances come from [`gen`], and the independent
//! reference computations they are checked against live in [`oracle`].

pub mod gen;
pub mod oracle;
mod report;
pub mod suites;

pub use report::{Config, Report};
