//! Executable versions of the classification results: each suite quantifies a
//! statement over a catalog of finite groups and reports every counterexample
//! together with data to recompute it.

mod catalog;
mod report;
mod suites;

pub use catalog::{Catalog, CatalogEntry};
pub use report::{Failure, Finding, Skip, SuiteReport};
pub use suites::*;
