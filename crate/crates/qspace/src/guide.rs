//! The narrative guide, mirrored from `book/src/` so that every code snippet
//! in the book runs as a doc-test. Build the rendered book with
//! `mdbook build book/`; read it here for docs.rs-style navigation.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/subspaces-and-metrics.md")]
pub mod subspaces_and_metrics {}

#[doc = include_str!("../../../book/src/rank-metric-codes.md")]
pub mod rank_metric_codes {}

#[doc = include_str!("../../../book/src/multilevel-construction.md")]
pub mod multilevel_construction {}

#[doc = include_str!("../../../book/src/spreads-and-bounds.md")]
pub mod spreads_and_bounds {}

#[doc = include_str!("../../../book/src/designs-and-coverings.md")]
pub mod designs_and_coverings {}

#[doc = include_str!("../../../book/src/projections-method.md")]
pub mod projections_method {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
