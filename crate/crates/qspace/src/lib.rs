//! Codes and designs in projective spaces over finite fields.
//!
//! `qspace` constructs, bounds and verifies error-correcting codes whose
//! codewords are subspaces of F_q^n: Grassmannian (constant-dimension) codes,
//! subspace codes under the subspace and injection metrics, rank-metric and
//! Ferrers-diagram rank-metric codes, spreads and partial spreads, q-analog
//! Steiner systems and covering designs. Everything is exact: field
//! arithmetic is table driven, bounds are unbounded integers, and design
//! verification is exhaustive at desk scale.
//!
//! The narrative guide lives in the `book/` directory (rendered with mdbook)
//! and is mirrored into [`guide`] so its code snippets run as doc-tests.

pub mod error;
pub mod field;
pub mod mat;
pub mod space;
pub mod rank;
pub mod construct;
pub mod bounds;
pub mod verify;
pub mod projections;
pub mod io;
pub mod guide;

pub use error::{Error, Result};

/// Number of worker threads for chunked scans, capped by the QSPACE_THREADS
/// environment variable (default: single-threaded).
pub fn worker_threads() -> usize {
    std::env::var("QSPACE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}
