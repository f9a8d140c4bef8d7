//! Exact and numeric toolkit around the integer system `Mx = D` attached to
//! the 2-skeleton of the `S_n`-simplex: symmetric-group combinatorics, the
//! assembled obstruction matrix, solvability decisions over GF(2) / GF(p) /
//! `ℚ` / `ℤ`, winding-number cross-validation with sampled block-unitary
//! paths, and the piecewise-equivalent pair of dynamical systems living on
//! the skeleton.

pub mod dynsys;
pub mod error;
pub mod linalg;
pub mod obstruction;
pub mod partition;
pub mod paths;
pub mod perm;
pub mod report;
pub mod skeleton;

pub use error::{Error, Result};

/// Toolkit version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
