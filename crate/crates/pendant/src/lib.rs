//! File formats and command-line front end for `pendant-core`.
//!
//! - [`spec_file`]: JSON pattern files (`{"dim": 1, ...}` / `{"dim": 2, ...}`).
//! - [`report`]: JSON records for analysis, characteristic polynomials and
//!   2D scans, with every float written to 17 significant digits.
//! - [`export`]: CSV band samples and pooled 2D eigenvalues.
//! - [`cli`]: the `pendant` binary.

pub mod cli;
pub mod export;
pub mod report;
pub mod spec_file;
