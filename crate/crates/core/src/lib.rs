//! Spectral analysis of transition operators on periodic graphs built from
//! `Z` and `Z^2` by attaching pendant edges.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure:
//!
//! - [`graph_model`]: 1D pendant patterns, canonical forms, isomorphism and the
//!   run decomposition of a cell.
//! - [`bloch`]: fiber matrices `L_k` and a dense Hermitian eigensolver.
//! - [`charpoly`]: exact integer characteristic polynomials and the
//!   dispersion function `D(lambda)`.
//! - [`bands`]: band intervals, gaps, flat band and sampled band functions.
//! - [`lattice2d`]: the same machinery on `Z^2` with a sublattice of pendants.
//! - [`oracle`]: brute-force cross-checks (periodic truncations, permutation
//!   expansion of determinants).
//! - [`verify`]: invariant suites run by the `verify` command.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bands;
pub mod bloch;
pub mod cell;
pub mod charpoly;
mod error;
pub mod graph_model;
pub mod lattice2d;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod verify;

pub use bands::{analyze, band_function, band_structure, spectral_gap, Band, BandStructure, Report};
pub use bloch::{build_bloch, eigenvalues, symmetrize, BlochMatrix};
pub use charpoly::{eval_d, eval_f, extract, CharPoly};
pub use error::{Error, Result};
pub use graph_model::{decompose, degrees, is_isomorphic, normalize, CellDecomposition, PendantSpec1D};
pub use lattice2d::{build_bloch_2d, char_poly_residual_2d, scan_spectrum_2d, PendantSpec2D, SpectrumSample2D};

/// Eigenvalues closer to zero than this are counted as the flat band.
pub const ZERO_TOL: f64 = 1e-9;

/// Tolerance for comparing eigenvalues with each other.
pub const EIG_TOL: f64 = 1e-10;
