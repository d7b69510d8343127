//! Fiber matrices `L_k` of the transition operator of a 1D pattern.

use alloc::format;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cell::PeriodicCell;
use crate::error::{Error, Result};
use crate::graph_model::PendantSpec1D;
use crate::linalg::{hermitian_eigenvalues, CMatrix};

/// Slack allowed when checking `|k| <= pi`, so that `PI` computed in
/// floating point and values like `2 * pi * j / n` are accepted.
const K_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochMatrix {
    pub k: Vec<f64>,
    pub entries: CMatrix,
    pub deg: Vec<usize>,
}

impl BlochMatrix {
    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub(crate) fn from_cell<const D: usize>(cell: &PeriodicCell<D>, k: [f64; D]) -> Self {
        BlochMatrix {
            k: k.to_vec(),
            entries: cell.transition(k),
            deg: cell.degrees().to_vec(),
        }
    }
}

pub(crate) fn check_momentum(k: f64) -> Result<()> {
    if !k.is_finite() || k.abs() > PI + K_SLACK {
        return Err(Error::Domain(format!("momentum {k} outside [-pi, pi]")));
    }
    Ok(())
}

/// `L_k` for the pattern, with rows ordered as backbone positions `1..=r`
/// followed by the end vertices. Coinciding bonds (periods 1 and 2) add up.
pub fn build_bloch(spec: &PendantSpec1D, k: f64) -> Result<BlochMatrix> {
    check_momentum(k)?;
    Ok(BlochMatrix::from_cell(&PeriodicCell::from_spec(spec), [k]))
}

/// `D^{1/2} L_k D^{-1/2}`, Hermitian and similar to `L_k`.
pub fn symmetrize(m: &BlochMatrix) -> CMatrix {
    let sq: Vec<f64> = m.deg.iter().map(|&d| libm::sqrt(d as f64)).collect();
    CMatrix::from_fn(m.dim(), |a, b| m.entries[(a, b)] * Complex64::new(sq[a] / sq[b], 0.0))
}

/// All eigenvalues of `L_k`, descending.
pub fn eigenvalues(m: &BlochMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(&symmetrize(m))
}
