//! Pendant-decorated square lattice `Z^2`.
//!
//! Pendants sit on the vertices congruent to a set of residues modulo a full
//! rank sublattice `Lambda = Z a1 + Z a2`. Momenta `(k1, k2)` are conjugate to
//! the generators `a1, a2`: a bond that crosses the translation
//! `n1 a1 + n2 a2` picks up `e^{i (k1 n1 + k2 n2)}`.

use alloc::format;
use alloc::vec::Vec;

use core::f64::consts::PI;

use crate::bloch::{check_momentum, BlochMatrix};
use crate::cell::{Bond, PeriodicCell};
use crate::error::{Error, Result};
use crate::linalg::{determinant, hermitian_eigenvalues};
use crate::bloch::symmetrize;
use crate::ZERO_TOL;

pub type Vec2 = [i64; 2];

const NEIGHBOURS: [Vec2; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantSpec2D {
    lattice: [Vec2; 2],
    residues: Vec<Vec2>,
    /// Hermite basis `(A, 0), (B, C)` of the sublattice with `0 <= B < A`.
    hermite: (i64, i64, i64),
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl PendantSpec2D {
    pub fn new(lattice: [Vec2; 2], residues: Vec<Vec2>) -> Result<Self> {
        let [[p1, q1], [p2, q2]] = lattice;
        let det = p1 * q2 - p2 * q1;
        if det == 0 {
            return Err(Error::InvalidSpec("lattice vectors are linearly dependent".into()));
        }
        // (B, C) = u a1 + v a2 with C = gcd(q1, q2); (A, 0) from the kernel
        // combination of the second coordinates.
        let (c, u, v) = ext_gcd(q1, q2);
        let (a, b) = if c == 0 {
            unreachable!("det != 0 forces a nonzero second coordinate")
        } else {
            let a = ((q2 / c) * p1 - (q1 / c) * p2).abs();
            let b = (u * p1 + v * p2).rem_euclid(a);
            (a, b)
        };
        debug_assert_eq!(a * c, det.abs());
        let mut spec = PendantSpec2D { lattice, residues: Vec::new(), hermite: (a, b, c) };
        let mut reduced: Vec<Vec2> = Vec::with_capacity(residues.len());
        for r in residues {
            let rep = spec.reduce(r);
            if reduced.contains(&rep) {
                return Err(Error::InvalidSpec(format!(
                    "pendant residue {r:?} duplicates another modulo the lattice"
                )));
            }
            reduced.push(rep);
        }
        spec.residues = reduced;
        spec.residues.sort_by_key(|x| (x[1], x[0]));
        Ok(spec)
    }

    pub fn lattice(&self) -> [Vec2; 2] {
        self.lattice
    }

    /// Canonical representatives of the pendant residues.
    pub fn residues(&self) -> &[Vec2] {
        &self.residues
    }

    /// `|det(a1, a2)|`, the number of backbone vertices per cell.
    pub fn index(&self) -> usize {
        (self.hermite.0 * self.hermite.2) as usize
    }

    /// Canonical representative of `x` modulo the sublattice, in the box
    /// `0 <= x < A`, `0 <= y < C`.
    pub fn reduce(&self, x: Vec2) -> Vec2 {
        let (a, b, c) = self.hermite;
        let m = x[1].div_euclid(c);
        let y = x[1] - m * c;
        let xx = (x[0] - m * b).rem_euclid(a);
        [xx, y]
    }

    /// Coordinates `(n1, n2)` of a sublattice vector in the basis `a1, a2`.
    pub fn coordinates(&self, t: Vec2) -> Option<[i64; 2]> {
        let [[p1, q1], [p2, q2]] = self.lattice;
        let det = p1 * q2 - p2 * q1;
        let n1 = t[0] * q2 - t[1] * p2;
        let n2 = -t[0] * q1 + t[1] * p1;
        if n1 % det != 0 || n2 % det != 0 {
            return None;
        }
        Some([n1 / det, n2 / det])
    }

    pub fn has_pendant(&self, x: Vec2) -> bool {
        self.residues.contains(&self.reduce(x))
    }

    /// Canonical backbone representatives, ordered by `(y, x)`.
    pub fn representatives(&self) -> Vec<Vec2> {
        let (a, _, c) = self.hermite;
        (0..c).flat_map(|y| (0..a).map(move |x| [x, y])).collect()
    }

    pub fn cell(&self) -> PeriodicCell<2> {
        self.cell_with_representatives(&self.representatives())
            .expect("canonical representatives are valid")
    }

    /// Cell built on an arbitrary choice of representatives: `reps[i]` must
    /// be congruent to the `i`-th canonical representative.
    pub fn cell_with_representatives(&self, reps: &[Vec2]) -> Result<PeriodicCell<2>> {
        let canonical = self.representatives();
        if reps.len() != canonical.len()
            || reps.iter().zip(&canonical).any(|(r, c)| self.reduce(*r) != *c)
        {
            return Err(Error::InvalidSpec("representatives do not match the cosets".into()));
        }
        let index_of = |x: Vec2| -> usize {
            let red = self.reduce(x);
            canonical.iter().position(|c| *c == red).expect("reduced point is canonical")
        };
        let m = reps.len();
        let mut degrees = Vec::with_capacity(m + self.residues.len());
        let mut bonds = Vec::new();
        for (i, &x) in reps.iter().enumerate() {
            degrees.push(if self.has_pendant(x) { 5 } else { 4 });
            for e in NEIGHBOURS {
                let y = [x[0] + e[0], x[1] + e[1]];
                let j = index_of(y);
                let t = [y[0] - reps[j][0], y[1] - reps[j][1]];
                let shift = self.coordinates(t).ok_or_else(|| {
                    Error::Consistency(format!("{t:?} is not a lattice vector"))
                })?;
                bonds.push(Bond { from: i, to: j, shift });
            }
        }
        for (p, res) in self.residues.iter().enumerate() {
            let i = index_of(*res);
            bonds.push(Bond { from: i, to: m + p, shift: [0, 0] });
            bonds.push(Bond { from: m + p, to: i, shift: [0, 0] });
            degrees.push(1);
        }
        Ok(PeriodicCell::new(degrees, bonds))
    }
}

pub fn build_bloch_2d(spec: &PendantSpec2D, k1: f64, k2: f64) -> Result<BlochMatrix> {
    check_momentum(k1)?;
    check_momentum(k2)?;
    Ok(BlochMatrix::from_cell(&spec.cell(), [k1, k2]))
}

/// `det(adjacency_k - lambda D)`; vanishes exactly on the fiber spectrum.
/// The determinant of this Hermitian pencil is real.
pub fn char_poly_residual_2d(spec: &PendantSpec2D, k1: f64, k2: f64, lambda: f64) -> f64 {
    determinant(&spec.cell().pencil([k1, k2], lambda)).re
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSample2D {
    /// Momenta per axis (the grid is the product with itself).
    pub grid: Vec<f64>,
    /// Fiber spectra, one block of `cell size` values per `(k1, k2)` in
    /// row-major order over `grid x grid`.
    pub fiber_eigenvalues: Vec<f64>,
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue above [`ZERO_TOL`], if any.
    pub min_positive: Option<f64>,
    /// Largest distance between consecutive values of the sorted pool with
    /// `-1` and `1` appended.
    pub max_spacing: f64,
    /// Eigenvalues with `|x| < ZERO_TOL`.
    pub zero_count: usize,
}

impl SpectrumSample2D {
    pub fn cell_size(&self) -> usize {
        self.fiber_eigenvalues.len() / (self.grid.len() * self.grid.len()).max(1)
    }

    /// Largest distance from a pooled eigenvalue to the nearest negated
    /// pooled eigenvalue.
    pub fn symmetry_defect(&self) -> f64 {
        let neg: Vec<f64> = self.eigenvalues.iter().rev().map(|x| -x).collect();
        let mut worst = 0.0f64;
        let mut j = 0;
        for &x in &self.eigenvalues {
            while j + 1 < neg.len() && neg[j + 1] <= x {
                j += 1;
            }
            let mut d = (neg[j] - x).abs();
            if j + 1 < neg.len() {
                d = d.min((neg[j + 1] - x).abs());
            }
            worst = worst.max(d);
        }
        worst
    }
}

/// Momenta `-pi + 2 pi j / (m - 1)`, `j = 0..m`.
pub fn brillouin_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| -PI + 2.0 * PI * j as f64 / (m - 1) as f64).collect()
}

pub fn scan_spectrum_2d(spec: &PendantSpec2D, m: usize) -> Result<SpectrumSample2D> {
    if m < 3 {
        return Err(Error::Domain(format!("grid size {m} below 3")));
    }
    let cell = spec.cell();
    let grid = brillouin_grid(m);
    let mut fiber_eigenvalues = Vec::with_capacity(m * m * cell.size());
    for &k1 in &grid {
        for &k2 in &grid {
            let b = BlochMatrix::from_cell(&cell, [k1, k2]);
            fiber_eigenvalues.extend(hermitian_eigenvalues(&symmetrize(&b))?);
        }
    }
    let mut eigenvalues = fiber_eigenvalues.clone();
    eigenvalues.sort_by(f64::total_cmp);
    let min_positive = eigenvalues.iter().copied().find(|&x| x >= ZERO_TOL);
    let zero_count = eigenvalues.iter().filter(|x| x.abs() < ZERO_TOL).count();
    let mut max_spacing = 0.0f64;
    let mut prev = -1.0f64;
    for &x in eigenvalues.iter().filter(|x| x.abs() <= 1.0).chain(core::iter::once(&1.0)) {
        max_spacing = max_spacing.max(x - prev);
        prev = x;
    }
    Ok(SpectrumSample2D { grid, fiber_eigenvalues, eigenvalues, min_positive, max_spacing, zero_count })
}
