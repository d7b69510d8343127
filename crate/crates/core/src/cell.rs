//! A fundamental cell of a periodic graph: vertex degrees plus directed bonds
//! labelled by the lattice translation they cross.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::graph_model::{degrees, PendantSpec1D};
use crate::linalg::CMatrix;
use crate::poly::IntPoly;

/// Directed bond from `from` (in cell 0) to `to` in the cell translated by
/// `shift` lattice vectors. Every undirected edge is listed in both
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond<const D: usize> {
    pub from: usize,
    pub to: usize,
    pub shift: [i64; D],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCell<const D: usize> {
    degrees: Vec<usize>,
    bonds: Vec<Bond<D>>,
}

impl<const D: usize> PeriodicCell<D> {
    pub fn new(degrees: Vec<usize>, bonds: Vec<Bond<D>>) -> Self {
        debug_assert!(degrees
            .iter()
            .enumerate()
            .all(|(v, &d)| bonds.iter().filter(|b| b.from == v).count() == d));
        PeriodicCell { degrees, bonds }
    }

    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn bonds(&self) -> &[Bond<D>] {
        &self.bonds
    }

    fn phase(shift: &[i64; D], k: &[f64; D]) -> Complex64 {
        let arg: f64 = shift.iter().zip(k).map(|(&n, &kk)| n as f64 * kk).sum();
        if arg == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(libm::cos(arg), libm::sin(arg))
        }
    }

    /// Fourier-transformed adjacency: entry `(a, b)` sums `e^{i k.n}` over
    /// the bonds `a -> b` crossing translation `n`.
    pub fn adjacency(&self, k: [f64; D]) -> CMatrix {
        let mut m = CMatrix::zeros(self.size());
        for b in &self.bonds {
            m[(b.from, b.to)] += Self::phase(&b.shift, &k);
        }
        m
    }

    /// Fiber of the transition operator: adjacency rows divided by degree.
    pub fn transition(&self, k: [f64; D]) -> CMatrix {
        let mut m = self.adjacency(k);
        for a in 0..self.size() {
            let d = self.degrees[a] as f64;
            for b in 0..self.size() {
                m[(a, b)] /= d;
            }
        }
        m
    }

    /// `adjacency(k) - lambda * diag(degrees)`, whose determinant vanishes
    /// exactly on the spectrum of the fiber.
    pub fn pencil(&self, k: [f64; D], lambda: f64) -> CMatrix {
        let mut m = self.adjacency(k);
        for a in 0..self.size() {
            m[(a, a)] -= lambda * self.degrees[a] as f64;
        }
        m
    }

    /// Integer polynomial version of [`Self::pencil`] for momenta where every
    /// phase is `+1` or `-1`; `parity[j]` selects `k_j = 0` (false) or
    /// `k_j = pi` (true).
    pub fn integer_pencil(&self, parity: [bool; D]) -> Vec<Vec<IntPoly>> {
        let n = self.size();
        let mut adj = alloc::vec![alloc::vec![0i64; n]; n];
        for b in &self.bonds {
            let odd = b
                .shift
                .iter()
                .zip(parity)
                .filter(|(&s, p)| *p && s.rem_euclid(2) == 1)
                .count();
            adj[b.from][b.to] += if odd % 2 == 0 { 1 } else { -1 };
        }
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let c = BigInt::from(adj[a][b]);
                        if a == b {
                            IntPoly::from_coeffs(alloc::vec![c, -BigInt::from(self.degrees[a])])
                        } else {
                            IntPoly::constant(c)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl PeriodicCell<1> {
    /// Cell of a 1D pattern: backbone positions `0..r` followed by the end
    /// vertices in order of their anchor position.
    pub fn from_spec(spec: &PendantSpec1D) -> Self {
        let r = spec.period();
        let mut bonds = Vec::with_capacity(2 * r + 2 * spec.pendant_count());
        for a in 0..r {
            let (right, rs) = if a + 1 < r { (a + 1, 0) } else { (0, 1) };
            let (left, ls) = if a > 0 { (a - 1, 0) } else { (r - 1, -1) };
            bonds.push(Bond { from: a, to: right, shift: [rs] });
            bonds.push(Bond { from: a, to: left, shift: [ls] });
        }
        for (idx, &pos) in spec.pendants().iter().enumerate() {
            let end = r + idx;
            bonds.push(Bond { from: pos - 1, to: end, shift: [0] });
            bonds.push(Bond { from: end, to: pos - 1, shift: [0] });
        }
        PeriodicCell::new(degrees(spec), bonds)
    }
}
