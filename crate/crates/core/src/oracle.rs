//! Brute-force cross-checks that share no code with the fiber construction
//! or the Bareiss determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::charpoly::RealFiber;
use crate::error::{Error, Result};
use crate::graph_model::PendantSpec1D;
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::poly::IntPoly;

/// Vertex limit for [`periodic_truncation`].
pub const TRUNCATION_LIMIT: usize = 4096;

/// Matrix-order limit for [`det_by_permutations`].
pub const PERMUTATION_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationResult {
    pub n_cells: usize,
    /// Descending.
    pub eigenvalues: Vec<f64>,
}

/// Spectrum of the transition operator on `n_cells` copies of the cell
/// closed into a ring.
pub fn periodic_truncation(spec: &PendantSpec1D, n_cells: usize) -> Result<TruncationResult> {
    if n_cells == 0 {
        return Err(Error::Domain("need at least one cell".into()));
    }
    let r = spec.period();
    let s = spec.pendant_count();
    let size = n_cells * (r + s);
    if size > TRUNCATION_LIMIT {
        return Err(Error::SizeLimit { size, limit: TRUNCATION_LIMIT });
    }
    let ring = n_cells * r;
    let mut adj = vec![vec![0.0f64; size]; size];
    for v in 0..ring {
        adj[v][(v + 1) % ring] += 1.0;
        adj[v][(v + ring - 1) % ring] += 1.0;
    }
    for c in 0..n_cells {
        for (p, &pos) in spec.pendants().iter().enumerate() {
            let anchor = c * r + pos - 1;
            let end = ring + c * s + p;
            adj[anchor][end] += 1.0;
            adj[end][anchor] += 1.0;
        }
    }
    let deg: Vec<f64> = adj.iter().map(|row| row.iter().sum()).collect();
    let h = CMatrix::from_fn(size, |i, j| {
        Complex64::new(adj[i][j] / libm::sqrt(deg[i] * deg[j]), 0.0)
    });
    Ok(TruncationResult { n_cells, eigenvalues: hermitian_eigenvalues(&h)? })
}

/// Momenta `2 pi j / n` folded into `[-pi, pi]`: the fibers whose union is
/// the spectrum of an `n`-cell ring.
pub fn ring_momenta(n: usize) -> Vec<f64> {
    use core::f64::consts::PI;
    (0..n)
        .map(|j| {
            let k = 2.0 * PI * j as f64 / n as f64;
            if k > PI {
                k - 2.0 * PI
            } else {
                k
            }
        })
        .collect()
}

/// `det(adjacency - x D)` at `k = 0` or `k = pi` as the signed sum over
/// permutations, skipping any permutation that meets a zero entry.
pub fn det_by_permutations(spec: &PendantSpec1D, fiber: RealFiber) -> Result<IntPoly> {
    let r = spec.period();
    let n = spec.cell_size();
    if n > PERMUTATION_LIMIT {
        return Err(Error::SizeLimit { size: n, limit: PERMUTATION_LIMIT });
    }
    let corner = match fiber {
        RealFiber::Zero => 1i64,
        RealFiber::Pi => -1,
    };
    // Entries as (constant, coefficient of x).
    let mut m = vec![vec![(0i64, 0i64); n]; n];
    #[allow(clippy::needless_range_loop)]
    for a in 0..r {
        let (right, wr) = if a + 1 == r { (0, corner) } else { (a + 1, 1) };
        let (left, wl) = if a == 0 { (r - 1, corner) } else { (a - 1, 1) };
        m[a][right].0 += wr;
        m[a][left].0 += wl;
        let deg = if spec.has_pendant(a + 1) { 3 } else { 2 };
        m[a][a].1 -= deg;
    }
    for (p, &pos) in spec.pendants().iter().enumerate() {
        m[pos - 1][r + p].0 += 1;
        m[r + p][pos - 1].0 += 1;
        m[r + p][r + p].1 -= 1;
    }

    let mut acc = vec![BigInt::zero(); n + 1];
    let mut used = vec![false; n];
    let mut term = vec![BigInt::zero(); n + 1];
    term[0] = BigInt::from(1);
    expand(&m, 0, &mut used, &mut Vec::new(), &term, &mut acc);
    Ok(IntPoly::from_coeffs(acc))
}

fn expand(
    m: &[Vec<(i64, i64)>],
    row: usize,
    used: &mut [bool],
    perm: &mut Vec<usize>,
    term: &[BigInt],
    acc: &mut [BigInt],
) {
    let n = m.len();
    if row == n {
        let sign = permutation_sign(perm);
        for (a, t) in acc.iter_mut().zip(term) {
            if sign > 0 {
                *a += t;
            } else {
                *a -= t;
            }
        }
        return;
    }
    for col in 0..n {
        if used[col] || m[row][col] == (0, 0) {
            continue;
        }
        let (c0, c1) = m[row][col];
        // term * (c0 + c1 x)
        let mut next = vec![BigInt::zero(); term.len()];
        for j in 0..term.len() {
            if term[j].is_zero() {
                continue;
            }
            next[j] += &term[j] * c0;
            if j + 1 < next.len() {
                next[j + 1] += &term[j] * c1;
            }
        }
        used[col] = true;
        perm.push(col);
        expand(m, row + 1, used, perm, &next, acc);
        perm.pop();
        used[col] = false;
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, p: &[usize]) -> PendantSpec1D {
        PendantSpec1D::new(r, p.iter().copied()).unwrap()
    }

    #[test]
    fn permutation_expansions_by_hand() {
        assert_eq!(
            det_by_permutations(&spec(1, &[1]), RealFiber::Zero).unwrap(),
            IntPoly::from_i64(&[-1, -2, 3])
        );
        assert_eq!(
            det_by_permutations(&spec(2, &[1]), RealFiber::Zero).unwrap(),
            IntPoly::from_i64(&[0, 6, 0, -6])
        );
        assert_eq!(
            det_by_permutations(&spec(2, &[1]), RealFiber::Pi).unwrap(),
            IntPoly::from_i64(&[0, 2, 0, -6])
        );
    }

    #[test]
    fn permutation_size_limit() {
        assert!(matches!(
            det_by_permutations(&spec(6, &[1, 2, 3, 4]), RealFiber::Zero),
            Err(Error::SizeLimit { size: 10, limit: 9 })
        ));
    }

    #[test]
    fn small_rings() {
        let one = periodic_truncation(&spec(1, &[1]), 1).unwrap();
        assert!((one.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((one.eigenvalues[1] + 1.0 / 3.0).abs() < 1e-12);

        let two = periodic_truncation(&spec(1, &[1]), 2).unwrap();
        for (x, y) in two.eigenvalues.iter().zip([1.0, 1.0 / 3.0, -1.0 / 3.0, -1.0]) {
            assert!((x - y).abs() < 1e-12);
        }

        let r = 1.0 / libm::sqrt(3.0);
        let g = periodic_truncation(&spec(2, &[1]), 2).unwrap();
        for (x, y) in g.eigenvalues.iter().zip([1.0, r, 0.0, 0.0, -r, -1.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_guard() {
        assert!(matches!(
            periodic_truncation(&spec(2, &[1]), 2000),
            Err(Error::SizeLimit { .. })
        ));
        assert!(periodic_truncation(&spec(2, &[1]), 0).is_err());
    }
}
