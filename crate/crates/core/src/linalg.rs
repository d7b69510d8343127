//! Small dense complex linear algebra: a row-major matrix type, a cyclic
//! Jacobi eigensolver for Hermitian matrices and an LU determinant.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        CMatrix::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n.max(1))
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Cyclic Jacobi: each pivot `(p, q)` is first made real by a diagonal phase
/// and then annihilated with a real plane rotation. Only the Hermitian part
/// of the input is used.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    let n = h.dim();
    let mut a = CMatrix::from_fn(n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let scale = libm::sqrt(scale);
    if n <= 1 || scale == 0.0 {
        return Ok(sorted_desc((0..n).map(|i| a[(i, i)].re).collect()));
    }
    let threshold = scale * 1e-16;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            return Ok(sorted_desc((0..n).map(|i| a[(i, i)].re).collect()));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    if off_diagonal_norm(&a) <= threshold * 1e3 {
        return Ok(sorted_desc((0..n).map(|i| a[(i, i)].re).collect()));
    }
    Err(Error::NoConvergence { size: n, sweeps: MAX_SWEEPS })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let e = g / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ec = e.conj();
    let n = a.dim();

    // A <- A J with J = diag-phase * rotation on the (p, q) plane.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ec * s;
        a[(k, q)] = akp * s + akq * ec * c;
    }
    // A <- J^H A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * e * s;
        a[(q, k)] = apk * s + aqk * e * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(m: &CMatrix) -> Complex64 {
    let n = m.dim();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .unwrap_or(col);
        if a[(pivot, col)].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let d = a[(col, col)];
        det *= d;
        for i in col + 1..n {
            let f = a[(i, col)] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = a[(col, j)];
                a[(i, j)] -= f * v;
            }
        }
    }
    det
}
