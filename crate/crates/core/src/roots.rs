//! Polynomial roots by Aberth–Ehrlich simultaneous iteration.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 2000;

/// All complex roots of `sum_j coeffs[j] x^j`. The leading coefficient must
/// be nonzero.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let n = match c.len() {
        0 => return Err(Error::Domain("zero polynomial has no finite root set".into())),
        len => len - 1,
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    // Cauchy bound for the starting circle.
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let start = radius.min(2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let ang = 2.0 * core::f64::consts::PI * j as f64 / n as f64 + 0.4;
            Complex64::from_polar(start, ang)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
    }
    Ok(z)
}

/// Real parts of the roots of a polynomial whose roots are all real, with
/// clusters (roots closer than `cluster`) replaced by a refined common
/// value: a root of multiplicity `m` is a simple root of the `(m-1)`-th
/// derivative, where Newton's method converges quadratically.
pub fn real_roots_clustered(coeffs: &[f64], cluster: f64) -> Result<Vec<f64>> {
    let mut z = polynomial_roots(coeffs)?;
    z.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut out = Vec::with_capacity(z.len());
    let mut i = 0;
    while i < z.len() {
        let mut j = i + 1;
        while j < z.len() && (z[j] - z[j - 1]).norm() < cluster {
            j += 1;
        }
        let m = j - i;
        let mean = z[i..j].iter().map(|w| w.re).sum::<f64>() / m as f64;
        let value = if m == 1 { z[i].re } else { newton_on_derivative(coeffs, m - 1, mean) };
        out.extend(core::iter::repeat_n(value, m));
        i = j;
    }
    Ok(out)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, a)| a * j as f64).collect()
}

fn newton_on_derivative(coeffs: &[f64], order: usize, start: f64) -> f64 {
    let mut d = coeffs.to_vec();
    for _ in 0..order {
        d = derivative(&d);
    }
    let dd = derivative(&d);
    let eval = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
    let mut x = start;
    for _ in 0..50 {
        let slope = eval(&dd, x);
        if slope == 0.0 {
            break;
        }
        let step = eval(&d, x) / slope;
        x -= step;
        if step.abs() < 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    // Fall back to the cluster mean if Newton wandered off.
    if (x - start).abs() < 1e-4 {
        x
    } else {
        start
    }
}

fn eval_with_derivative(c: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Compare two multisets of reals after sorting. Runs of values closer than
/// `cluster` within either list are compared through their means, which are
/// determined far more accurately than the individual members of a multiple
/// root.
pub fn multisets_agree(a: &[f64], b: &[f64], tol: f64, cluster: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < a.len() {
        let mut j = i + 1;
        while j < a.len() && (a[j] - a[j - 1] < cluster || b[j] - b[j - 1] < cluster) {
            j += 1;
        }
        let ma: f64 = a[i..j].iter().sum::<f64>() / (j - i) as f64;
        let mb: f64 = b[i..j].iter().sum::<f64>() / (j - i) as f64;
        if (ma - mb).abs() > tol {
            return false;
        }
        i = j;
    }
    true
}
