//! Exact characteristic polynomial of the fibers of a 1D pattern.
//!
//! `det(D(L_k - lambda))` depends on `k` only through a single term
//! `-2 cos k * lambda^s`. Evaluating the integer pencils at `k = 0` and
//! `k = pi` therefore determines everything: their half-sum is the
//! `k`-independent part and their half-difference must be `-2 eps lambda^s`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cell::PeriodicCell;
use crate::error::{Error, Result};
use crate::graph_model::{decompose, PendantSpec1D};
use crate::poly::{bareiss_determinant, IntPoly};

/// The two momenta at which the pencil has integer entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealFiber {
    Zero,
    Pi,
}

impl RealFiber {
    pub fn momentum(self) -> f64 {
        match self {
            RealFiber::Zero => 0.0,
            RealFiber::Pi => core::f64::consts::PI,
        }
    }
}

/// Normalized characteristic polynomial
/// `F(k, x) = sum_m A_m x^(2m + star) - 2 cos k x^s`, with
/// `det(D(L_k - x)) = sign * F(k, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    /// `A_m` for `m = 0..=(r + s - star) / 2`, including leading zeros below
    /// `m0`.
    coeffs: Vec<BigInt>,
    pub star: usize,
    pub s: usize,
    pub q: usize,
    pub sign: i8,
}

impl CharPoly {
    pub fn coeff(&self, m: usize) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// Nonzero `A_m`, keyed by `m`.
    pub fn nonzero_coeffs(&self) -> BTreeMap<usize, BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn top_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `k`-independent part `sum_m A_m x^(2m + star)` as a polynomial in `x`.
    pub fn static_part(&self) -> IntPoly {
        let mut c = alloc::vec![BigInt::zero(); 2 * self.coeffs.len() + self.star];
        for (m, a) in self.coeffs.iter().enumerate() {
            c[2 * m + self.star] = a.clone();
        }
        IntPoly::from_coeffs(c)
    }

    /// `F(k, .)` at `cos k = cos_k` with exact integer coefficients when
    /// `cos_k` is `1` or `-1`.
    pub fn at_real_fiber(&self, fiber: RealFiber) -> IntPoly {
        let c = match fiber {
            RealFiber::Zero => -2,
            RealFiber::Pi => 2,
        };
        &self.static_part() + &IntPoly::monomial(c, self.s)
    }

    /// Lowest exponent with a nonzero coefficient in the static part.
    pub fn lowest_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|m| 2 * m + self.star)
    }

    /// `A_{m0}` with `m0 = (q - star) / 2`.
    pub fn constant_coeff(&self) -> BigInt {
        self.coeff((self.q - self.star) / 2)
    }
}

/// Exact `det(adjacency - x D)` at `k = 0` or `k = pi` by fraction-free
/// elimination.
pub fn fiber_determinant(spec: &PendantSpec1D, fiber: RealFiber) -> Result<IntPoly> {
    let cell = PeriodicCell::from_spec(spec);
    bareiss_determinant(&cell.integer_pencil([fiber == RealFiber::Pi]))
}

pub fn extract(spec: &PendantSpec1D) -> Result<CharPoly> {
    let dec = decompose(spec)?;
    if dec.pure_lattice {
        return Err(Error::NotApplicable("pattern without pendants".into()));
    }
    let p0 = fiber_determinant(spec, RealFiber::Zero)?;
    let ppi = fiber_determinant(spec, RealFiber::Pi)?;
    let two = BigInt::from(2);
    let half_sum = (&p0 + &ppi)
        .div_scalar_exact(&two)
        .ok_or_else(|| Error::Consistency("P0 + Ppi has an odd coefficient".into()))?;
    let half_diff = (&p0 - &ppi)
        .div_scalar_exact(&two)
        .ok_or_else(|| Error::Consistency("P0 - Ppi has an odd coefficient".into()))?;

    let lead = half_sum
        .leading()
        .ok_or_else(|| Error::Consistency("k-independent part vanishes".into()))?;
    let sign: i8 = if lead.is_positive() { 1 } else { -1 };
    let expected_diff = IntPoly::monomial(-2 * i64::from(sign), dec.s);
    if half_diff != expected_diff {
        return Err(Error::Consistency(format!(
            "k-dependent part is {half_diff}, expected {expected_diff}"
        )));
    }

    let n = spec.cell_size();
    if half_sum.degree() != Some(n) {
        return Err(Error::Consistency(format!(
            "k-independent part has degree {:?}, expected {n}",
            half_sum.degree()
        )));
    }
    let mut coeffs = Vec::with_capacity(n / 2 + 1);
    for (e, c) in half_sum.coeffs().iter().enumerate() {
        if e % 2 != dec.star {
            if !c.is_zero() {
                return Err(Error::Consistency(format!(
                    "term x^{e} breaks the parity {}",
                    dec.star
                )));
            }
            continue;
        }
        coeffs.push(if sign > 0 { c.clone() } else { -c });
    }
    Ok(CharPoly { coeffs, star: dec.star, s: dec.s, q: dec.q, sign })
}

/// `F(k, x)`.
pub fn eval_f(p: &CharPoly, k: f64, x: f64) -> f64 {
    horner_static(p, x) - 2.0 * libm::cos(k) * libm::pow(x, p.s as f64)
}

fn horner_static(p: &CharPoly, x: f64) -> f64 {
    let x2 = x * x;
    let even = p
        .coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x2 + c.to_f64().unwrap_or(f64::NAN));
    if p.star == 1 {
        even * x
    } else {
        even
    }
}

/// Dispersion function: a nonzero `x` is an eigenvalue of `L_k` exactly when
/// `D(x) = cos k`.
pub fn eval_d(p: &CharPoly, x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("D is undefined at {x}")));
    }
    Ok(horner_static(p, x) / (2.0 * libm::pow(x, p.s as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn spec(r: usize, p: &[usize]) -> PendantSpec1D {
        PendantSpec1D::new(r, p.iter().copied()).unwrap()
    }

    #[test]
    fn single_site() {
        let p = extract(&spec(1, &[1])).unwrap();
        assert_eq!(p.star, 0);
        assert_eq!(p.coeff(0), BigInt::from(-1));
        assert_eq!(p.coeff(1), BigInt::from(3));
        assert_eq!(p.sign, 1);
        assert_eq!(p.top_index(), 1);
        assert!(eval_f(&p, 0.0, 1.0).abs() < 1e-15);
        assert!((eval_d(&p, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval_d(&p, 1.0 / 3.0).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn period_two() {
        let p = extract(&spec(2, &[1])).unwrap();
        assert_eq!((p.star, p.q, p.sign), (1, 1, -1));
        assert_eq!(p.coeff(0), BigInt::from(-4));
        assert_eq!(p.coeff(1), BigInt::from(6));
        let r = 1.0 / libm::sqrt(3.0);
        assert!(eval_f(&p, PI, r).abs() < 1e-14);
        assert!((eval_d(&p, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((eval_d(&p, r).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(p.lowest_exponent(), Some(1));
    }

    #[test]
    fn determinants_by_hand() {
        let g = spec(2, &[1]);
        assert_eq!(
            fiber_determinant(&g, RealFiber::Zero).unwrap(),
            IntPoly::from_i64(&[0, 6, 0, -6])
        );
        assert_eq!(
            fiber_determinant(&g, RealFiber::Pi).unwrap(),
            IntPoly::from_i64(&[0, 2, 0, -6])
        );
    }

    #[test]
    fn constant_term_for_gapped_q_zero() {
        let p = extract(&spec(1, &[1])).unwrap();
        assert!((eval_f(&p, 0.3, 0.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn d_rejects_zero() {
        let p = extract(&spec(1, &[1])).unwrap();
        assert!(matches!(eval_d(&p, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn pure_lattice_not_applicable() {
        assert!(matches!(extract(&spec(3, &[])), Err(Error::NotApplicable(_))));
    }
}
