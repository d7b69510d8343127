//! Invariant suites for a single 1D pattern. Each check returns
//! `Ok(detail)` or `Err(detail)`; [`run_all`] runs the lot.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bands::{band_function, band_structure, nonzero_eigenvalues, uniform_grid};
use crate::bloch::{build_bloch, eigenvalues, symmetrize};
use crate::cell::PeriodicCell;
use crate::charpoly::{eval_d, eval_f, extract, fiber_determinant, CharPoly, RealFiber};
use crate::graph_model::{decompose, degrees, normalize, CellDecomposition, PendantSpec1D};
use crate::linalg::determinant;
use crate::oracle::{det_by_permutations, periodic_truncation, ring_momenta, PERMUTATION_LIMIT, TRUNCATION_LIMIT};
use crate::roots::{multisets_agree, polynomial_roots, real_roots_clustered};
use crate::{EIG_TOL, ZERO_TOL};

pub type Check = core::result::Result<String, String>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Momenta sampled on `[-pi, pi]` (and on `[0, pi]` for band functions).
    pub grid: usize,
    /// Tolerance for root, tiling and dispersion comparisons.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { grid: 33, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Momenta `-pi + 2 pi j / (n - 1)`.
pub fn symmetric_grid(n: usize) -> Vec<f64> {
    if n < 2 {
        return alloc::vec![0.0];
    }
    (0..n).map(|j| -PI + 2.0 * PI * j as f64 / (n - 1) as f64).collect()
}

/// Deterministic uniform samples in `[0, 1)` (splitmix64).
pub struct Sampler(u64);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn prepared(spec: &PendantSpec1D) -> core::result::Result<(PendantSpec1D, CellDecomposition), String> {
    let spec = normalize(spec);
    let dec = decompose(&spec).map_err(|e| format!("{e}"))?;
    Ok((spec, dec))
}

fn err(e: crate::Error) -> String {
    format!("{e}")
}

pub fn stochastic_fiber(spec: &PendantSpec1D) -> Check {
    let m = build_bloch(spec, 0.0).map_err(err)?;
    let mut worst = 0.0f64;
    for (i, row) in m.entries.rows().enumerate() {
        if row.iter().any(|z| z.re < 0.0 || z.im != 0.0) {
            return Err(format!("row {} has a negative or complex entry", i + 1));
        }
        let s: f64 = row.iter().map(|z| z.re).sum();
        worst = worst.max((s - 1.0).abs());
    }
    if worst < 1e-12 {
        Ok(format!("max |row sum - 1| = {worst:.1e}"))
    } else {
        Err(format!("max |row sum - 1| = {worst:.1e}"))
    }
}

pub fn hermiticity(spec: &PendantSpec1D, grid: usize) -> Check {
    let mut worst = 0.0f64;
    for k in symmetric_grid(grid) {
        let h = symmetrize(&build_bloch(spec, k).map_err(err)?);
        worst = worst.max(h.hermitian_defect());
    }
    if worst < 1e-12 {
        Ok(format!("max |H - H*| = {worst:.1e}"))
    } else {
        Err(format!("max |H - H*| = {worst:.1e}"))
    }
}

fn fold(k: f64) -> f64 {
    if k < -PI {
        k + 2.0 * PI
    } else if k > PI {
        k - 2.0 * PI
    } else {
        k
    }
}

/// `spec(L_k) = -spec(L_k)` for even periods, `spec(L_k) = -spec(L_{k - pi})`
/// for odd ones.
pub fn spectral_symmetry(spec: &PendantSpec1D, grid: usize) -> Check {
    let mut worst = 0.0f64;
    for k in symmetric_grid(grid) {
        let partner = if spec.period().is_multiple_of(2) { k } else { fold(k - PI) };
        let a = eigenvalues(&build_bloch(spec, k).map_err(err)?).map_err(err)?;
        let b = eigenvalues(&build_bloch(spec, partner).map_err(err)?).map_err(err)?;
        for (x, y) in a.iter().zip(b.iter().rev()) {
            worst = worst.max((x + y).abs());
        }
    }
    if worst < EIG_TOL {
        Ok(format!("max mirror defect {worst:.1e}"))
    } else {
        Err(format!("max mirror defect {worst:.1e}"))
    }
}

pub fn kernel_dimension(spec: &PendantSpec1D, grid: usize) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    for k in symmetric_grid(grid) {
        let ev = eigenvalues(&build_bloch(&spec, k).map_err(err)?).map_err(err)?;
        let zeros = ev.iter().filter(|x| x.abs() < ZERO_TOL).count();
        if zeros != dec.q {
            return Err(format!("{zeros} zero eigenvalues at k = {k}, q = {}", dec.q));
        }
    }
    Ok(format!("dim ker L_k = q = {} at all {grid} momenta", dec.q))
}

pub fn interior_simplicity(spec: &PendantSpec1D) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    let mut closest = f64::INFINITY;
    for k in [PI / 7.0, -PI / 7.0, 2.0 * PI / 5.0, -2.0 * PI / 5.0] {
        let ev = nonzero_eigenvalues(&spec, dec.q, k).map_err(err)?;
        for w in ev.windows(2) {
            closest = closest.min(w[0] - w[1]);
        }
    }
    if closest > ZERO_TOL {
        Ok(format!("min separation {closest:.3e}"))
    } else {
        Err(format!("nonzero eigenvalues collide (separation {closest:.1e})"))
    }
}

/// Extraction invariants plus a numeric comparison of `det(D(L_k - x))`
/// against `sign * F(k, x)` at `samples` pseudo-random points.
pub fn charpoly_structure(spec: &PendantSpec1D, samples: usize, seed: u64) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    let p = extract(&spec).map_err(err)?;
    let lead: usize = degrees(&spec).iter().product();
    if p.coeff(p.top_index()) != BigInt::from(lead) {
        return Err(format!("leading coefficient {} != prod d_i = {lead}", p.coeff(p.top_index())));
    }
    if p.lowest_exponent() != Some(dec.q) {
        return Err(format!("lowest exponent {:?} != q = {}", p.lowest_exponent(), dec.q));
    }
    let a0 = p.constant_coeff().abs();
    if dec.q == 0 && a0 != BigInt::from(1) {
        return Err(format!("q = 0 but |A_m0| = {a0}"));
    }
    if dec.q >= 1 && a0 <= BigInt::from(2) {
        return Err(format!("q >= 1 but |A_m0| = {a0}"));
    }
    let cell = PeriodicCell::from_spec(&spec);
    let mut rng = Sampler::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let k = rng.uniform(-PI, PI);
        let x = rng.uniform(-1.2, 1.2);
        let det = determinant(&cell.pencil([k], x));
        let f = f64::from(p.sign) * eval_f(&p, k, x);
        let rel = ((det.re - f).abs() + det.im.abs()) / (1.0 + det.norm());
        worst = worst.max(rel);
    }
    if worst < 1e-8 {
        Ok(format!("A_m0 = {}, worst relative det error {worst:.1e}", p.constant_coeff()))
    } else {
        Err(format!("worst relative det error {worst:.1e}"))
    }
}

/// Nonzero roots of `F(k, .)` for `k` in `{0, pi}`, found numerically.
pub fn nonzero_roots(p: &CharPoly, fiber: RealFiber) -> core::result::Result<Vec<f64>, String> {
    let full = p.at_real_fiber(fiber).to_f64_coeffs();
    let reduced = &full[p.q.min(full.len())..];
    let roots = polynomial_roots(reduced).map_err(err)?;
    let worst_im = roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst_im > 1e-6 {
        return Err(format!("non-real root (|im| = {worst_im:.1e})"));
    }
    real_roots_clustered(reduced, 1e-6).map_err(err)
}

pub fn root_agreement(spec: &PendantSpec1D, tol: f64) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    let p = extract(&spec).map_err(err)?;
    for fiber in [RealFiber::Zero, RealFiber::Pi] {
        let roots = nonzero_roots(&p, fiber)?;
        let ev = nonzero_eigenvalues(&spec, dec.q, fiber.momentum()).map_err(err)?;
        if !multisets_agree(&roots, &ev, tol, 1e-6) {
            return Err(format!("roots and eigenvalues differ at k = {}", fiber.momentum()));
        }
    }
    Ok(format!("{} nonzero roots match at k = 0 and k = pi", 2 * dec.t))
}

pub fn period_doubling(spec: &PendantSpec1D, tol: f64) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    let p = extract(&spec).map_err(err)?;
    let doubled = normalize(&spec.repeated(2));
    let pd = extract(&doubled).map_err(err)?;
    let mut union = nonzero_roots(&p, RealFiber::Zero)?;
    union.extend(nonzero_roots(&p, RealFiber::Pi)?);
    let roots = nonzero_roots(&pd, RealFiber::Zero)?;
    if multisets_agree(&roots, &union, tol, 1e-6) {
        Ok(format!("{} roots of the doubled cell match", roots.len()))
    } else {
        Err("doubled-cell roots at k = 0 differ from the union at k = 0, pi".into())
    }
}

/// Band theorem, gap corollary and the flat-band criterion, checked against
/// band functions sampled on `grid` momenta in `[0, pi]`.
pub fn band_theorems(spec: &PendantSpec1D, grid: usize, tol: f64) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice {
        return Ok("skipped: no pendants".into());
    }
    let bs = band_structure(&spec).map_err(err)?;
    let p = extract(&spec).map_err(err)?;
    let t = dec.t;
    if bs.positive_bands.len() != t {
        return Err(format!("{} positive bands, expected t = {t}", bs.positive_bands.len()));
    }
    if (bs.positive_bands[0].upper - 1.0).abs() > EIG_TOL {
        return Err(format!("top of spectrum {} != 1", bs.positive_bands[0].upper));
    }
    if bs.central_gap_radius <= 0.0 {
        return Err("no gap around zero".into());
    }
    let ngaps = bs.gaps.len();
    if ngaps < 1 || ngaps > 2 * t - 1 {
        return Err(format!("{ngaps} gaps outside [1, {}]", 2 * t - 1));
    }
    let odd_run = dec.runs.iter().any(|l| l % 2 == 1);
    if bs.has_flat_band != odd_run {
        return Err("flat band does not match the odd-run criterion".into());
    }

    let kgrid = uniform_grid(grid.max(3));
    let all = bs.all_bands();
    let mut worst_d = 0.0f64;
    let mut samples = Vec::with_capacity(2 * t);
    for i in 1..=2 * t {
        let f = band_function(&spec, i, &kgrid).map_err(err)?;
        // Positive bands alternate, starting with a decreasing top band; the
        // direction of a negative band also depends on the parity of r.
        let decreasing = f[f.len() - 1].1 < f[0].1;
        if i <= t && decreasing != (i % 2 == 1) {
            return Err(format!("band {i} runs the wrong way on [0, pi]"));
        }
        for w in f.windows(2) {
            let step = w[1].1 - w[0].1;
            let ok = if decreasing { step < -EIG_TOL } else { step > EIG_TOL };
            if !ok {
                return Err(format!(
                    "band {i} not strictly monotone near k = {:.4} (step {step:.2e})",
                    w[0].0
                ));
            }
        }
        for &(k, x) in &f {
            if !all.iter().any(|b| b.contains(x, tol)) {
                return Err(format!("lambda_{i}({k}) = {x} outside every band"));
            }
            let d = eval_d(&p, x).map_err(err)?;
            worst_d = worst_d.max((d - libm::cos(k)).abs());
        }
        samples.push((f[0].1, f[f.len() - 1].1));
    }
    if worst_d >= tol {
        return Err(format!("|D(lambda) - cos k| reaches {worst_d:.1e}"));
    }
    for i in 0..t {
        let (a0, api) = samples[i];
        let (m0, mpi) = samples[2 * t - 1 - i];
        let mut top = [a0, api];
        let mut bottom = [-m0, -mpi];
        top.sort_by(f64::total_cmp);
        bottom.sort_by(f64::total_cmp);
        if (top[0] - bottom[0]).abs() > EIG_TOL || (top[1] - bottom[1]).abs() > EIG_TOL {
            return Err(format!("bands {} and {} are not mirrors", i + 1, 2 * t - i));
        }
    }
    Ok(format!(
        "{t} positive bands, {ngaps} gaps, gap radius {:.6}, max |D - cos k| {worst_d:.1e}",
        bs.central_gap_radius
    ))
}

/// Spectra of `N`-cell rings equal the union of the fibers at `2 pi j / N`.
pub fn truncation_tiling(spec: &PendantSpec1D, cells: &[usize], tol: f64) -> Check {
    let mut checked = Vec::new();
    for &n in cells {
        if n * spec.cell_size() > TRUNCATION_LIMIT {
            continue;
        }
        let ring = periodic_truncation(spec, n).map_err(err)?;
        let mut fibers = Vec::new();
        for k in ring_momenta(n) {
            fibers.extend(eigenvalues(&build_bloch(spec, k).map_err(err)?).map_err(err)?);
        }
        fibers.sort_by(|a, b| b.total_cmp(a));
        let worst = ring
            .eigenvalues
            .iter()
            .zip(&fibers)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if ring.eigenvalues.len() != fibers.len() || worst >= tol {
            return Err(format!("N = {n}: ring and fibers differ by {worst:.1e}"));
        }
        let (_, dec) = prepared(spec)?;
        if !dec.pure_lattice {
            let zeros = ring.eigenvalues.iter().filter(|x| x.abs() < ZERO_TOL).count();
            if zeros != n * dec.q {
                return Err(format!("N = {n}: {zeros} zero eigenvalues, expected {}", n * dec.q));
            }
        }
        checked.push(n);
    }
    Ok(format!("rings with N = {checked:?} tile into fibers"))
}

pub fn permutation_oracle(spec: &PendantSpec1D) -> Check {
    let (spec, dec) = prepared(spec)?;
    if dec.pure_lattice || spec.cell_size() > PERMUTATION_LIMIT {
        return Ok("skipped: outside the permutation oracle's range".into());
    }
    for fiber in [RealFiber::Zero, RealFiber::Pi] {
        let a = det_by_permutations(&spec, fiber).map_err(err)?;
        let b = fiber_determinant(&spec, fiber).map_err(err)?;
        if a != b {
            return Err(format!("k = {}: permutation sum {a} != Bareiss {b}", fiber.momentum()));
        }
    }
    Ok("permutation sum equals the fraction-free determinant at k = 0, pi".into())
}

/// Translated and period-doubled copies give the same band structure.
pub fn isomorphism_invariance(spec: &PendantSpec1D) -> Check {
    let base = band_structure(spec).map_err(err)?;
    for other in [spec.rotated(1), spec.repeated(2)] {
        let bs = band_structure(&other).map_err(err)?;
        let d = base.spectrum_distance(&bs);
        if d >= EIG_TOL || bs.gaps.len() != base.gaps.len() {
            return Err(format!("isomorphic copy differs by {d:.1e}"));
        }
    }
    Ok("translated and doubled cells agree".into())
}

pub fn run_all(spec: &PendantSpec1D, cfg: &VerifyConfig) -> Vec<SuiteOutcome> {
    let suites: Vec<(&'static str, Check)> = alloc::vec![
        ("stochastic L_0", stochastic_fiber(spec)),
        ("hermiticity", hermiticity(spec, cfg.grid)),
        ("spectral symmetry", spectral_symmetry(spec, cfg.grid)),
        ("kernel dimension = q", kernel_dimension(spec, cfg.grid)),
        ("interior simplicity", interior_simplicity(spec)),
        ("charpoly structure", charpoly_structure(spec, 50, 0x5eed)),
        ("root agreement", root_agreement(spec, cfg.tol)),
        ("period doubling", period_doubling(spec, cfg.tol)),
        ("band theorems", band_theorems(spec, cfg.grid, cfg.tol)),
        ("truncation tiling", truncation_tiling(spec, &[1, 2, 3, 4, 8], cfg.tol)),
        ("permutation oracle", permutation_oracle(spec)),
        ("isomorphism invariance", isomorphism_invariance(spec)),
    ];
    suites
        .into_iter()
        .map(|(name, r)| match r {
            Ok(detail) => SuiteOutcome { name, passed: true, detail },
            Err(detail) => SuiteOutcome { name, passed: false, detail },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_small_patterns() {
        for (r, p) in [(1, &[1][..]), (2, &[1]), (4, &[1, 2]), (6, &[1, 5]), (5, &[1, 3])] {
            let spec = PendantSpec1D::new(r, p.iter().copied()).unwrap();
            for o in run_all(&spec, &VerifyConfig::default()) {
                assert!(o.passed, "{r} {p:?}: {} failed: {}", o.name, o.detail);
            }
        }
    }

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..100 {
            let x = a.next_f64();
            assert_eq!(x, b.next_f64());
            assert!((0.0..1.0).contains(&x));
        }
    }
}
