//! Band structure of a 1D pattern.
//!
//! The nonzero band functions `lambda_i(k)` are strictly monotone on
//! `(0, pi)`, so every band is spanned by its values at `k = 0` and `k = pi`.
//! Odd-numbered bands (counted from the top) peak at `k = 0`, even ones at
//! `k = pi`. The negative half of the spectrum mirrors the positive half and
//! zero is an eigenvalue exactly when some run of pendant-free vertices has
//! odd length.

use alloc::format;
use alloc::vec::Vec;

use core::f64::consts::PI;

use crate::bloch::{build_bloch, eigenvalues};
use crate::charpoly::{extract, CharPoly};
use crate::error::{Error, Result};
use crate::graph_model::{decompose, normalize, CellDecomposition, PendantSpec1D};
use crate::ZERO_TOL;

/// Bands and gaps narrower than this are treated as touching.
pub const TOUCH_TOL: f64 = 1e-9;

/// Default number of momenta sampled on `[0, pi]`.
pub const DEFAULT_GRID: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }

    pub fn mirrored(&self) -> Band {
        Band { lower: -self.upper, upper: -self.lower }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    /// `[a_i, b_i]` for `i = 1..=t`, top band first.
    pub positive_bands: Vec<Band>,
    pub has_flat_band: bool,
    /// Zero eigenvalues per fiber.
    pub flat_band_multiplicity: usize,
    /// Maximal open subintervals of `(-1, 1)` missing every band; the flat
    /// band is ignored here.
    pub gaps: Vec<Band>,
    /// `a_t`: the spectrum has nothing in `(-a_t, 0) u (0, a_t)`.
    pub central_gap_radius: f64,
    /// Consecutive positive bands overlap by more than a shared endpoint.
    pub overlapping: bool,
    pub pure_lattice: bool,
}

impl BandStructure {
    /// Positive bands followed by their mirrors, top to bottom.
    pub fn all_bands(&self) -> Vec<Band> {
        let mut v = self.positive_bands.clone();
        v.extend(self.positive_bands.iter().rev().map(Band::mirrored));
        v
    }

    /// Membership in the spectrum of the full operator.
    pub fn in_spectrum(&self, x: f64, tol: f64) -> bool {
        (self.has_flat_band && x.abs() <= tol) || self.all_bands().iter().any(|b| b.contains(x, tol))
    }

    /// Positive part of the spectrum as disjoint closed intervals, bands
    /// that touch or overlap merged, top first. A period multiple of the same
    /// graph splits bands at extra touching points but yields the same union.
    pub fn positive_spectrum(&self) -> Vec<Band> {
        let mut merged: Vec<Band> = Vec::new();
        let mut sorted = self.positive_bands.clone();
        sorted.sort_by(|a, b| b.upper.total_cmp(&a.upper));
        for b in sorted {
            match merged.last_mut() {
                Some(last) if b.upper >= last.lower - TOUCH_TOL => {
                    last.lower = last.lower.min(b.lower);
                }
                _ => merged.push(b),
            }
        }
        merged
    }

    /// Largest endpoint difference between the two spectra, infinite when
    /// they have a different number of components or disagree on the flat
    /// band.
    pub fn spectrum_distance(&self, other: &BandStructure) -> f64 {
        let a = self.positive_spectrum();
        let b = other.positive_spectrum();
        if a.len() != b.len() || self.has_flat_band != other.has_flat_band {
            return f64::INFINITY;
        }
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x.lower - y.lower).abs().max((x.upper - y.upper).abs()))
            .fold(0.0, f64::max)
    }
}

/// Nonzero eigenvalues of `L_k`, descending, after removing the `q`
/// eigenvalues nearest zero (which must be zero within [`ZERO_TOL`]).
pub fn nonzero_eigenvalues(spec: &PendantSpec1D, q: usize, k: f64) -> Result<Vec<f64>> {
    let ev = eigenvalues(&build_bloch(spec, k)?)?;
    let mut order: Vec<usize> = (0..ev.len()).collect();
    order.sort_by(|&a, &b| ev[a].abs().total_cmp(&ev[b].abs()));
    let zeros = ev.iter().filter(|x| x.abs() < ZERO_TOL).count();
    if zeros != q {
        return Err(Error::Consistency(format!(
            "found {zeros} zero eigenvalues at k = {k}, expected {q}"
        )));
    }
    let mut drop = alloc::vec![false; ev.len()];
    for &i in order.iter().take(q) {
        drop[i] = true;
    }
    Ok(ev.into_iter().zip(drop).filter(|(_, d)| !d).map(|(x, _)| x).collect())
}

pub fn band_structure(spec: &PendantSpec1D) -> Result<BandStructure> {
    let spec = normalize(spec);
    let dec = decompose(&spec)?;
    if dec.pure_lattice {
        return Ok(BandStructure {
            positive_bands: alloc::vec![Band { lower: 0.0, upper: 1.0 }],
            has_flat_band: false,
            flat_band_multiplicity: 0,
            gaps: Vec::new(),
            central_gap_radius: 0.0,
            overlapping: false,
            pure_lattice: true,
        });
    }
    let at0 = nonzero_eigenvalues(&spec, dec.q, 0.0)?;
    let atpi = nonzero_eigenvalues(&spec, dec.q, PI)?;
    if at0.len() != 2 * dec.t || atpi.len() != 2 * dec.t {
        return Err(Error::Consistency("nonzero eigenvalue count differs from 2t".into()));
    }
    let positive_bands: Vec<Band> = (0..dec.t)
        .map(|i| {
            // i is 0-based, so band i + 1 is odd when i is even.
            if i % 2 == 0 {
                Band { lower: atpi[i], upper: at0[i] }
            } else {
                Band { lower: at0[i], upper: atpi[i] }
            }
        })
        .collect();
    let overlapping = positive_bands.windows(2).any(|w| w[1].upper > w[0].lower + TOUCH_TOL);
    let central_gap_radius = positive_bands.last().map_or(0.0, |b| b.lower);

    let mut bs = BandStructure {
        positive_bands,
        has_flat_band: dec.q > 0,
        flat_band_multiplicity: dec.q,
        gaps: Vec::new(),
        central_gap_radius,
        overlapping,
        pure_lattice: false,
    };
    bs.gaps = gaps_of(&bs.all_bands());
    Ok(bs)
}

fn gaps_of(bands: &[Band]) -> Vec<Band> {
    let mut sorted = bands.to_vec();
    sorted.sort_by(|a, b| a.lower.total_cmp(&b.lower));
    let mut gaps = Vec::new();
    let mut reach = -1.0f64;
    for b in sorted {
        if b.lower - reach > TOUCH_TOL {
            gaps.push(Band { lower: reach, upper: b.lower });
        }
        reach = reach.max(b.upper);
    }
    if 1.0 - reach > TOUCH_TOL {
        gaps.push(Band { lower: reach, upper: 1.0 });
    }
    gaps
}

/// `lambda_i(k)` sampled at each momentum of `kgrid` (sorted, within
/// `[-pi, pi]`); `index` counts nonzero eigenvalues from the top, 1-based.
pub fn band_function(spec: &PendantSpec1D, index: usize, kgrid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let spec = normalize(spec);
    let dec = decompose(&spec)?;
    let count = spec.cell_size() - dec.q;
    if dec.pure_lattice {
        return Err(Error::NotApplicable("band functions of the bare lattice".into()));
    }
    if index == 0 || index > count {
        return Err(Error::BandIndex { index, count });
    }
    if kgrid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("momentum grid is not sorted".into()));
    }
    kgrid
        .iter()
        .map(|&k| Ok((k, nonzero_eigenvalues(&spec, dec.q, k)?[index - 1])))
        .collect()
}

/// `n` equally spaced momenta covering `[0, pi]` inclusive.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..n).map(|j| PI * j as f64 / (n - 1) as f64).collect(),
    }
}

/// Radius of the gap around zero.
pub fn spectral_gap(spec: &PendantSpec1D) -> Result<f64> {
    if spec.is_pure_lattice() {
        return Err(Error::NotApplicable("the bare lattice has no spectral gap".into()));
    }
    Ok(band_structure(spec)?.central_gap_radius)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub input: PendantSpec1D,
    pub normalized: PendantSpec1D,
    pub decomposition: CellDecomposition,
    /// `None` for the bare lattice.
    pub charpoly: Option<CharPoly>,
    pub bands: BandStructure,
}

pub fn analyze(spec: &PendantSpec1D) -> Result<Report> {
    let normalized = normalize(spec);
    let decomposition = decompose(&normalized)?;
    let charpoly = if decomposition.pure_lattice { None } else { Some(extract(&normalized)?) };
    let bands = band_structure(&normalized)?;
    Ok(Report { input: spec.clone(), normalized, decomposition, charpoly, bands })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, p: &[usize]) -> PendantSpec1D {
        PendantSpec1D::new(r, p.iter().copied()).unwrap()
    }

    #[test]
    fn single_site_bands() {
        let bs = band_structure(&spec(1, &[1])).unwrap();
        assert_eq!(bs.positive_bands.len(), 1);
        assert!((bs.positive_bands[0].lower - 1.0 / 3.0).abs() < 1e-12);
        assert!((bs.positive_bands[0].upper - 1.0).abs() < 1e-12);
        assert!(!bs.has_flat_band);
        assert_eq!(bs.gaps.len(), 1);
        assert!((bs.gaps[0].upper - 1.0 / 3.0).abs() < 1e-12);
        assert!((bs.gaps[0].lower + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn period_two_has_flat_band_inside_gap() {
        let bs = band_structure(&spec(2, &[1])).unwrap();
        let r = 1.0 / libm::sqrt(3.0);
        assert!(bs.has_flat_band);
        assert_eq!(bs.gaps.len(), 1);
        assert!((bs.central_gap_radius - r).abs() < 1e-12);
        assert!(bs.in_spectrum(0.0, 1e-12));
        assert!(!bs.in_spectrum(0.3, 1e-12));
    }

    #[test]
    fn isomorphic_copy_has_same_bands() {
        let a = band_structure(&spec(2, &[1])).unwrap();
        let b = band_structure(&spec(4, &[1, 3])).unwrap();
        assert!(a.spectrum_distance(&b) < 1e-10);
        assert_eq!(a.gaps.len(), b.gaps.len());
    }

    #[test]
    fn unnormalized_input_is_normalized_first() {
        let a = band_structure(&spec(4, &[2, 3])).unwrap();
        let b = band_structure(&spec(4, &[1, 2])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bare_lattice() {
        let bs = band_structure(&spec(3, &[])).unwrap();
        assert!(bs.pure_lattice && bs.gaps.is_empty());
        assert!(matches!(spectral_gap(&spec(3, &[])), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn band_function_closed_forms() {
        let g = spec(1, &[1]);
        let v = band_function(&g, 1, &[0.0, PI / 2.0]).unwrap();
        assert!((v[0].1 - 1.0).abs() < 1e-12);
        assert!((v[1].1 - 1.0 / libm::sqrt(3.0)).abs() < 1e-12);

        let g = spec(2, &[1]);
        let grid = uniform_grid(17);
        let v = band_function(&g, 1, &grid).unwrap();
        for (k, l) in &v {
            assert!((l - libm::sqrt((2.0 + libm::cos(*k)) / 3.0)).abs() < 1e-12);
        }
        assert!(v.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn band_index_errors() {
        let g = spec(2, &[1]);
        assert_eq!(band_function(&g, 0, &[0.0]), Err(Error::BandIndex { index: 0, count: 2 }));
        assert_eq!(band_function(&g, 3, &[0.0]), Err(Error::BandIndex { index: 3, count: 2 }));
    }

    #[test]
    fn gap_radius_matches_grid_minimum() {
        let g = spec(4, &[1, 2]);
        let gap = spectral_gap(&g).unwrap();
        let mut grid_min = f64::INFINITY;
        for k in uniform_grid(257) {
            for x in nonzero_eigenvalues(&g, 0, k).unwrap() {
                grid_min = grid_min.min(x.abs());
            }
        }
        assert!(gap > 0.0);
        assert!((gap - grid_min).abs() < 1e-6);
    }

    #[test]
    fn report_counts() {
        let r = analyze(&spec(6, &[1, 5])).unwrap();
        assert_eq!((r.decomposition.q, r.decomposition.t), (2, 3));
        assert!(r.bands.has_flat_band);
        let r = analyze(&spec(1, &[1])).unwrap();
        assert_eq!((r.decomposition.q, r.decomposition.t), (0, 1));
        assert!(!r.bands.has_flat_band);
    }
}
