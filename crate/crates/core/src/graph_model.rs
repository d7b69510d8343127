//! One-dimensional pendant patterns.
//!
//! A pattern is a period `r` and the set of positions `1..=r` of one cell
//! whose backbone vertex carries an end vertex. The whole graph is the
//! `r`-periodic repetition along `Z`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PendantSpec1D {
    period: usize,
    pendants: Vec<usize>,
}

impl PendantSpec1D {
    /// Validates and sorts the pendant positions (1-based).
    pub fn new(period: usize, pendants: impl IntoIterator<Item = usize>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSpec("period must be at least 1".into()));
        }
        let mut ps: Vec<usize> = pendants.into_iter().collect();
        ps.sort_unstable();
        for w in ps.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSpec(format!("duplicate pendant position {}", w[0])));
            }
        }
        if let Some(&bad) = ps.iter().find(|&&p| p == 0 || p > period) {
            return Err(Error::InvalidSpec(format!(
                "pendant position {bad} outside 1..={period}"
            )));
        }
        Ok(PendantSpec1D { period, pendants: ps })
    }

    fn from_indicator(bits: &[bool]) -> Self {
        PendantSpec1D {
            period: bits.len(),
            pendants: bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn pendants(&self) -> &[usize] {
        &self.pendants
    }

    /// Number of pendants per cell.
    pub fn pendant_count(&self) -> usize {
        self.pendants.len()
    }

    /// Vertices per cell (backbone plus end vertices).
    pub fn cell_size(&self) -> usize {
        self.period + self.pendants.len()
    }

    pub fn is_pure_lattice(&self) -> bool {
        self.pendants.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.pendants.is_empty() || *self == normalize(self)
    }

    pub fn has_pendant(&self, position: usize) -> bool {
        self.pendants.binary_search(&position).is_ok()
    }

    pub fn indicator(&self) -> Vec<bool> {
        (1..=self.period).map(|p| self.has_pendant(p)).collect()
    }

    /// The same graph described with period `times * r`.
    pub fn repeated(&self, times: usize) -> Self {
        let r = self.period;
        let pendants = (0..times)
            .flat_map(|c| self.pendants.iter().map(move |&p| p + c * r))
            .collect();
        PendantSpec1D { period: r * times, pendants }
    }

    /// Translate the pattern by `shift` positions to the left (cyclically).
    pub fn rotated(&self, shift: usize) -> Self {
        let r = self.period;
        let mut pendants: Vec<usize> =
            self.pendants.iter().map(|&p| (p - 1 + r - shift % r) % r + 1).collect();
        pendants.sort_unstable();
        PendantSpec1D { period: r, pendants }
    }
}

/// Run decomposition of the pendant-free backbone vertices of one cell,
/// together with the derived counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDecomposition {
    /// Lengths of maximal blocks of consecutive pendant-free positions,
    /// left to right.
    pub runs: Vec<usize>,
    /// Pendants per cell.
    pub s: usize,
    /// Number of runs.
    pub p: usize,
    /// Number of odd-length runs; the flat-band multiplicity per fiber.
    pub q: usize,
    /// Parity `(r + s) mod 2`.
    pub star: usize,
    /// Number of positive bands, `(r + s - q) / 2`.
    pub t: usize,
    /// Index of the lowest coefficient of the characteristic polynomial,
    /// `(q - star) / 2`.
    pub m0: usize,
    /// No pendants at all: the graph is `Z` itself and the counts above
    /// carry no spectral meaning.
    pub pure_lattice: bool,
}

/// Canonical representative among the cyclic translations of a pattern: the
/// translation with a pendant at position 1 whose sorted position list is
/// lexicographically smallest.
pub fn normalize(spec: &PendantSpec1D) -> PendantSpec1D {
    if spec.pendants.is_empty() {
        return spec.clone();
    }
    spec.pendants
        .iter()
        .map(|&p| spec.rotated(p - 1))
        .min_by(|a, b| a.pendants.cmp(&b.pendants))
        .expect("nonempty pendant set")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether one pattern is a translate of the other, after both are expanded
/// to the least common multiple of their periods. Reflections are not
/// considered.
pub fn is_isomorphic(a: &PendantSpec1D, b: &PendantSpec1D) -> bool {
    let l = a.period / gcd(a.period, b.period) * b.period;
    let ea = a.repeated(l / a.period);
    let eb = b.repeated(l / b.period);
    normalize(&ea) == normalize(&eb)
}

pub fn decompose(spec: &PendantSpec1D) -> Result<CellDecomposition> {
    let r = spec.period;
    let s = spec.pendant_count();
    if s == 0 {
        return Ok(CellDecomposition {
            runs: Vec::new(),
            s: 0,
            p: 0,
            q: 0,
            star: r % 2,
            t: r / 2,
            m0: 0,
            pure_lattice: true,
        });
    }
    if spec.pendants[0] != 1 {
        return Err(Error::NotNormalized);
    }
    let mut runs = Vec::new();
    let mut current = 0;
    for pos in 2..=r {
        if spec.has_pendant(pos) {
            if current > 0 {
                runs.push(current);
            }
            current = 0;
        } else {
            current += 1;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    let q = runs.iter().filter(|&&l| l % 2 == 1).count();
    let star = (r + s) % 2;
    debug_assert_eq!(q % 2, star);
    Ok(CellDecomposition {
        p: runs.len(),
        runs,
        s,
        q,
        star,
        t: (r + s - q) / 2,
        m0: (q - star) / 2,
        pure_lattice: false,
    })
}

/// Degree vector in cell order: backbone positions `1..=r` (3 with a pendant,
/// 2 without), then the end vertices in increasing order of their anchor.
pub fn degrees(spec: &PendantSpec1D) -> Vec<usize> {
    let mut d: Vec<usize> =
        (1..=spec.period).map(|p| if spec.has_pendant(p) { 3 } else { 2 }).collect();
    d.extend(vec![1; spec.pendant_count()]);
    d
}

/// Every normalized pattern of period `r` with at least one pendant, each
/// translation class once.
pub fn normalized_patterns(r: usize) -> Vec<PendantSpec1D> {
    assert!((1..=20).contains(&r), "period out of enumerable range");
    let mut seen = BTreeSet::new();
    // Position 1 always carries a pendant after normalization.
    for mask in 0u32..(1 << (r - 1)) {
        let bits: Vec<bool> =
            (0..r).map(|i| i == 0 || (mask >> (i - 1)) & 1 == 1).collect();
        seen.insert(normalize(&PendantSpec1D::from_indicator(&bits)));
    }
    seen.into_iter().collect()
}
