//! JSON records.
//!
//! Floats are written as `{:.16e}` (17 significant digits, exact round
//! trip); NaN and infinities become `null`. Keys appear in declaration
//! order, so output is byte-for-byte deterministic.

use std::collections::BTreeMap;
use std::io;

use num_traits::ToPrimitive;
use pendant_core::bands::{Band, DEFAULT_GRID};
use pendant_core::{CellDecomposition, CharPoly, Report, SpectrumSample2D};
use serde::ser::{Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::spec_file::SpecJson;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Pretty-printing formatter with fixed-width scientific floats.
pub struct ExactFloatFormatter<'a>(PrettyFormatter<'a>);

impl Default for ExactFloatFormatter<'_> {
    fn default() -> Self {
        ExactFloatFormatter(PrettyFormatter::with_indent(b"  "))
    }
}

fn write_float<W: ?Sized + io::Write>(w: &mut W, x: f64) -> io::Result<()> {
    if x.is_finite() {
        write!(w, "{x:.16e}")
    } else {
        w.write_all(b"null")
    }
}

impl Formatter for ExactFloatFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, x: f64) -> io::Result<()> {
        write_float(w, x)
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, x: f32) -> io::Result<()> {
        write_float(w, x as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloatFormatter::default());
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Integer coefficient: a JSON number when it fits in `i64`, a decimal
/// string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Small(i64),
    Big(String),
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coefficient::Small(v) => s.serialize_i64(*v),
            Coefficient::Big(v) => s.serialize_str(v),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CharPolyJson {
    pub star: usize,
    pub s: usize,
    pub q: usize,
    pub coeffs: BTreeMap<usize, Coefficient>,
    pub sign: i8,
}

impl From<&CharPoly> for CharPolyJson {
    fn from(p: &CharPoly) -> Self {
        let coeffs = p
            .nonzero_coeffs()
            .into_iter()
            .map(|(m, a)| {
                let c = a.to_i64().map(Coefficient::Small).unwrap_or_else(|| Coefficient::Big(a.to_string()));
                (m, c)
            })
            .collect();
        CharPolyJson { star: p.star, s: p.s, q: p.q, coeffs, sign: p.sign }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DecompositionJson {
    pub runs: Vec<usize>,
    pub s: usize,
    pub p: usize,
    pub q: usize,
    pub star: usize,
    pub t: usize,
    pub m0: usize,
}

impl From<&CellDecomposition> for DecompositionJson {
    fn from(d: &CellDecomposition) -> Self {
        DecompositionJson { runs: d.runs.clone(), s: d.s, p: d.p, q: d.q, star: d.star, t: d.t, m0: d.m0 }
    }
}

fn pairs(bands: &[Band]) -> Vec<[f64; 2]> {
    bands.iter().map(|b| [b.lower, b.upper]).collect()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Settings {
    pub grid: usize,
    pub tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { grid: DEFAULT_GRID, tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AnalysisJson {
    pub spec: SpecJson,
    pub normalized: SpecJson,
    pub decomposition: DecompositionJson,
    pub pure_lattice: bool,
    pub charpoly: Option<CharPolyJson>,
    /// Positive bands `[a_i, b_i]`, from the top.
    pub bands: Vec<[f64; 2]>,
    pub negative_bands: Vec<[f64; 2]>,
    pub flat_band: bool,
    pub flat_band_multiplicity: usize,
    /// Open gaps in `(-1, 1)`, ascending.
    pub gaps: Vec<[f64; 2]>,
    pub spectral_gap: Option<f64>,
    pub overlapping_bands: bool,
    pub settings: Settings,
}

impl AnalysisJson {
    pub fn new(report: &Report, settings: Settings) -> Self {
        let b = &report.bands;
        let negative: Vec<Band> = b.positive_bands.iter().map(Band::mirrored).collect();
        AnalysisJson {
            spec: (&report.input).into(),
            normalized: (&report.normalized).into(),
            decomposition: (&report.decomposition).into(),
            pure_lattice: b.pure_lattice,
            charpoly: report.charpoly.as_ref().map(Into::into),
            bands: pairs(&b.positive_bands),
            negative_bands: pairs(&negative),
            flat_band: b.has_flat_band,
            flat_band_multiplicity: b.flat_band_multiplicity,
            gaps: pairs(&b.gaps),
            spectral_gap: (!b.pure_lattice).then_some(b.central_gap_radius),
            overlapping_bands: b.overlapping,
            settings,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Scan2dJson {
    pub spec: SpecJson,
    pub grid: usize,
    pub cell_size: usize,
    pub eigenvalue_count: usize,
    pub zero_count: usize,
    pub min_positive: Option<f64>,
    pub max_spacing: f64,
    pub symmetry_defect: f64,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

impl Scan2dJson {
    pub fn new(spec: SpecJson, m: usize, s: &SpectrumSample2D) -> Self {
        Scan2dJson {
            spec,
            grid: m,
            cell_size: s.cell_size(),
            eigenvalue_count: s.eigenvalues.len(),
            zero_count: s.zero_count,
            min_positive: s.min_positive,
            max_spacing: s.max_spacing,
            symmetry_defect: s.symmetry_defect(),
            min: s.eigenvalues.first().copied(),
            max: s.eigenvalues.last().copied(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        let xs = [0.1, 1.0 / 3.0, -2.5e-300, 1.0, f64::MIN_POSITIVE, 0.0];
        let text = to_json(&xs.to_vec());
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, xs);
        assert!(text.contains("1.0000000000000000e0"));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(to_json(&vec![f64::NAN, f64::INFINITY]).split_whitespace().collect::<String>(), "[null,null]");
    }

    #[test]
    fn big_coefficients_become_strings() {
        let c = Coefficient::Big("123456789012345678901234567890".into());
        assert_eq!(to_json(&c).trim(), "\"123456789012345678901234567890\"");
    }
}
