//! CSV tables. Floats use `{:.16e}` so that reading a file back yields the
//! exact values that were written.

use std::io::{Read, Write};

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("expected header {expected:?}, found {found:?}")]
    Header { expected: Vec<&'static str>, found: Vec<String> },
    #[error("row {row}, column `{column}`: cannot parse {value:?}")]
    Value { row: usize, column: &'static str, value: String },
}

pub const BAND_HEADER: [&str; 3] = ["k", "i", "lambda"];
pub const SCAN_HEADER: [&str; 3] = ["k1", "k2", "lambda"];

/// One sample of band `i` (1-based from the top) at momentum `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSample {
    pub k: f64,
    pub i: usize,
    pub lambda: f64,
}

/// One eigenvalue of the 2D fiber at `(k1, k2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSample {
    pub k1: f64,
    pub k2: f64,
    pub lambda: f64,
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_bands<W: Write>(w: W, samples: &[BandSample]) -> Result<(), ExportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BAND_HEADER)?;
    for s in samples {
        out.write_record([float(s.k), s.i.to_string(), float(s.lambda)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_scan<W: Write>(w: W, samples: &[ScanSample]) -> Result<(), ExportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SCAN_HEADER)?;
    for s in samples {
        out.write_record([float(s.k1), float(s.k2), float(s.lambda)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn read_table<R: Read>(r: R, header: [&'static str; 3]) -> Result<Vec<[String; 3]>, ExportError> {
    let mut rdr = csv::Reader::from_reader(r);
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(ExportError::Header { expected: header.to_vec(), found });
    }
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            Ok([rec[0].to_owned(), rec[1].to_owned(), rec[2].to_owned()])
        })
        .collect()
}

fn parse<T: std::str::FromStr>(row: usize, column: &'static str, value: &str) -> Result<T, ExportError> {
    value.trim().parse().map_err(|_| ExportError::Value { row, column, value: value.to_owned() })
}

pub fn read_bands<R: Read>(r: R) -> Result<Vec<BandSample>, ExportError> {
    read_table(r, BAND_HEADER)?
        .iter()
        .enumerate()
        .map(|(n, [k, i, l])| {
            Ok(BandSample { k: parse(n + 1, "k", k)?, i: parse(n + 1, "i", i)?, lambda: parse(n + 1, "lambda", l)? })
        })
        .collect()
}

pub fn read_scan<R: Read>(r: R) -> Result<Vec<ScanSample>, ExportError> {
    read_table(r, SCAN_HEADER)?
        .iter()
        .enumerate()
        .map(|(n, [a, b, l])| {
            Ok(ScanSample { k1: parse(n + 1, "k1", a)?, k2: parse(n + 1, "k2", b)?, lambda: parse(n + 1, "lambda", l)? })
        })
        .collect()
}
