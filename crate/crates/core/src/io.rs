//! File formats.
//!
//! Complex numbers are `[re, im]` pairs everywhere in JSON. Sequences may also
//! be plain real arrays, or CSV with header `index,re,im`. Grid functions have
//! a binary form: a little-endian `u64` length followed by interleaved `f64`
//! real and imaginary parts.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::GridFunction;
use crate::layered::LayeredSpace;
use crate::sampled::SampledFunction;
use crate::witness::PointwiseRelation;

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Pair([f64; 2]),
    Real(f64),
}

impl From<Entry> for Complex64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Pair([re, im]) => Complex64::new(re, im),
            Entry::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

/// Parses a JSON array whose entries are `[re, im]` pairs or bare reals.
pub fn sequence_from_json(text: &str) -> Result<Vec<Complex64>> {
    let entries: Vec<Entry> = serde_json::from_str(text)?;
    Ok(entries.into_iter().map(Complex64::from).collect())
}

pub fn sequence_to_json(a: &[Complex64]) -> Result<String> {
    Ok(serde_json::to_string(a)?)
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    index: usize,
    re: f64,
    im: f64,
}

/// Reads CSV with header `index,re,im`. Rows may appear in any order but the
/// indices must cover `0..len` (or `1..=len`) exactly once.
pub fn sequence_from_csv(reader: impl Read) -> Result<Vec<Complex64>> {
    let mut rows: Vec<CsvRow> = csv::Reader::from_reader(reader)
        .deserialize()
        .collect::<std::result::Result<_, _>>()?;
    rows.sort_by_key(|r| r.index);
    let base = rows.first().map_or(0, |r| r.index);
    if base > 1 {
        return Err(Error::InvalidInput(format!("csv indices start at {base}")));
    }
    for (k, row) in rows.iter().enumerate() {
        if row.index != k + base {
            return Err(Error::InvalidInput(format!("csv index {} missing or repeated", k + base)));
        }
    }
    Ok(rows.into_iter().map(|r| Complex64::new(r.re, r.im)).collect())
}

/// Writes CSV with header `index,re,im`, indices starting at 1.
pub fn sequence_to_csv(a: &[Complex64], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for (k, z) in a.iter().enumerate() {
        w.serialize(CsvRow { index: k + 1, re: z.re, im: z.im })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a sequence from a path, choosing CSV for `.csv` and JSON otherwise.
pub fn read_sequence(path: &Path) -> Result<Vec<Complex64>> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        sequence_from_csv(std::fs::File::open(path)?)
    } else {
        sequence_from_json(&std::fs::read_to_string(path)?)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn read_relation(path: &Path) -> Result<PointwiseRelation> {
    let rel: PointwiseRelation = read_json(path)?;
    rel.validate_shape()?;
    Ok(rel)
}

pub fn read_sampled(path: &Path) -> Result<SampledFunction> {
    let f: SampledFunction = read_json(path)?;
    SampledFunction::new(f.values, f.weights)
}

pub fn read_layered(path: &Path) -> Result<LayeredSpace> {
    let s: LayeredSpace = read_json(path)?;
    s.validate()?;
    Ok(s)
}

pub fn read_points(path: &Path) -> Result<Vec<Complex64>> {
    sequence_from_json(&std::fs::read_to_string(path)?)
}

pub fn grid_to_bytes(f: &GridFunction) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 16 * f.len());
    out.extend_from_slice(&(f.len() as u64).to_le_bytes());
    for z in f.samples() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn grid_from_bytes(bytes: &[u8]) -> Result<GridFunction> {
    let (head, body) = bytes
        .split_first_chunk::<8>()
        .ok_or_else(|| Error::InvalidInput("grid file shorter than its header".into()))?;
    let n = u64::from_le_bytes(*head) as usize;
    if body.len() != n.saturating_mul(16) {
        return Err(Error::InvalidInput(format!(
            "grid header says {n} samples but {} bytes follow",
            body.len()
        )));
    }
    let samples = body
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect();
    GridFunction::new(samples)
}

/// Reads a grid function: JSON for `.json`, the binary form otherwise. JSON
/// may be a bare sample array or `{"samples": [...]}`.
pub fn read_grid(path: &Path) -> Result<GridFunction> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let text = std::fs::read_to_string(path)?;
        let samples = match serde_json::from_str::<GridFunction>(&text) {
            Ok(g) => g.into_samples(),
            Err(_) => sequence_from_json(&text)?,
        };
        GridFunction::new(samples)
    } else {
        grid_from_bytes(&std::fs::read(path)?)
    }
}

pub fn write_grid(f: &GridFunction, path: &Path) -> Result<()> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        std::fs::write(path, serde_json::to_string(f)?)?;
    } else {
        std::fs::write(path, grid_to_bytes(f))?;
    }
    Ok(())
}
