//! Square-summable sequences, their suffix sums, and the weighted-series bound
//! `Σ |a_k|²/√r_{k-1} ≤ 2(√r_m − √r_n)` that drives every weight construction.
//!
//! Indices are 1-based to match the usual notation: a profile of length `N`
//! stores `|a_1|², …, |a_N|²` and suffix sums `r_0, …, r_N`, with `r_N` equal
//! to the mass of the modelled tail beyond the stored prefix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Closed-form model of the sequence beyond the stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailModel {
    /// The sequence stops after the stored prefix.
    Zero,
    /// `|a_{N+j}|² = |a_N|²·ratio^j` for `j ≥ 1`, with `0 < ratio < 1`.
    Geometric { ratio: f64 },
    /// Unresolved residual energy lumped into `r_N`.
    Mass { mass: f64 },
}

impl TailModel {
    fn mass(&self, last_sq: f64) -> f64 {
        match *self {
            TailModel::Zero => 0.0,
            TailModel::Geometric { ratio } => last_sq * ratio / (1.0 - ratio),
            TailModel::Mass { mass } => mass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailProfile {
    magnitudes_sq: Vec<f64>,
    suffix_sums: Vec<f64>,
    tail: TailModel,
}

impl TailProfile {
    /// Builds a profile from squared magnitudes by backward accumulation.
    pub fn from_magnitudes_sq(magnitudes_sq: Vec<f64>, tail: TailModel) -> Result<Self> {
        if magnitudes_sq.is_empty() {
            return Err(Error::InvalidInput("tail profile needs at least one term".into()));
        }
        if let Some(i) = magnitudes_sq.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput(format!(
                "squared magnitude at index {} is negative or non-finite",
                i + 1
            )));
        }
        match tail {
            TailModel::Geometric { ratio } if !(ratio > 0.0 && ratio < 1.0) => {
                return Err(Error::InvalidInput(format!("geometric tail ratio {ratio} outside (0, 1)")));
            }
            TailModel::Mass { mass } if !(mass.is_finite() && mass >= 0.0) => {
                return Err(Error::InvalidInput(format!("tail mass {mass} must be finite and >= 0")));
            }
            _ => {}
        }
        let n = magnitudes_sq.len();
        let mut suffix_sums = vec![0.0; n + 1];
        suffix_sums[n] = tail.mass(magnitudes_sq[n - 1]);
        for k in (0..n).rev() {
            suffix_sums[k] = suffix_sums[k + 1] + magnitudes_sq[k];
        }
        Ok(Self { magnitudes_sq, suffix_sums, tail })
    }

    /// Number of stored terms `N`.
    pub fn len(&self) -> usize {
        self.magnitudes_sq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes_sq.is_empty()
    }

    /// `|a_k|²` for `1 ≤ k ≤ N`.
    pub fn a_sq(&self, k: usize) -> f64 {
        self.magnitudes_sq[k - 1]
    }

    /// `r_n` for `0 ≤ n ≤ N`.
    pub fn r(&self, n: usize) -> f64 {
        self.suffix_sums[n]
    }

    pub fn magnitudes_sq(&self) -> &[f64] {
        &self.magnitudes_sq
    }

    pub fn suffix_sums(&self) -> &[f64] {
        &self.suffix_sums
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    /// Total energy `r_0`.
    pub fn total(&self) -> f64 {
        self.suffix_sums[0]
    }

    /// True when no mass lies beyond the last nonzero stored term.
    pub fn has_finite_support(&self) -> bool {
        self.suffix_sums[self.len()] == 0.0
    }

    /// Default absolute tolerance for bound checks, `1e-12·(1 + r_0)`.
    pub fn default_tol(&self) -> f64 {
        1e-12 * (1.0 + self.total())
    }

    /// Largest telescoping defect `max_k |r_{k-1} − r_k − |a_k|²|`.
    pub fn telescoping_defect(&self) -> f64 {
        (1..=self.len())
            .map(|k| (self.r(k - 1) - self.r(k) - self.a_sq(k)).abs())
            .fold(0.0, f64::max)
    }
}

/// Suffix sums of `|a_k|²` for a finite complex sequence `a_1, …, a_N`.
pub fn tail_profile(a: &[Complex64]) -> Result<TailProfile> {
    ensure_finite(a, "sequence")?;
    TailProfile::from_magnitudes_sq(a.iter().map(|z| z.norm_sqr()).collect(), TailModel::Zero)
}

fn check_window(profile: &TailProfile, m: usize, n: usize) -> Result<()> {
    if m >= n || n > profile.len() {
        return Err(Error::InvalidInput(format!(
            "window ({m}, {n}] must satisfy m < n <= {}",
            profile.len()
        )));
    }
    match (m..n).find(|&i| profile.r(i) <= 0.0) {
        Some(index) => Err(Error::DegenerateTail { index }),
        None => Ok(()),
    }
}

/// `Σ_{k=m+1}^{n} |a_k|²/√r_{k-1}`.
pub fn olympiad_weighted_sum(profile: &TailProfile, m: usize, n: usize) -> Result<f64> {
    check_window(profile, m, n)?;
    Ok((m + 1..=n).map(|k| profile.a_sq(k) / profile.r(k - 1).sqrt()).sum())
}

/// The weighted series from `m` to infinity, continuing past the stored
/// prefix with the closed form of the tail model.
pub fn olympiad_weighted_series(profile: &TailProfile, m: usize) -> Result<f64> {
    let n = profile.len();
    let head = if m < n { olympiad_weighted_sum(profile, m, n)? } else { 0.0 };
    let rest = match profile.tail() {
        TailModel::Zero => 0.0,
        TailModel::Geometric { ratio } => {
            // |a_{N+j}|²/√r_{N+j-1} = |a_N|·√(1-q)·q^{j/2}
            let q = ratio.sqrt();
            profile.a_sq(n).sqrt() * (1.0 - ratio).sqrt() * q / (1.0 - q)
        }
        TailModel::Mass { .. } => {
            return Err(Error::InvalidInput(
                "a lumped tail mass has no term structure to sum".into(),
            ))
        }
    };
    Ok(head + rest)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OlympiadReport {
    pub m: usize,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub holds: bool,
}

/// Checks `olympiad_weighted_sum(m, n) ≤ 2(√r_m − √r_n) + tol`.
pub fn verify_olympiad_bound(
    profile: &TailProfile,
    m: usize,
    n: usize,
    tol: Option<f64>,
) -> Result<OlympiadReport> {
    let lhs = olympiad_weighted_sum(profile, m, n)?;
    let rhs = 2.0 * (profile.r(m).sqrt() - profile.r(n).sqrt());
    let tol = tol.unwrap_or_else(|| profile.default_tol());
    Ok(OlympiadReport { m, n, lhs, rhs, tol, holds: lhs <= rhs + tol })
}

/// Windows `(m, n]` with both ends on a roughly logarithmic grid of `1..=len`.
pub fn log_grid_windows(len: usize, points: usize) -> Vec<(usize, usize)> {
    let mut grid: Vec<usize> = (0..points)
        .map(|i| {
            let t = i as f64 / (points.max(2) - 1) as f64;
            ((len as f64).powf(t).round() as usize).clamp(1, len)
        })
        .collect();
    grid.dedup();
    let mut windows = Vec::new();
    for (i, &m) in grid.iter().enumerate() {
        for &n in &grid[i + 1..] {
            windows.push((m, n));
        }
    }
    windows
}
