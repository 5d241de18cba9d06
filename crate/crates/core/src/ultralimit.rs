//! Decidable fragments of ultrafilter limits on bounded sequences.
//!
//! Principal ultrafilters are evaluated directly. Non-principal ones are
//! never constructed; the only answers given for them are those shared by
//! every non-principal ultrafilter, which follow from a settled tail.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

pub const DEFAULT_TAIL_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedSequence {
    values: Vec<Complex64>,
    sup_norm: f64,
}

impl BoundedSequence {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        ensure_finite(&values, "bounded sequence")?;
        let sup_norm = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(Self { values, sup_norm })
    }

    pub fn from_real(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::new(values.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Limit along the principal ultrafilter at `m` (1-based): the term `a_m`.
pub fn principal_limit(a: &BoundedSequence, m: usize) -> Result<Complex64> {
    if m == 0 || m > a.len() {
        return Err(Error::InvalidInput(format!("index {m} outside 1..={}", a.len())));
    }
    Ok(a.values[m - 1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EventualLimit {
    /// Every examined tail sample lies within `tol` of `limit`; `radius` is
    /// the largest deviation seen.
    Settled { limit: Complex64, radius: f64 },
    NoVerdict,
}

/// Examines the trailing `tail_fraction` of the samples and reports their
/// mean when the whole tail sits within `tol` of it.
pub fn eventual_limit(a: &BoundedSequence, tol: f64, tail_fraction: f64) -> Result<EventualLimit> {
    if !(tail_fraction > 0.0 && tail_fraction < 1.0) {
        return Err(Error::InvalidInput(format!("tail fraction {tail_fraction} outside (0, 1)")));
    }
    if a.is_empty() {
        return Ok(EventualLimit::NoVerdict);
    }
    let count = ((a.len() as f64 * tail_fraction).ceil() as usize).clamp(1, a.len());
    let tail = &a.values[a.len() - count..];
    let mean = tail.iter().sum::<Complex64>() / count as f64;
    let radius = tail.iter().map(|z| (z - mean).norm()).fold(0.0, f64::max);
    Ok(if radius <= tol {
        EventualLimit::Settled { limit: mean, radius }
    } else {
        EventualLimit::NoVerdict
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// In `m_F` for every non-principal ultrafilter `F`.
    Yes,
    /// In no `m_F` with `F` non-principal.
    No,
    /// Depends on the ultrafilter, or the tail has not settled.
    Undecidable,
}

/// Membership of `a` in the maximal ideals `{f : lim_F f = 0}` of `ℓ∞` over
/// all non-principal `F` at once.
pub fn ideal_membership_nonprincipal(a: &BoundedSequence, tol: f64) -> Result<Membership> {
    ideal_membership_with_tail(a, tol, DEFAULT_TAIL_FRACTION)
}

pub fn ideal_membership_with_tail(a: &BoundedSequence, tol: f64, tail_fraction: f64) -> Result<Membership> {
    Ok(match eventual_limit(a, tol, tail_fraction)? {
        EventualLimit::Settled { limit, .. } if limit.norm() <= tol => Membership::Yes,
        EventualLimit::Settled { limit, .. } if limit.norm() > 2.0 * tol => Membership::No,
        _ => Membership::Undecidable,
    })
}
