use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Complex values on a finite set of weighted atoms.
///
/// Atoms with zero weight form the null set: they are carried along but
/// ignored by norms and essential suprema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub values: Vec<Complex64>,
    pub weights: Vec<f64>,
}

impl SampledFunction {
    pub fn new(values: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        ensure_finite(&values, "sampled function")?;
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidInput(format!("weight {i} is negative or non-finite")));
        }
        Ok(Self { values, weights })
    }

    /// Same atoms, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), self.weights.len());
        Self { values, weights: self.weights.clone() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `∫|f|² dµ` as a weighted sum.
    pub fn norm_sq(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| w * v.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Maximum modulus over positive-weight atoms.
    pub fn ess_sup(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(v, _)| v.norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn same_atoms(&self, other: &Self) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::InvalidInput("functions live on different atom sets".into()));
        }
        Ok(())
    }
}
