use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::eval_taylor;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialReport {
    /// `1 − 2^{−j}` for `j = 1..=J`.
    pub radii: Vec<f64>,
    /// `|g(1 − 2^{−j})|` from the truncated Taylor series.
    pub values: Vec<f64>,
    /// `values[J−1] / values[0]`.
    pub ratio: f64,
    /// The deepest radius is within one grid cell of the circle, where the
    /// truncated series no longer resolves `g`.
    pub truncation_warning: bool,
}

impl RadialReport {
    /// Whether `values` strictly decrease from depth `j0` (1-based) on.
    pub fn strictly_decreasing_from(&self, j0: usize) -> bool {
        let start = j0.saturating_sub(1);
        self.values.get(start..).is_none_or(|tail| tail.windows(2).all(|w| w[1] < w[0]))
    }
}

/// Samples `|g|` along the radius towards `z = 1`.
pub fn radial_decay_check(taylor: &[Complex64], depths: usize, grid: usize) -> RadialReport {
    let radii: Vec<f64> = (1..=depths).map(|j| 1.0 - 2f64.powi(-(j as i32))).collect();
    let values: Vec<f64> = radii.iter().map(|&r| eval_taylor(taylor, Complex64::new(r, 0.0)).norm()).collect();
    let ratio = match (values.first(), values.last()) {
        (Some(&a), Some(&b)) if a > 0.0 => b / a,
        _ => f64::NAN,
    };
    RadialReport { radii, values, ratio, truncation_warning: 2f64.powi(-(depths as i32)) < 1.0 / grid as f64 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_no_decay() {
        let rep = radial_decay_check(&[Complex64::new(1.0, 0.0)], 8, 1024);
        assert!(rep.values.iter().all(|&v| v == 1.0));
        assert_eq!(rep.ratio, 1.0);
        assert!(!rep.strictly_decreasing_from(1));
    }

    #[test]
    fn one_minus_z() {
        let rep = radial_decay_check(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], 12, 1 << 14);
        for (j, v) in rep.values.iter().enumerate() {
            assert_eq!(*v, 2f64.powi(-(j as i32 + 1)));
        }
        assert_eq!(rep.ratio, 2f64.powi(-11));
        assert!(rep.strictly_decreasing_from(1));
        assert!(!rep.truncation_warning);
        assert!(radial_decay_check(&[Complex64::new(1.0, 0.0)], 12, 1024).truncation_warning);
    }
}
