use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Boundary samples `h(e^{iθ_j})` on the uniform grid `θ_j = 2πj/N`, reported
/// in `(−π, π]`.
///
/// Norms use the normalized measure `dθ/2π`, so `‖h‖₂² = (1/N)Σ|h_j|²`, and
/// Fourier coefficients carry the `1/N` factor: `ĥ_m = (1/N)Σ h_j e^{−imθ_j}`.
/// With these conventions Parseval reads `‖h‖₂² = Σ|ĥ_m|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    samples: Vec<Complex64>,
}

/// Fourier coefficients `ĥ_m` for `m ∈ [−N/2, N/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn half(&self) -> i64 {
        (self.coeffs.len() / 2) as i64
    }

    /// `ĥ_m`; zero outside `[−N/2, N/2)`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        let h = self.half();
        if m < -h || m >= h {
            return Complex64::default();
        }
        self.coeffs[(m + h) as usize]
    }

    /// Coefficients in the order `m = −N/2, …, N/2 − 1`.
    pub fn ordered(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `ĥ_0, ĥ_1, …, ĥ_{N/2−1}`.
    pub fn nonnegative(&self) -> &[Complex64] {
        &self.coeffs[self.coeffs.len() / 2..]
    }

    /// `ĥ_{−N/2}, …, ĥ_{−1}`.
    pub fn negative(&self) -> &[Complex64] {
        &self.coeffs[..self.coeffs.len() / 2]
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `‖negative modes‖ / ‖all modes‖`, zero for the zero function.
    pub fn negative_leakage(&self) -> f64 {
        let total = self.energy();
        if total == 0.0 {
            return 0.0;
        }
        (self.negative().iter().map(|z| z.norm_sqr()).sum::<f64>() / total).sqrt()
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidInput(format!("grid size {n} must be a power of two >= 2")));
    }
    Ok(())
}

/// Forward DFT with the `1/N` factor, natural index order.
pub(crate) fn forward(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
    buf
}

/// Inverse of [`forward`]: `h_j = Σ_m ĥ_m e^{imθ_j}`, natural index order.
pub(crate) fn inverse(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

/// Grid angle of sample `j` in `(−π, π]`.
pub fn theta(j: usize, n: usize) -> f64 {
    let t = 2.0 * PI * j as f64 / n as f64;
    if 2 * j > n {
        t - 2.0 * PI
    } else {
        t
    }
}

impl GridFunction {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        check_size(samples.len())?;
        ensure_finite(&samples, "grid samples")?;
        Ok(Self { samples })
    }

    /// Samples `f(θ_j)`.
    pub fn from_theta(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_size(n)?;
        Self::new((0..n).map(|j| f(theta(j, n))).collect())
    }

    /// Samples `f(e^{iθ_j})`.
    pub fn from_boundary(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::from_theta(n, |t| f(Complex64::from_polar(1.0, t)))
    }

    pub fn constant(n: usize, c: Complex64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    /// Inverse transform of coefficients ordered `m = −N/2, …, N/2 − 1`.
    pub fn from_spectrum(ordered: &[Complex64]) -> Result<Self> {
        let n = ordered.len();
        check_size(n)?;
        let mut natural = vec![Complex64::default(); n];
        for (i, c) in ordered.iter().enumerate() {
            let m = i as i64 - (n / 2) as i64;
            natural[m.rem_euclid(n as i64) as usize] = *c;
        }
        Self::new(inverse(&natural))
    }

    /// Grid function with Taylor coefficients `a_0, a_1, …` (at most `N/2`).
    pub fn from_taylor(n: usize, taylor: &[Complex64]) -> Result<Self> {
        check_size(n)?;
        if taylor.len() > n / 2 {
            return Err(Error::InvalidInput(format!("{} Taylor coefficients exceed N/2 = {}", taylor.len(), n / 2)));
        }
        let mut natural = vec![Complex64::default(); n];
        natural[..taylor.len()].copy_from_slice(taylor);
        Self::new(inverse(&natural))
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn theta(&self, j: usize) -> f64 {
        theta(j, self.len())
    }

    pub fn spectrum(&self) -> Spectrum {
        let n = self.len();
        let natural = forward(&self.samples);
        let mut coeffs = Vec::with_capacity(n);
        coeffs.extend_from_slice(&natural[n / 2..]);
        coeffs.extend_from_slice(&natural[..n / 2]);
        Spectrum { coeffs }
    }

    /// `(1/N)Σ|h_j|²`.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.len() as f64
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `⟨a, b⟩ = (1/N)Σ a_j conj(b_j)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum::<Complex64>() / self.len() as f64
    }

    pub fn sup(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { samples: self.samples.iter().copied().map(f).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidInput(format!("grid sizes {} and {} differ", self.len(), other.len())));
        }
        Ok(Self { samples: self.samples.iter().zip(&other.samples).map(|(a, b)| f(*a, *b)).collect() })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `|‖h‖₂² − Σ|ĥ_m|²|`.
    pub fn parseval_defect(&self) -> f64 {
        (self.norm_sq() - self.spectrum().energy()).abs()
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|z| z.im == 0.0)
    }
}

/// Zeroes the negatively indexed Fourier coefficients (the Riesz projection
/// onto `H²`).
pub fn analytic_project(h: &GridFunction) -> GridFunction {
    let n = h.len();
    let mut natural = forward(h.samples());
    for z in &mut natural[n / 2..] {
        *z = Complex64::default();
    }
    GridFunction { samples: inverse(&natural) }
}

/// Evaluates `Σ a_m z^m` by Horner's rule.
pub fn eval_taylor(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::default(), |acc, c| acc * z + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_range() {
        assert_eq!(theta(0, 8), 0.0);
        assert_eq!(theta(4, 8), PI);
        assert!((theta(5, 8) + 3.0 * PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn spectrum_of_pure_modes() {
        let n = 16;
        let h = GridFunction::from_theta(n, |t| Complex64::from_polar(1.0, 3.0 * t)).unwrap();
        let s = h.spectrum();
        assert!((s.coeff(3) - 1.0).norm() < 1e-14);
        assert!((s.energy() - 1.0).abs() < 1e-14);
        let back = GridFunction::from_spectrum(s.ordered()).unwrap();
        assert!(back.max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn projection_examples() {
        let n = 64;
        let neg = GridFunction::from_theta(n, |t| Complex64::from_polar(1.0, -t)).unwrap();
        assert!(analytic_project(&neg).sup() < 1e-15);

        let cos = GridFunction::from_theta(n, |t| Complex64::new(t.cos(), 0.0)).unwrap();
        let p = analytic_project(&cos).spectrum();
        assert!((p.coeff(1) - 0.5).norm() < 1e-15);
        assert!(p.coeff(-1).norm() < 1e-15);
        assert!((p.energy() - 0.25).abs() < 1e-15);

        let analytic = GridFunction::from_taylor(n, &[Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)]).unwrap();
        assert!(analytic_project(&analytic).max_abs_diff(&analytic) < 1e-12);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridFunction::new(vec![Complex64::default(); 6]).is_err());
        assert!(GridFunction::new(vec![Complex64::default(); 1]).is_err());
        assert!(GridFunction::from_taylor(4, &[Complex64::default(); 3]).is_err());
    }

    #[test]
    fn horner() {
        let c = [1.0, -1.0, 0.5].map(|x| Complex64::new(x, 0.0));
        let z = Complex64::new(0.3, 0.4);
        assert!((eval_taylor(&c, z) - (1.0 - z + 0.5 * z * z)).norm() < 1e-15);
    }
}
