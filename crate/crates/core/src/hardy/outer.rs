//! Outer functions with prescribed boundary log-modulus.
//!
//! For real `k` on the grid, the Herglotz integral
//! `(1/2π)∫ (e^{iθ}+z)/(e^{iθ}−z) k(θ) dθ` has Taylor coefficients
//! `c_0 = k̂_0` and `c_m = 2k̂_m` for `m ≥ 1`; its real part on the circle is
//! `k`. The Nyquist mode `k̂_{−N/2}` enters as `c_{N/2}` with weight one,
//! which keeps `Re u = k` exact at every grid sample.
//!
//! `g = exp(u)` has infinitely many Taylor coefficients, so the exponential
//! is taken on an oversampled grid and only then transformed back; this
//! keeps the aliasing of high modes out of the reported coefficients.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{eval_taylor, forward, inverse, GridFunction};
use crate::error::{Error, Result};

/// Largest admissible `max Re u` before `exp` overflows.
const EXP_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OuterOptions {
    /// Fine grid is `oversample·N` points; power of two.
    pub oversample: usize,
    /// Floor `ε` for the modulus: samples with `k < log ε` (including `−∞`)
    /// are raised to `log ε`. `None` uses `π/(e·N)`, the cell average of
    /// `log|θ|` at a simple boundary zero.
    pub clamp: Option<f64>,
}

impl Default for OuterOptions {
    fn default() -> Self {
        Self { oversample: 8, clamp: None }
    }
}

impl OuterOptions {
    pub fn clamp_for(&self, n: usize) -> f64 {
        self.clamp.unwrap_or(PI / (E * n as f64))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterFunction {
    /// `g(e^{iθ_j})` on the base grid.
    pub boundary: GridFunction,
    /// `ĝ_0, …, ĝ_{N/2−1}`, from the oversampled transform.
    pub taylor: Vec<Complex64>,
    /// Taylor coefficients `c_0, …, c_{N/2}` of `u = log g`.
    pub log_coeffs: Vec<Complex64>,
    /// Number of samples raised to the clamp floor.
    pub clamp_count: usize,
    pub clamp: f64,
    /// Relative energy of negative modes of `g` on the fine grid.
    pub negative_leakage: f64,
    pub oversample: usize,
}

impl OuterFunction {
    /// `g(z) = exp(Σ c_m z^m)` for `|z| ≤ 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_taylor(&self.log_coeffs, z).exp()
    }

    /// Values of `g` on the `oversample·N` grid.
    pub fn fine_samples(&self) -> Vec<Complex64> {
        fine_log_samples(&self.log_coeffs, self.boundary.len() * self.oversample)
            .into_iter()
            .map(Complex64::exp)
            .collect()
    }
}

fn fine_log_samples(log_coeffs: &[Complex64], fine_n: usize) -> Vec<Complex64> {
    let mut natural = vec![Complex64::default(); fine_n];
    natural[..log_coeffs.len()].copy_from_slice(log_coeffs);
    inverse(&natural)
}

/// Outer function `g` with `|g| = e^k` on the grid.
pub fn outer_from_modulus(k: &GridFunction, opts: OuterOptions) -> Result<OuterFunction> {
    let n = k.len();
    if !k.is_real() {
        return Err(Error::InvalidInput("log-modulus must be real".into()));
    }
    if opts.oversample == 0 || !opts.oversample.is_power_of_two() {
        return Err(Error::InvalidInput("oversample factor must be a power of two".into()));
    }
    let clamp = opts.clamp_for(n);
    if !(clamp > 0.0) {
        return Err(Error::InvalidInput(format!("clamp floor {clamp} must be positive")));
    }
    let floor = clamp.ln();
    let mut clamp_count = 0;
    let mut logmod = Vec::with_capacity(n);
    for (j, z) in k.samples().iter().enumerate() {
        let v = z.re;
        if v.is_nan() || v == f64::INFINITY {
            return Err(Error::InvalidInput(format!("log-modulus sample {j} is {v}")));
        }
        if v < floor {
            clamp_count += 1;
        }
        logmod.push(Complex64::new(v.max(floor), 0.0));
    }
    let kh = forward(&logmod);
    let max_k = logmod.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    if max_k > EXP_LIMIT {
        return Err(Error::ScaleOverflow { mean_log: kh[0].re, suggested_scale: (-max_k).exp() });
    }

    let half = n / 2;
    let mut log_coeffs = Vec::with_capacity(half + 1);
    log_coeffs.push(Complex64::new(kh[0].re, 0.0));
    log_coeffs.extend(kh[1..half].iter().map(|c| c * 2.0));
    log_coeffs.push(Complex64::new(kh[half].re, 0.0));

    let fine_n = n * opts.oversample;
    let fine: Vec<Complex64> = fine_log_samples(&log_coeffs, fine_n).into_iter().map(Complex64::exp).collect();
    let boundary = GridFunction::new((0..n).map(|j| fine[j * opts.oversample]).collect())?;
    let spec = forward(&fine);
    let taylor = spec[..half].to_vec();
    let total: f64 = spec.iter().map(|z| z.norm_sqr()).sum();
    let neg: f64 = spec[fine_n / 2..].iter().map(|z| z.norm_sqr()).sum();
    let negative_leakage = if total > 0.0 { (neg / total).sqrt() } else { 0.0 };
    Ok(OuterFunction {
        boundary,
        taylor,
        log_coeffs,
        clamp_count,
        clamp,
        negative_leakage,
        oversample: opts.oversample,
    })
}

/// `k = log|F|` from boundary samples of `F`; zeros map to `−∞` and are left
/// for the clamp in [`outer_from_modulus`].
pub fn log_modulus(f: &GridFunction) -> GridFunction {
    f.map(|z| Complex64::new(z.norm().ln(), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_log_modulus_is_one() {
        let k = GridFunction::constant(256, Complex64::default()).unwrap();
        let g = outer_from_modulus(&k, OuterOptions::default()).unwrap();
        assert!(g.boundary.samples().iter().all(|z| (z - 1.0).norm() < 1e-15));
        assert!((g.taylor[0] - 1.0).norm() < 1e-15);
        assert_eq!(g.clamp_count, 0);
    }

    #[test]
    fn constant_modulus() {
        let c: f64 = 3.5;
        let k = GridFunction::constant(1024, Complex64::new(c.ln(), 0.0)).unwrap();
        let g = outer_from_modulus(&k, OuterOptions::default()).unwrap();
        assert!(g.boundary.samples().iter().all(|z| (z - c).norm() < 1e-13));
        assert!(g.negative_leakage < 1e-15);
        assert!((g.eval(Complex64::new(0.3, -0.2)) - c).norm() < 1e-13);
    }

    #[test]
    fn one_minus_z_fixture() {
        let n = 4096;
        let f = GridFunction::from_boundary(n, |z| 1.0 - z).unwrap();
        let g = outer_from_modulus(&log_modulus(&f), OuterOptions::default()).unwrap();
        assert_eq!(g.clamp_count, 1);
        let want = [1.0, -1.0];
        for (m, t) in g.taylor.iter().take(16).enumerate() {
            let w = want.get(m).copied().unwrap_or(0.0);
            assert!((t - w).norm() < 1e-3, "mode {m}: {t}");
        }
    }

    #[test]
    fn modulus_exact_on_grid() {
        let k = GridFunction::from_theta(512, |t| Complex64::new((3.0 * t).cos() - 0.5 * t.abs(), 0.0)).unwrap();
        let g = outer_from_modulus(&k, OuterOptions::default()).unwrap();
        for (gz, kz) in g.boundary.samples().iter().zip(k.samples()) {
            assert!((gz.norm() - kz.re.exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn errors() {
        let big = GridFunction::constant(64, Complex64::new(800.0, 0.0)).unwrap();
        assert!(matches!(outer_from_modulus(&big, OuterOptions::default()), Err(Error::ScaleOverflow { .. })));
        let cplx = GridFunction::constant(64, Complex64::new(0.0, 1.0)).unwrap();
        assert!(outer_from_modulus(&cplx, OuterOptions::default()).is_err());
        let k = GridFunction::constant(64, Complex64::default()).unwrap();
        assert!(outer_from_modulus(&k, OuterOptions { oversample: 3, clamp: None }).is_err());
    }
}
