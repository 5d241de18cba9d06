use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::arcs::{arc_energies, build_circle_weight, check_log_integrable, ArcEnergies, CircleWeight, LogIntegrability, ShellPolicy};
use super::grid::{eval_taylor, forward, inverse, GridFunction};
use super::outer::{outer_from_modulus, OuterFunction, OuterOptions};
use crate::error::{Error, Result};
use crate::layered::FactorDiagnostics;
use crate::seq::olympiad_weighted_sum;

/// Admissible relative energy in negative modes of the input.
pub const ANALYTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyOptions {
    pub shells: usize,
    pub shell_policy: ShellPolicy,
    pub outer: OuterOptions,
}

impl Default for HardyOptions {
    fn default() -> Self {
        Self { shells: 256, shell_policy: ShellPolicy::default(), outer: OuterOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyFactorization {
    /// `f` was divided by this before factoring so that `‖f‖₂ ≤ 1`; `h`
    /// carries the factor back, so `f = g·h` holds for the original input.
    pub scale: f64,
    pub energies: ArcEnergies,
    pub weight: CircleWeight,
    pub log_check: LogIntegrability,
    pub g: OuterFunction,
    /// `h = f/g` on the base grid.
    pub h: GridFunction,
    /// `ĥ_0, …, ĥ_{N/2−1}` from the oversampled quotient.
    pub h_taylor: Vec<Complex64>,
    /// Relative energy of negative modes of `h` on the fine grid.
    pub h_negative_leakage: f64,
    /// `max_j ||g_j| − 1/w_j|`.
    pub modulus_defect: f64,
    /// `max_j |f_j − g_j·h_j|` for the original input.
    pub boundary_max_residual: f64,
    /// Norms and the `‖wf‖₂²` majorant, for the rescaled input.
    pub diagnostics: FactorDiagnostics,
}

impl HardyFactorization {
    /// `h(z)` from its Taylor coefficients, `|z| < 1`.
    pub fn eval_h(&self, z: Complex64) -> Complex64 {
        eval_taylor(&self.h_taylor, z)
    }
}

/// Factors a nonzero analytic `f` as `g·h` with `g` outer, `|g| = 1/w ≤ 1`,
/// `g(z) → 0` as `z → 1`, and `h = f/g ∈ H²`.
pub fn hardy_factor(f: &GridFunction, opts: HardyOptions) -> Result<HardyFactorization> {
    let n = f.len();
    let norm = f.norm();
    if norm == 0.0 {
        return Err(Error::InvalidInput("cannot factor the zero function".into()));
    }
    let spectrum = f.spectrum();
    if spectrum.negative_leakage() > ANALYTIC_TOL {
        return Err(Error::InvalidInput(format!(
            "input is not analytic: negative-mode leakage {:e}",
            spectrum.negative_leakage()
        )));
    }
    let scale = norm.max(1.0);
    let fs = f.map(|z| z / scale);

    let energies = arc_energies(&fs, opts.shells, opts.shell_policy)?;
    let weight = build_circle_weight(&energies.profile, &energies.layout)?;
    let log_check = check_log_integrable(&weight.w, opts.shells)?;
    let k = weight.w.map(|w| Complex64::new(-w.re.ln(), 0.0));
    let g = outer_from_modulus(&k, opts.outer)?;

    let hs = fs.zip_with(&g.boundary, |a, b| a / b)?;
    let modulus_defect = g
        .boundary
        .samples()
        .iter()
        .zip(weight.w.samples())
        .map(|(gz, w)| (gz.norm() - 1.0 / w.re).abs())
        .fold(0.0, f64::max);
    let residual = (0..n)
        .map(|j| (fs.samples()[j] - g.boundary.samples()[j] * hs.samples()[j]).norm_sqr())
        .sum::<f64>()
        / n as f64;

    // quotient on the fine grid, with f interpolated from its coefficients
    let fine_n = n * opts.outer.oversample;
    let mut f_natural = vec![Complex64::default(); fine_n];
    f_natural[..n / 2].copy_from_slice(spectrum.nonnegative());
    let f_fine = inverse(&f_natural);
    let h_fine: Vec<Complex64> = f_fine.iter().zip(g.fine_samples()).map(|(a, b)| a / (b * scale)).collect();
    let h_spec = forward(&h_fine);
    let total: f64 = h_spec.iter().map(|z| z.norm_sqr()).sum();
    let neg: f64 = h_spec[fine_n / 2..].iter().map(|z| z.norm_sqr()).sum();
    let h_negative_leakage = (neg / total).sqrt();
    let h_taylor: Vec<Complex64> = h_spec[..n / 2].iter().map(|z| z * scale).collect();

    let profile = &energies.profile;
    let m = opts.shells;
    let series = if m >= 2 { olympiad_weighted_sum(profile, 1, m)? } else { 0.0 };
    let core_term = energies.core_energy / profile.r(m).max(super::arcs::R_FLOOR).sqrt();
    let diagnostics = FactorDiagnostics {
        residual: residual.sqrt(),
        f_norm_sq: fs.norm_sq(),
        h_norm_sq: hs.norm_sq(),
        star_bound: fs.norm_sq() + series + core_term,
        olympiad_certificate: 2.0 * (profile.r(1).sqrt() - profile.r(m).sqrt()),
    };
    let h = hs.map(|z| z * scale);
    let boundary_max_residual = (0..n)
        .map(|j| (f.samples()[j] - g.boundary.samples()[j] * h.samples()[j]).norm())
        .fold(0.0, f64::max);
    Ok(HardyFactorization {
        scale,
        h,
        boundary_max_residual,
        energies,
        weight,
        log_check,
        g,
        h_taylor,
        h_negative_leakage,
        modulus_defect,
        diagnostics,
    })
}
