//! Dyadic-style arcs `{1/(n+1) ≤ |θ| < 1/n}` shrinking to `θ = 0`, their
//! energies, and the weight `w = min{r_{n−1}^{−1/4}, n}` that blows up at 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use crate::error::{Error, Result};
use crate::seq::{TailModel, TailProfile};

/// Suffix sums that vanish numerically are raised to this floor.
pub const R_FLOOR: f64 = 1e-280;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `|θ| ≥ 1`.
    Outer,
    /// `1/(n+1) ≤ |θ| < 1/n`.
    Shell(usize),
    /// `|θ| < 1/(M+1)`, including `θ = 0`.
    Core,
}

/// What to do with a shell that holds no grid sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellPolicy {
    /// Fail with [`Error::GridTooCoarse`].
    Strict,
    /// Keep the shell with zero energy; it is listed in `empty_shells`.
    #[default]
    AllowEmpty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcLayout {
    pub grid: usize,
    pub max_shell: usize,
    pub regions: Vec<Region>,
    /// Sample count of shell `n` at index `n − 1`.
    pub shell_counts: Vec<usize>,
    pub core_count: usize,
    pub outer_count: usize,
    /// Shells without samples (1-based).
    pub empty_shells: Vec<usize>,
}

fn classify(t: f64, max_shell: usize) -> Region {
    let t = t.abs();
    if t == 0.0 {
        return Region::Core;
    }
    let mut n = (1.0 / t).floor() as usize;
    if n >= 1 && t >= 1.0 / n as f64 {
        n -= 1;
    }
    match n {
        0 => Region::Outer,
        n if n > max_shell => Region::Core,
        n => Region::Shell(n),
    }
}

impl ArcLayout {
    /// Fails if any shell is empty; a safe grid has `N ≥ 2π·M(M+1)`.
    pub fn new(grid: usize, max_shell: usize) -> Result<Self> {
        Self::with_policy(grid, max_shell, ShellPolicy::Strict)
    }

    pub fn with_policy(grid: usize, max_shell: usize, policy: ShellPolicy) -> Result<Self> {
        super::grid::check_size(grid)?;
        if max_shell == 0 {
            return Err(Error::InvalidInput("need at least one shell".into()));
        }
        let regions: Vec<Region> = (0..grid)
            .map(|j| classify(super::grid::theta(j, grid), max_shell))
            .collect();
        let mut shell_counts = vec![0; max_shell];
        let (mut core_count, mut outer_count) = (0, 0);
        for r in &regions {
            match r {
                Region::Outer => outer_count += 1,
                Region::Shell(n) => shell_counts[n - 1] += 1,
                Region::Core => core_count += 1,
            }
        }
        let empty_shells: Vec<usize> = (1..=max_shell).filter(|n| shell_counts[n - 1] == 0).collect();
        if let (ShellPolicy::Strict, Some(&shell)) = (policy, empty_shells.first()) {
            return Err(Error::GridTooCoarse { shell });
        }
        Ok(Self { grid, max_shell, regions, shell_counts, core_count, outer_count, empty_shells })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcEnergies {
    pub layout: ArcLayout,
    /// `a_1², …, a_M²` with the core energy as lumped tail, so `r_M` is the
    /// core energy.
    pub profile: TailProfile,
    pub outer_energy: f64,
    pub core_energy: f64,
}

/// `a_n² = (1/2π)∫_{shell n}|f|²dθ`, approximated by `(1/N)Σ_{j∈shell n}|f_j|²`.
pub fn arc_energies(f: &GridFunction, max_shell: usize, policy: ShellPolicy) -> Result<ArcEnergies> {
    let layout = ArcLayout::with_policy(f.len(), max_shell, policy)?;
    let inv_n = 1.0 / f.len() as f64;
    let mut shells = vec![0.0; max_shell];
    let (mut core, mut outer) = (0.0, 0.0);
    for (z, region) in f.samples().iter().zip(&layout.regions) {
        let e = z.norm_sqr() * inv_n;
        match region {
            Region::Outer => outer += e,
            Region::Shell(n) => shells[n - 1] += e,
            Region::Core => core += e,
        }
    }
    let profile = TailProfile::from_magnitudes_sq(shells, TailModel::Mass { mass: core })?;
    Ok(ArcEnergies { layout, profile, outer_energy: outer, core_energy: core })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleWeight {
    pub w: GridFunction,
    /// `w` on shell `n` at index `n − 1`.
    pub shell_values: Vec<f64>,
    pub core_value: f64,
    /// Suffix sums raised to [`R_FLOOR`].
    pub floored: usize,
}

/// `w = 1` for `|θ| ≥ 1/2`, `min{r_{n−1}^{−1/4}, n}` on shell `n ≥ 2`, and
/// `min{r_M^{−1/4}, M+1}` on the core.
pub fn build_circle_weight(profile: &TailProfile, layout: &ArcLayout) -> Result<CircleWeight> {
    let m = layout.max_shell;
    if profile.len() != m {
        return Err(Error::InvalidInput(format!("profile has {} shells, layout {m}", profile.len())));
    }
    let mut floored = 0;
    let mut capped = |r: f64, cap: usize| {
        if r < R_FLOOR {
            floored += 1;
        }
        r.max(R_FLOOR).powf(-0.25).min(cap as f64)
    };
    let mut shell_values = vec![1.0; m];
    for n in 2..=m {
        shell_values[n - 1] = capped(profile.r(n - 1), n);
    }
    let core_value = capped(profile.r(m), m + 1);
    let samples = layout
        .regions
        .iter()
        .map(|r| {
            let v = match r {
                Region::Outer => 1.0,
                Region::Shell(n) => shell_values[n - 1],
                Region::Core => core_value,
            };
            Complex64::new(v, 0.0)
        })
        .collect();
    Ok(CircleWeight { w: GridFunction::new(samples)?, shell_values, core_value, floored })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogIntegrability {
    /// `(1/2π)∫|log(1/w)|dθ` on the grid.
    pub integral_value: f64,
    /// `2Σ_{n=2}^{M} log(n)/n² + 2log(M+1)/(M+1)`.
    pub comparison_bound: f64,
    pub within_bound: bool,
}

/// `2Σ_{n=2}^{M} log(n)/n²` plus the core allowance `2log(M+1)/(M+1)`.
pub fn log_comparison_bound(max_shell: usize) -> f64 {
    let series: f64 = (2..=max_shell).map(|n| (n as f64).ln() / (n * n) as f64).sum();
    let m1 = (max_shell + 1) as f64;
    2.0 * series + 2.0 * m1.ln() / m1
}

/// Integrability of `log(1/w)` for a real weight `w ≥ 1`.
pub fn check_log_integrable(w: &GridFunction, max_shell: usize) -> Result<LogIntegrability> {
    for (j, z) in w.samples().iter().enumerate() {
        if z.im != 0.0 || !(z.re >= 1.0) {
            return Err(Error::InvalidWeight { index: j, value: z.re });
        }
    }
    let integral_value = w.samples().iter().map(|z| z.re.ln()).sum::<f64>() / w.len() as f64;
    let comparison_bound = log_comparison_bound(max_shell);
    Ok(LogIntegrability { integral_value, comparison_bound, within_bound: integral_value <= comparison_bound })
}
