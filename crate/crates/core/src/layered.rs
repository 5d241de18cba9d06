//! Weight construction on layered spaces `U_1 ⊂ U_2 ⊂ ⋯`: for `f ∈ L²` build
//! a shellwise-constant `w → ∞` with `f·w ∈ L²`, so that `f = g·h` with
//! `g = 1/w` in the maximal ideal and `h = f·w`.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampled::SampledFunction;
use crate::seq::{olympiad_weighted_sum, TailModel, TailProfile};

/// Suffix sums below this are clamped before taking the fourth root.
pub const R_CLAMP: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub id: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub n: usize,
    pub atoms: Vec<Atom>,
}

impl Shell {
    pub fn measure(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredSpace {
    pub shells: Vec<Shell>,
}

impl LayeredSpace {
    pub fn new(shells: Vec<Shell>) -> Result<Self> {
        let space = Self { shells };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shells.is_empty() {
            return Err(Error::InvalidInput("layered space has no shells".into()));
        }
        let mut seen = HashSet::new();
        for (i, shell) in self.shells.iter().enumerate() {
            if shell.n != i + 1 {
                return Err(Error::InvalidInput(format!(
                    "shell indices must run 1, 2, …; found {} at position {}",
                    shell.n,
                    i + 1
                )));
            }
            for atom in &shell.atoms {
                if !(atom.weight.is_finite() && atom.weight > 0.0) {
                    return Err(Error::InvalidInput(format!("atom {} has non-positive weight", atom.id)));
                }
                if !seen.insert(atom.id) {
                    return Err(Error::InvalidInput(format!("atom {} appears twice", atom.id)));
                }
            }
            if !(shell.measure() > 0.0) {
                return Err(Error::InvalidInput(format!("shell {} has zero measure", shell.n)));
            }
        }
        let max_id = seen.iter().copied().max().unwrap_or(0);
        if max_id + 1 != seen.len() {
            return Err(Error::InvalidInput("atom ids must be exactly 0..P".into()));
        }
        Ok(())
    }

    pub fn num_shells(&self) -> usize {
        self.shells.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.shells.iter().map(|s| s.atoms.len()).sum()
    }

    /// Atom weights indexed by id.
    pub fn atom_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.num_atoms()];
        for atom in self.shells.iter().flat_map(|s| &s.atoms) {
            w[atom.id] = atom.weight;
        }
        w
    }

    /// Shell index of every atom, indexed by id.
    pub fn shell_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_atoms()];
        for shell in &self.shells {
            for atom in &shell.atoms {
                out[atom.id] = shell.n;
            }
        }
        out
    }

    fn check_function(&self, f: &SampledFunction) -> Result<()> {
        if f.len() != self.num_atoms() {
            return Err(Error::InvalidInput(format!(
                "function has {} atoms, layout has {}",
                f.len(),
                self.num_atoms()
            )));
        }
        for atom in self.shells.iter().flat_map(|s| &s.atoms) {
            if f.weights[atom.id] != atom.weight {
                return Err(Error::InvalidInput(format!("weight mismatch at atom {}", atom.id)));
            }
        }
        Ok(())
    }
}

/// A layout together with the coordinate of each atom, for evaluating
/// functions given by formula.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub space: LayeredSpace,
    pub coords: Vec<f64>,
}

impl Preset {
    /// Samples `f` at the atom coordinates.
    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> SampledFunction {
        SampledFunction {
            values: self.coords.iter().map(|&x| f(x)).collect(),
            weights: self.space.atom_weights(),
        }
    }
}

fn build_preset(shells: usize, mut atoms_of: impl FnMut(usize) -> Vec<(f64, f64)>) -> Result<Preset> {
    if shells == 0 {
        return Err(Error::InvalidInput("need at least one shell".into()));
    }
    let mut coords = Vec::new();
    let mut out = Vec::with_capacity(shells);
    for n in 1..=shells {
        let atoms = atoms_of(n)
            .into_iter()
            .map(|(x, weight)| {
                coords.push(x);
                Atom { id: coords.len() - 1, weight }
            })
            .collect();
        out.push(Shell { n, atoms });
    }
    Ok(Preset { space: LayeredSpace::new(out)?, coords })
}

/// `ℕ` with counting measure, `U_n = {1, …, n}`; the coordinate is `n`.
pub fn preset_counting(shells: usize) -> Result<Preset> {
    build_preset(shells, |n| vec![(n as f64, 1.0)])
}

fn midpoints(lo: f64, hi: f64, count: usize, scale: f64) -> impl Iterator<Item = (f64, f64)> {
    let h = (hi - lo) / count as f64;
    (0..count).map(move |i| (lo + (i as f64 + 0.5) * h, h * scale))
}

fn check_atoms(atoms_per_shell: usize) -> Result<usize> {
    if atoms_per_shell < 2 || !atoms_per_shell.is_multiple_of(2) {
        return Err(Error::InvalidInput("atoms per shell must be even and at least 2".into()));
    }
    Ok(atoms_per_shell / 2)
}

/// `ℝ` with Lebesgue measure, `U_n = (−n, n)`; each shell
/// `(−n, −n+1] ∪ [n−1, n)` gets midpoint atoms split evenly between sides.
pub fn preset_lebesgue_r(shells: usize, atoms_per_shell: usize) -> Result<Preset> {
    let half = check_atoms(atoms_per_shell)?;
    build_preset(shells, |n| {
        let n = n as f64;
        midpoints(-n, -n + 1.0, half, 1.0).chain(midpoints(n - 1.0, n, half, 1.0)).collect()
    })
}

/// The circle with normalized arc length, `U_n = {1/n < |θ| ≤ π} ∪ {1}`;
/// the coordinate is `θ`.
pub fn preset_circle(shells: usize, atoms_per_shell: usize) -> Result<Preset> {
    let half = check_atoms(atoms_per_shell)?;
    let norm = 1.0 / (2.0 * std::f64::consts::PI);
    build_preset(shells, |n| {
        let (lo, hi) = if n == 1 {
            (1.0, std::f64::consts::PI)
        } else {
            (1.0 / n as f64, 1.0 / (n - 1) as f64)
        };
        midpoints(-hi, -lo, half, norm).chain(midpoints(lo, hi, half, norm)).collect()
    })
}

/// `a_k² = ∫_{U_k∖U_{k−1}} |f|² dµ` with suffix sums; `tail` models `f`
/// beyond the last stored shell.
pub fn shell_energies(f: &SampledFunction, layout: &LayeredSpace, tail: TailModel) -> Result<TailProfile> {
    layout.check_function(f)?;
    let energies = layout
        .shells
        .iter()
        .map(|s| s.atoms.iter().map(|a| a.weight * f.values[a.id].norm_sqr()).sum())
        .collect();
    TailProfile::from_magnitudes_sq(energies, tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Compact when `f` vanishes on the last stored shell (and no tail mass
    /// remains), general otherwise.
    Auto,
    /// `w = 1` on shell 1 and `n` on shell `n ≥ 2`.
    Compact,
    /// `w = 1` on shell 1 and `r_{n−1}^{−1/4}` on shell `n ≥ 2`.
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellWeights {
    /// `ω_n` for `n = 1..=N`.
    pub values: Vec<f64>,
    pub branch: WeightMode,
    /// Number of suffix sums clamped up to [`R_CLAMP`].
    pub clamped: usize,
}

/// Fourth-root weight from a profile; shell 1 gets 1.
pub fn weights_from_profile(profile: &TailProfile, mode: WeightMode) -> Result<ShellWeights> {
    let n = profile.len();
    let branch = match mode {
        WeightMode::Auto if n >= 2 && profile.r(n - 1) == 0.0 => WeightMode::Compact,
        WeightMode::Auto if n == 1 => WeightMode::Compact,
        WeightMode::Auto => WeightMode::General,
        other => other,
    };
    let mut clamped = 0;
    let mut values = Vec::with_capacity(n);
    values.push(1.0);
    for k in 2..=n {
        let w = match branch {
            WeightMode::General => {
                let r = profile.r(k - 1);
                if r <= 0.0 {
                    return Err(Error::DegenerateTail { index: k - 1 });
                }
                if r < R_CLAMP {
                    clamped += 1;
                }
                r.max(R_CLAMP).powf(-0.25)
            }
            _ => k as f64,
        };
        values.push(w);
    }
    Ok(ShellWeights { values, branch, clamped })
}

pub fn build_weight(
    f: &SampledFunction,
    layout: &LayeredSpace,
    tail: TailModel,
    mode: WeightMode,
) -> Result<ShellWeights> {
    weights_from_profile(&shell_energies(f, layout, tail)?, mode)
}

/// Residuals and norms shared by every factorization `f = g·h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorDiagnostics {
    /// `‖f − g·h‖₂`.
    pub residual: f64,
    pub f_norm_sq: f64,
    pub h_norm_sq: f64,
    /// `‖f‖₂² + Σ_{n≥2} a_n²/√r_{n−1}`, or `‖h‖₂²` itself on the compact branch.
    pub star_bound: f64,
    /// `2(√r_1 − √r_N)`, the telescoping majorant of the weighted series.
    pub olympiad_certificate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub g: SampledFunction,
    pub h: SampledFunction,
    pub weights: ShellWeights,
    pub profile: TailProfile,
    pub diagnostics: FactorDiagnostics,
}

impl FactorizationResult {
    /// Shell values of `g`, i.e. `1/ω_n`.
    pub fn g_shell_values(&self) -> Vec<f64> {
        self.weights.values.iter().map(|w| 1.0 / w).collect()
    }
}

/// `f = g·h` with `g = 1/w` shellwise and `h = f·w`.
pub fn factor(f: &SampledFunction, layout: &LayeredSpace) -> Result<FactorizationResult> {
    factor_with(f, layout, TailModel::Zero, WeightMode::Auto)
}

pub fn factor_with(
    f: &SampledFunction,
    layout: &LayeredSpace,
    tail: TailModel,
    mode: WeightMode,
) -> Result<FactorizationResult> {
    let profile = shell_energies(f, layout, tail)?;
    let weights = weights_from_profile(&profile, mode)?;
    let shell_of = layout.shell_of();
    let w_at = |i: usize| weights.values[shell_of[i] - 1];
    let g: Vec<Complex64> = (0..f.len()).map(|i| Complex64::new(1.0 / w_at(i), 0.0)).collect();
    let h: Vec<Complex64> = (0..f.len()).map(|i| f.values[i] * w_at(i)).collect();
    let g = f.with_values(g);
    let h = f.with_values(h);

    let residual = (0..f.len())
        .map(|i| f.weights[i] * (f.values[i] - g.values[i] * h.values[i]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let f_norm_sq = f.norm_sq();
    let h_norm_sq = h.norm_sq();
    let n = profile.len();
    let (star_bound, olympiad_certificate) = match weights.branch {
        WeightMode::General if n >= 2 => (
            f_norm_sq + olympiad_weighted_sum(&profile, 1, n)?,
            2.0 * (profile.r(1).sqrt() - profile.r(n).sqrt()),
        ),
        WeightMode::General => (f_norm_sq, 0.0),
        _ => (h_norm_sq, 0.0),
    };
    Ok(FactorizationResult {
        g,
        h,
        weights,
        profile,
        diagnostics: FactorDiagnostics { residual, f_norm_sq, h_norm_sq, star_bound, olympiad_certificate },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarReport {
    /// `Σ_n ω_n² a_n²`, recomputed shell by shell.
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub holds: bool,
    /// The weighted series is at most `2(√r_1 − √r_N)`.
    pub series_certified: bool,
}

/// Re-derives `∫|f|²w²` from the shell energies and checks it against the
/// majorant `‖f‖₂² + Σ a_n²/√r_{n−1}`.
pub fn verify_star_bound(result: &FactorizationResult, profile: &TailProfile) -> Result<StarReport> {
    let lhs: f64 = (1..=profile.len())
        .map(|k| result.weights.values[k - 1].powi(2) * profile.a_sq(k))
        .sum();
    let d = result.diagnostics;
    let tol = 1e-10 * (1.0 + d.f_norm_sq);
    let n = profile.len();
    let series_certified = match result.weights.branch {
        WeightMode::General if n >= 2 => {
            let s = olympiad_weighted_sum(profile, 1, n)?;
            s <= d.olympiad_certificate + profile.default_tol()
        }
        _ => true,
    };
    Ok(StarReport { lhs, rhs: d.star_bound, tol, holds: lhs <= d.star_bound + tol && series_certified, series_certified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_l2(shells: usize) -> (Preset, SampledFunction) {
        let p = preset_counting(shells).unwrap();
        let f = p.sample(|n| Complex64::new(2f64.powf(-n / 2.0), 0.0));
        (p, f)
    }

    #[test]
    fn geometric_shell_energies() {
        let (p, f) = geometric_l2(20);
        let prof = shell_energies(&f, &p.space, TailModel::Zero).unwrap();
        for k in 1..=20 {
            let want = 2f64.powi(-(k as i32));
            assert!((prof.a_sq(k) - want).abs() <= 4.0 * f64::EPSILON * want);
        }
        for n in 0..20 {
            let want = 2f64.powi(-(n as i32)) - 2f64.powi(-20);
            assert!((prof.r(n) - want).abs() < 1e-15 * want.max(1e-300));
        }
    }

    #[test]
    fn energies_add_over_atoms() {
        let one = preset_counting(3).unwrap();
        let shells = (1..=3)
            .map(|n| Shell {
                n,
                atoms: vec![Atom { id: 2 * (n - 1), weight: 1.0 }, Atom { id: 2 * (n - 1) + 1, weight: 1.0 }],
            })
            .collect();
        let two = LayeredSpace::new(shells).unwrap();
        let vals = [0.5, 0.25, 0.125].map(|v| Complex64::new(v, 0.0));
        let f1 = one.sample(|x| vals[x as usize - 1]);
        let f2 = SampledFunction::new(vals.iter().flat_map(|v| [*v, *v]).collect(), vec![1.0; 6]).unwrap();
        let p1 = shell_energies(&f1, &one.space, TailModel::Zero).unwrap();
        let p2 = shell_energies(&f2, &two, TailModel::Zero).unwrap();
        for k in 1..=3 {
            assert_eq!(p2.a_sq(k), 2.0 * p1.a_sq(k));
        }
    }

    #[test]
    fn support_on_first_shell() {
        let p = preset_counting(5).unwrap();
        let f = p.sample(|n| Complex64::new(if n == 1.0 { 3.0 } else { 0.0 }, 0.0));
        let prof = shell_energies(&f, &p.space, TailModel::Zero).unwrap();
        assert_eq!(prof.a_sq(1), 9.0);
        assert!((2..=5).all(|k| prof.a_sq(k) == 0.0));

        let res = factor(&f, &p.space).unwrap();
        assert_eq!(res.weights.branch, WeightMode::Compact);
        assert_eq!(res.weights.values, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(res.g_shell_values(), vec![1.0, 0.5, 1.0 / 3.0, 0.25, 0.2]);
        assert_eq!(res.h.values[0], Complex64::new(3.0, 0.0));
        assert!(res.h.values[1..].iter().all(|z| *z == Complex64::default()));
        assert_eq!(res.diagnostics.h_norm_sq, res.diagnostics.f_norm_sq);
    }

    #[test]
    fn geometric_general_branch() {
        let (p, f) = geometric_l2(40);
        let res = factor_with(&f, &p.space, TailModel::Geometric { ratio: 0.5 }, WeightMode::Auto).unwrap();
        assert_eq!(res.weights.branch, WeightMode::General);
        for (k, g) in res.g_shell_values().iter().enumerate() {
            assert!((g - 2f64.powf(-(k as f64) / 4.0)).abs() < 1e-13);
        }
        let closed: f64 = (1..=40).map(|k| 2f64.powf(-(k as f64 + 1.0) / 2.0)).sum();
        assert!((res.diagnostics.h_norm_sq - closed).abs() < 1e-12);
        assert!(res.diagnostics.residual <= 1e-12 * (1.0 + res.diagnostics.f_norm_sq.sqrt()));
        let rep = verify_star_bound(&res, &res.profile).unwrap();
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn zero_function_policies() {
        let p = preset_counting(4).unwrap();
        let f = p.sample(|_| Complex64::default());
        assert!(matches!(
            factor_with(&f, &p.space, TailModel::Zero, WeightMode::General),
            Err(Error::DegenerateTail { .. })
        ));
        let res = factor_with(&f, &p.space, TailModel::Zero, WeightMode::Compact).unwrap();
        assert!(res.h.values.iter().all(|z| *z == Complex64::default()));
    }

    #[test]
    fn single_shell() {
        let p = preset_counting(1).unwrap();
        let f = p.sample(|_| Complex64::new(2.0, 0.0));
        let w = build_weight(&f, &p.space, TailModel::Zero, WeightMode::Auto).unwrap();
        assert_eq!(w.values, vec![1.0]);
    }

    #[test]
    fn layout_validation() {
        let bad = LayeredSpace::new(vec![Shell { n: 2, atoms: vec![Atom { id: 0, weight: 1.0 }] }]);
        assert!(bad.is_err());
        let dup = LayeredSpace::new(vec![
            Shell { n: 1, atoms: vec![Atom { id: 0, weight: 1.0 }] },
            Shell { n: 2, atoms: vec![Atom { id: 0, weight: 1.0 }] },
        ]);
        assert!(dup.is_err());
        let empty = LayeredSpace::new(vec![Shell { n: 1, atoms: vec![] }]);
        assert!(empty.is_err());
    }

    #[test]
    fn continuous_presets_have_expected_measure() {
        let r = preset_lebesgue_r(5, 64).unwrap();
        for s in &r.space.shells {
            assert!((s.measure() - 2.0).abs() < 1e-12);
        }
        let c = preset_circle(6, 16).unwrap();
        let total: f64 = c.space.shells.iter().map(Shell::measure).sum();
        // U_6 = {1/6 < |θ| ≤ π}
        let want = (std::f64::consts::PI - 1.0 / 6.0) / std::f64::consts::PI;
        assert!((total - want).abs() < 1e-12);
        assert!(preset_circle(3, 3).is_err());
    }

    #[test]
    fn tiny_suffix_sums_are_clamped() {
        let p = preset_counting(3).unwrap();
        let f = p.sample(|n| Complex64::new(if n < 3.0 { 1.0 } else { 1e-160 }, 0.0));
        let w = build_weight(&f, &p.space, TailModel::Zero, WeightMode::General).unwrap();
        assert_eq!(w.clamped, 1);
        assert!(w.values[2].is_finite());
    }
}
