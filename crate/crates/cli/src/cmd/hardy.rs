use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use flatwitness::hardy::{
    blaschke_factor, hardy_factor, inner_check, log_modulus, outer_from_modulus, project_onto_bh2,
    radial_decay_check, GridFunction, HardyFactorization, HardyOptions, OuterOptions, ShellPolicy,
};
use flatwitness::{io, Complex64};
use serde::{Deserialize, Serialize};

use super::{write_columns, write_json};
use crate::report::RunReport;
use crate::Fixture;

/// `hardy factor` output consumed by `transfer`.
#[derive(Serialize, Deserialize)]
pub struct FactorArtifact {
    /// Taylor coefficients of the input `f`.
    pub f_taylor: Vec<Complex64>,
    pub factorization: HardyFactorization,
}

#[derive(Args, Debug, Clone)]
pub struct GridInput {
    /// Grid size N (power of two).
    #[arg(long, default_value_t = 1 << 14)]
    grid: usize,
    /// Fixture name or a grid file (binary, or `.json`).
    #[arg(long, value_name = "NAME|PATH", default_value = "constant1")]
    input: String,
}

impl GridInput {
    fn fixture(&self) -> Option<Fixture> {
        <Fixture as clap::ValueEnum>::from_str(&self.input, true).ok()
    }

    fn load(&self) -> anyhow::Result<GridFunction> {
        match self.fixture() {
            Some(fx) => Ok(fixture_grid(fx, self.grid)?),
            None => {
                let path = Path::new(&self.input);
                io::read_grid(path).with_context(|| format!("loading {}", path.display()))
            }
        }
    }
}

pub fn fixture_grid(fx: Fixture, n: usize) -> flatwitness::Result<GridFunction> {
    match fx {
        Fixture::Constant1 => GridFunction::constant(n, Complex64::new(1.0, 0.0)),
        Fixture::OneMinusZ => GridFunction::from_boundary(n, |z| 1.0 - z),
        Fixture::OnePlusHalfZ => GridFunction::from_boundary(n, |z| 1.0 + 0.5 * z),
    }
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[command(flatten)]
    input: GridInput,
    /// Number of arcs M.
    #[arg(long, default_value_t = 256)]
    shells: usize,
    /// Modulus floor ε; defaults to π/(e·N).
    #[arg(long)]
    clamp: Option<f64>,
    #[arg(long, default_value_t = 8)]
    oversample: usize,
    /// Fail when an arc holds no grid sample.
    #[arg(long)]
    strict_shells: bool,
    /// Radial depths J for |g(1 − 2^{−j})|.
    #[arg(long, default_value_t = 12)]
    radial_depths: usize,
    /// Required last/first ratio of the radial samples.
    #[arg(long, default_value_t = 0.1)]
    radial_ratio: f64,
    /// Depth from which the radial samples must strictly decrease.
    #[arg(long, default_value_t = 4)]
    radial_from: usize,
    /// Write the factorization for `transfer`.
    #[arg(long, value_name = "PATH")]
    artifact: Option<PathBuf>,
    /// Write columns n, a_n², r_n, w_n per arc.
    #[arg(long, value_name = "PATH")]
    series_out: Option<PathBuf>,
}

pub fn factor(a: &FactorArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("hardy factor");
    let f = a.input.load()?;
    let opts = HardyOptions {
        shells: a.shells,
        shell_policy: if a.strict_shells { ShellPolicy::Strict } else { ShellPolicy::AllowEmpty },
        outer: OuterOptions { oversample: a.oversample, clamp: a.clamp },
    };
    rep.param("grid", f.len())
        .param("input", &a.input.input)
        .param("shells", a.shells)
        .param("clamp", opts.outer.clamp_for(f.len()))
        .param("oversample", a.oversample)
        .param("strict_shells", a.strict_shells);
    let fact = hardy_factor(&f, opts)?;
    let d = fact.diagnostics;
    let radial = radial_decay_check(&fact.g.taylor, a.radial_depths, f.len());
    rep.at_most("max ||g| − 1/w| on grid", fact.modulus_defect, 1e-10)
        .at_most("max |f − g·h| on grid", fact.boundary_max_residual, 1e-10 * fact.scale)
        .at_most("‖h‖₂² − (‖f‖₂² + Σ a_n²/√r_{n−1} + core)", d.h_norm_sq - d.star_bound, 1e-8)
        .at_most("h negative-mode leakage", fact.h_negative_leakage, 1e-6)
        .at_most("sup |g|", fact.g.boundary.sup(), 1.0 + 1e-12)
        .at_most("∫ log w", fact.log_check.integral_value, fact.log_check.comparison_bound)
        .holds(&format!("radial |g| strictly decreasing from j = {}", a.radial_from), radial.strictly_decreasing_from(a.radial_from))
        .at_most("radial last/first", radial.ratio, a.radial_ratio)
        .detail("scale", fact.scale)
        .detail("h_norm_sq", d.h_norm_sq)
        .detail("star_bound", d.star_bound)
        .detail("empty_shells", fact.energies.layout.empty_shells.len())
        .detail("core_energy", fact.energies.core_energy)
        .detail("clamped_samples", fact.g.clamp_count)
        .detail("radial_values", &radial.values)
        .detail("radial_truncation_warning", radial.truncation_warning);

    if let Some(path) = &a.series_out {
        let p = &fact.energies.profile;
        let idx: Vec<f64> = (1..=p.len()).map(|k| k as f64).collect();
        let a_sq: Vec<f64> = (1..=p.len()).map(|k| p.a_sq(k)).collect();
        let r: Vec<f64> = (1..=p.len()).map(|k| p.r(k)).collect();
        write_columns(path, &[("n", &idx), ("a_sq", &a_sq), ("r", &r), ("w", &fact.weight.shell_values)])?;
        rep.param("series_out", path);
    }
    if let Some(path) = &a.artifact {
        let f_taylor = f.spectrum().nonnegative().to_vec();
        write_json(path, &FactorArtifact { f_taylor, factorization: fact })?;
        rep.param("artifact", path);
    }
    Ok(rep)
}

#[derive(Args, Debug)]
pub struct OuterArgs {
    #[command(flatten)]
    input: GridInput,
    /// Treat --input as log|F| directly instead of boundary values of F.
    #[arg(long)]
    log_modulus: bool,
    #[arg(long)]
    clamp: Option<f64>,
    #[arg(long, default_value_t = 8)]
    oversample: usize,
    /// Number of leading Taylor coefficients compared for fixtures.
    #[arg(long, default_value_t = 16)]
    modes: usize,
}

pub fn outer(a: &OuterArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("hardy outer");
    let input = a.input.load()?;
    let k = if a.log_modulus { input.clone() } else { log_modulus(&input) };
    let opts = OuterOptions { oversample: a.oversample, clamp: a.clamp };
    rep.param("grid", input.len())
        .param("input", &a.input.input)
        .param("log_modulus", a.log_modulus)
        .param("clamp", opts.clamp_for(input.len()))
        .param("oversample", a.oversample);
    let g = outer_from_modulus(&k, opts)?;
    let floor = g.clamp.ln();
    let modulus_err = g
        .boundary
        .samples()
        .iter()
        .zip(k.samples())
        .filter(|(_, kv)| kv.re >= floor)
        .map(|(gv, kv)| (gv.norm().ln() - kv.re).abs())
        .fold(0.0, f64::max);
    rep.at_most("max |log|g| − k| off the clamp", modulus_err, 1e-10)
        .at_most("negative-mode leakage", g.negative_leakage, 1e-8)
        .detail("clamped_samples", g.clamp_count)
        .detail("taylor_head", &g.taylor[..a.modes.min(g.taylor.len())]);
    if let (Some(fx), false) = (a.input.fixture(), a.log_modulus) {
        let want = fixture_grid(fx, input.len())?.spectrum();
        let m = a.modes.min(g.taylor.len());
        let err = (0..m).map(|j| (g.taylor[j] - want.coeff(j as i64)).norm()).fold(0.0, f64::max);
        let bound = if g.clamp_count > 0 { 1e-3 } else { 1e-10 };
        rep.at_most(&format!("Taylor error on the first {m} modes"), err, bound);
    }
    Ok(rep)
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    #[command(flatten)]
    input: GridInput,
    /// Zeros of the Blaschke product b (real, repeatable).
    #[arg(long = "blaschke", value_name = "A", default_values_t = [0.5])]
    zeros: Vec<f64>,
    /// Inner function b as a grid file instead of --blaschke.
    #[arg(long, value_name = "PATH", conflicts_with = "zeros")]
    inner: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

pub fn project(a: &ProjectArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("hardy project");
    let f = a.input.load()?;
    let n = f.len();
    let b = match &a.inner {
        Some(path) => {
            rep.param("inner", path);
            io::read_grid(path).with_context(|| format!("loading {}", path.display()))?
        }
        None => {
            if a.zeros.is_empty() {
                bail!("need at least one --blaschke zero");
            }
            rep.param("blaschke", &a.zeros);
            let mut b = GridFunction::constant(n, Complex64::new(1.0, 0.0))?;
            for &z in &a.zeros {
                b = b.zip_with(&blaschke_factor(n, Complex64::new(z, 0.0))?, |x, y| x * y)?;
            }
            b
        }
    };
    rep.param("grid", n).param("input", &a.input.input).param("tol", a.tol);
    let inner = inner_check(&b, a.tol);
    rep.at_most("max ||b| − 1| on grid", inner.boundary_dev, a.tol)
        .at_most("max |b| inside the disk", inner.interior_max, 1.0 + a.tol);
    if !inner.is_inner {
        return Ok(rep);
    }
    let p = project_onto_bh2(&f, &b, a.tol)?;
    let pp = project_onto_bh2(&p.projection, &b, a.tol)?;
    let other = GridFunction::from_boundary(n, |z| Complex64::new(0.2, -1.0) * z * z + 1.0 / (1.5 + z))?;
    let po = project_onto_bh2(&other, &b, a.tol)?;
    let adj = (p.projection.inner(&other) - f.inner(&po.projection)).norm();
    rep.at_most("idempotence ‖P(Pf) − Pf‖∞", pp.projection.max_abs_diff(&p.projection), a.tol)
        .at_most("self-adjointness |<Pf, u> − <f, Pu>|", adj, a.tol)
        .verdict("distance", p.distance);
    if a.input.fixture() == Some(Fixture::Constant1) && a.inner.is_none() {
        let closed = 1.0 - a.zeros.iter().map(|z| z * z).product::<f64>();
        rep.at_most("|dist(1, bH²)² − (1 − Π|a|²)|", (p.distance.powi(2) - closed).abs(), 1e-8);
    }
    Ok(rep)
}
