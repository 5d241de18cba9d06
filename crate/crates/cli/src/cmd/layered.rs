use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use flatwitness::layered::{
    factor_with, preset_circle, preset_counting, preset_lebesgue_r, verify_star_bound, Preset, WeightMode,
};
use flatwitness::{io, Complex64, TailModel};

use super::write_columns;
use crate::report::RunReport;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    /// ℕ with counting measure, f(n) = 1/n (or q^{n/2} with --geometric).
    L2,
    /// ℝ with Lebesgue measure, f(x) = 1/(1 + x²).
    LebesgueR,
    /// The circle, f(θ) = |θ|^{−1/4}.
    Circle,
}

#[derive(Args, Debug)]
pub struct LayeredArgs {
    #[arg(long, value_enum, conflicts_with = "space")]
    preset: Option<PresetName>,
    /// Layout file `{shells: [{n, atoms: [{id, weight}]}]}`.
    #[arg(long, value_name = "PATH", requires = "function")]
    space: Option<PathBuf>,
    /// Function values on the atoms, JSON sequence indexed by atom id.
    #[arg(long, value_name = "PATH", requires = "space")]
    function: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    shells: usize,
    #[arg(long, default_value_t = 8)]
    atoms_per_shell: usize,
    /// With the l2 preset: f(n) = q^{n/2}, continued geometrically past the last shell.
    #[arg(long, value_name = "Q")]
    geometric: Option<f64>,
    /// Force the compact-support weight w_n = n.
    #[arg(long, conflicts_with = "general")]
    compact: bool,
    /// Force the tail weight w_n = r_{n−1}^{−1/4}.
    #[arg(long)]
    general: bool,
    /// Residual tolerance, scaled by 1 + ‖f‖.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Write columns n, a_n², r_n, w_n, g_n.
    #[arg(long, value_name = "PATH")]
    series_out: Option<PathBuf>,
}

type Formula = Box<dyn Fn(f64) -> Complex64>;

fn preset(a: &LayeredArgs, name: PresetName) -> anyhow::Result<(Preset, Formula)> {
    Ok(match name {
        PresetName::L2 => {
            let f: Formula = match a.geometric {
                Some(q) => Box::new(move |n| Complex64::new(q.powf(n / 2.0), 0.0)),
                None => Box::new(|n| Complex64::new(1.0 / n, 0.0)),
            };
            (preset_counting(a.shells)?, f)
        }
        PresetName::LebesgueR => (
            preset_lebesgue_r(a.shells, a.atoms_per_shell)?,
            Box::new(|x| Complex64::new(1.0 / (1.0 + x * x), 0.0)),
        ),
        PresetName::Circle => (
            preset_circle(a.shells, a.atoms_per_shell)?,
            Box::new(|t| Complex64::new(t.abs().powf(-0.25), 0.0)),
        ),
    })
}

pub fn run(a: &LayeredArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("layered");
    if let Some(q) = a.geometric {
        if !(q > 0.0 && q < 1.0) {
            bail!("--geometric needs 0 < q < 1");
        }
        if a.preset != Some(PresetName::L2) {
            bail!("--geometric applies to --preset l2 only");
        }
    }
    let (space, f) = match (a.preset, &a.space, &a.function) {
        (Some(name), _, _) => {
            rep.param("preset", name).param("shells", a.shells);
            if name != PresetName::L2 {
                rep.param("atoms_per_shell", a.atoms_per_shell);
            }
            let (p, func) = preset(a, name)?;
            let f = p.sample(func);
            (p.space, f)
        }
        (None, Some(sp), Some(fp)) => {
            rep.param("space", sp).param("function", fp);
            let space = io::read_layered(sp).with_context(|| format!("loading {}", sp.display()))?;
            let values = io::read_sequence(fp).with_context(|| format!("loading {}", fp.display()))?;
            let f = flatwitness::SampledFunction::new(values, space.atom_weights())?;
            (space, f)
        }
        _ => bail!("give --preset NAME or --space PATH --function PATH"),
    };
    let tail = a.geometric.map_or(TailModel::Zero, |ratio| TailModel::Geometric { ratio });
    let mode = match (a.compact, a.general) {
        (true, _) => WeightMode::Compact,
        (_, true) => WeightMode::General,
        _ => WeightMode::Auto,
    };
    rep.param("geometric", a.geometric).param("mode", mode).param("tol", a.tol);

    let res = factor_with(&f, &space, tail, mode)?;
    let d = res.diagnostics;
    let star = verify_star_bound(&res, &res.profile)?;
    rep.at_most("‖f − g·h‖₂", d.residual, a.tol * (1.0 + d.f_norm_sq.sqrt()))
        .at_most("‖h‖₂² − majorant", star.lhs - star.rhs, star.tol)
        .holds("weighted series within 2(√r_1 − √r_N)", star.series_certified)
        .at_most("sup |g|", res.g.ess_sup(), 1.0)
        .verdict("branch", res.weights.branch)
        .detail("f_norm_sq", d.f_norm_sq)
        .detail("h_norm_sq", d.h_norm_sq)
        .detail("star_bound", d.star_bound)
        .detail("clamped_shells", res.weights.clamped);

    if let Some(q) = a.geometric {
        let g = res.g_shell_values();
        let g_err = g
            .iter()
            .enumerate()
            .map(|(i, v)| (v - (q.powi(i as i32 + 1) / (1.0 - q)).powf(0.25)).abs())
            .fold(0.0, f64::max);
        let closed = (1.0 - q).sqrt() * (1..=res.profile.len()).map(|k| q.powf(k as f64 / 2.0)).sum::<f64>();
        rep.at_most("max |g_k − (q^k/(1 − q))^{1/4}|", g_err, 1e-12)
            .at_most("| ‖h‖₂² − closed form |", (d.h_norm_sq - closed).abs(), 1e-10);
    }
    if mode == WeightMode::Compact {
        let exact = res.weights.values.iter().enumerate().all(|(i, w)| *w == (i + 1) as f64);
        rep.holds("compact weights are 1, 2, 3, …", exact);
    }

    if let Some(path) = &a.series_out {
        let n = res.profile.len();
        let idx: Vec<f64> = (1..=n).map(|k| k as f64).collect();
        let a_sq: Vec<f64> = (1..=n).map(|k| res.profile.a_sq(k)).collect();
        let r: Vec<f64> = (1..=n).map(|k| res.profile.r(k)).collect();
        let g = res.g_shell_values();
        write_columns(path, &[("n", &idx), ("a_sq", &a_sq), ("r", &r), ("w", &res.weights.values), ("g", &g)])?;
        rep.param("series_out", path);
    }
    Ok(rep)
}
