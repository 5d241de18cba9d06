use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use flatwitness::halfplane::{transfer_factorization, FactorH, Taylor};
use flatwitness::hardy::{hardy_factor, HardyOptions};
use flatwitness::suite::{random_halfplane_points, seeded_rng, DEFAULT_SEED};
use flatwitness::{disk_to_halfplane_h2, io, Complex64};

use super::hardy::{fixture_grid, FactorArtifact};
use super::read_json;
use crate::report::RunReport;
use crate::Fixture;

#[derive(Args, Debug)]
pub struct TransferArgs {
    /// Artifact written by `hardy factor --artifact`.
    #[arg(long, value_name = "PATH")]
    factorization: Option<PathBuf>,
    /// Half-plane points as a JSON list of `[re, im]`.
    #[arg(long, value_name = "PATH")]
    points: Option<PathBuf>,
    /// Random points when --points is absent.
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Without --factorization: factor f(z) = 1 + z/2 on this grid.
    #[arg(long, default_value_t = 1 << 12)]
    grid: usize,
    #[arg(long, default_value_t = 64)]
    shells: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

pub fn run(a: &TransferArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("transfer");
    let art = match &a.factorization {
        Some(path) => {
            rep.param("factorization", path);
            read_json::<FactorArtifact>(path)?
        }
        None => {
            rep.param("grid", a.grid).param("shells", a.shells).param("input", Fixture::OnePlusHalfZ);
            let f = fixture_grid(Fixture::OnePlusHalfZ, a.grid)?;
            let factorization = hardy_factor(&f, HardyOptions { shells: a.shells, ..HardyOptions::default() })?;
            FactorArtifact { f_taylor: f.spectrum().nonnegative().to_vec(), factorization }
        }
    };
    let points = match &a.points {
        Some(path) => {
            rep.param("points", path);
            io::read_points(path).with_context(|| format!("loading {}", path.display()))?
        }
        None => {
            rep.param("count", a.count).param("seed", a.seed);
            random_halfplane_points(&mut seeded_rng(a.seed), a.count)
        }
    };
    rep.param("tol", a.tol);
    let f = Taylor(art.f_taylor);
    let t = transfer_factorization(&f, &art.factorization.g, &FactorH(&art.factorization), &points)?;
    let big_f = disk_to_halfplane_h2(|z: Complex64| (1.0 - z) / 2.0);
    let fixture = points
        .iter()
        .map(|&s| big_f.at(s).map(|v| (v - 1.0 / ((1.0 + s) * (1.0 + s))).norm()))
        .collect::<flatwitness::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    rep.at_most("max |F − G·H|", t.max_defect, a.tol)
        .holds("half-plane defect ≤ disk defect · sup|1/(1+s)|", t.conformal_bookkeeping_ok())
        .at_most("(1 − z)/2 ↦ 1/(1 + s)²", fixture, 1e-12)
        .detail("disk_defect", t.disk_defect)
        .detail("g_sup", t.g_sup_halfplane)
        .detail("points", points.len());
    Ok(rep)
}
