use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use flatwitness::bezout::principal_strictness;
use flatwitness::suite::{random_sampled, seeded_rng, DEFAULT_SEED};
use flatwitness::{io, principal_generator, verify_generator};

use super::write_json;
use crate::report::RunReport;

#[derive(Args, Debug)]
pub struct BezoutArgs {
    /// Sampled function `{values, weights}`.
    #[arg(long, value_name = "PATH", requires = "g")]
    f: Option<PathBuf>,
    #[arg(long, value_name = "PATH", requires = "f")]
    g: Option<PathBuf>,
    /// Generate random f, g on this many atoms instead.
    #[arg(long, conflicts_with = "f")]
    atoms: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Allowed ulp distance in the identities.
    #[arg(long, default_value_t = 2.0)]
    max_ulps: f64,
    /// Write `{d, F, G, cf, cg}` here.
    #[arg(long, value_name = "PATH")]
    generator_out: Option<PathBuf>,
}

pub fn run(a: &BezoutArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("bezout");
    let (f, g) = match (&a.f, &a.g, a.atoms) {
        (Some(fp), Some(gp), _) => {
            rep.param("f", fp).param("g", gp);
            let f = io::read_sampled(fp).with_context(|| format!("loading {}", fp.display()))?;
            let g = io::read_sampled(gp).with_context(|| format!("loading {}", gp.display()))?;
            (f, g)
        }
        (_, _, Some(n)) => {
            rep.param("atoms", n).param("seed", a.seed);
            let mut rng = seeded_rng(a.seed);
            let f = random_sampled(&mut rng, n, 0.1);
            let g = f.with_values(random_sampled(&mut rng, n, 0.1).values);
            (f, g)
        }
        _ => bail!("give --f PATH --g PATH or --atoms N"),
    };
    rep.param("max_ulps", a.max_ulps);
    let gen = principal_generator(&f, &g)?;
    let v = verify_generator(&f, &g, &gen);
    let eps = a.max_ulps * f64::EPSILON;
    rep.at_most("f = F·d (ulps)", v.f_reconstruction_ulps, a.max_ulps)
        .at_most("g = G·d (ulps)", v.g_reconstruction_ulps, a.max_ulps)
        .at_most("d = f·cf + g·cg (ulps)", v.generator_ulps, a.max_ulps)
        .at_most("max |F|", v.max_abs_big_f, 1.0 + eps)
        .at_most("max |G|", v.max_abs_big_g, 1.0 + eps)
        .at_most("max ||cf| − 1|, ||cg| − 1|", v.cofactor_unimodular_dev, eps);
    let s = principal_strictness(&g);
    rep.verdict("principal ideal <g> is proper", s.proper)
        .detail("g_zero_set_measure", s.zero_set_measure)
        .detail("g_inverse_sup", s.inverse_sup);
    if let Some(path) = &a.generator_out {
        write_json(path, &gen)?;
        rep.param("generator_out", path);
    }
    Ok(rep)
}
