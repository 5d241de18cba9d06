use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use flatwitness::suite::{random_relation, seeded_rng, DEFAULT_SEED};
use flatwitness::{io, synthesize_witness, verify_witness, SynthesisOptions};

use super::write_json;
use crate::report::RunReport;

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// Relation file `{weights, r, m}`.
    #[arg(long, value_name = "PATH", conflicts_with = "random_points")]
    input: Option<PathBuf>,
    /// Generate a random relation on this many atoms instead.
    #[arg(long, value_name = "P")]
    random_points: Option<usize>,
    /// Number of terms of a random relation.
    #[arg(long, default_value_t = 3)]
    terms: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Residual tolerance, scaled by `1 + ‖r‖` and `1 + ‖m‖`.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Rows of r at or below this norm are treated as zero.
    #[arg(long)]
    zero_threshold: Option<f64>,
    /// Write the certificate `{k, rho, mu}` here.
    #[arg(long, value_name = "PATH")]
    cert_out: Option<PathBuf>,
}

pub fn run(a: &WitnessArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("witness");
    let rel = match (&a.input, a.random_points) {
        (Some(path), _) => {
            rep.param("input", path);
            io::read_relation(path).with_context(|| format!("loading {}", path.display()))?
        }
        (None, Some(p)) => {
            if a.terms == 0 || p == 0 {
                bail!("--terms and --random-points must be positive");
            }
            rep.param("random_points", p).param("terms", a.terms).param("seed", a.seed);
            random_relation(&mut seeded_rng(a.seed), a.terms, p)
        }
        (None, None) => bail!("give --input PATH or --random-points P"),
    };
    rep.param("tol", a.tol).param("zero_threshold", a.zero_threshold);

    let opts = SynthesisOptions { zero_threshold: a.zero_threshold, ..SynthesisOptions::default() };
    let cert = synthesize_witness(&rel, opts)?;
    let v = verify_witness(&rel, &cert, a.tol)?;
    rep.at_most("coefficient residual max|Σ r_i ρ_ij|", v.max_coeff_residual, v.coeff_bound)
        .at_most("reconstruction residual max|m_i − Σ ρ_ij μ_j|", v.max_reconstruction_residual, v.reconstruction_bound)
        .at_most("max |ρ_ij|", v.max_abs_rho, 1.0 + 1e-12)
        .holds("‖μ_j‖² ≤ Σ‖m_i‖² for every j", v.mu_norm_ok)
        .detail("points", rel.points())
        .detail("terms", rel.terms())
        .detail("mu_norms_sq", &v.mu_norms_sq)
        .detail("m_energy", v.m_energy);
    if let Some(path) = &a.cert_out {
        write_json(path, &cert)?;
        rep.param("cert_out", path);
    }
    Ok(rep)
}
