use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use flatwitness::seq::{log_grid_windows, olympiad_weighted_sum, tail_profile, verify_olympiad_bound};
use flatwitness::suite::{heavy_tail_sequence, seeded_rng, DEFAULT_SEED};
use flatwitness::io;

use super::write_columns;
use crate::report::RunReport;

#[derive(Args, Debug)]
pub struct OlympiadArgs {
    /// Sequence as JSON (`[re, im]` pairs or reals) or CSV `index,re,im`.
    #[arg(long, value_name = "PATH", conflicts_with = "random_len")]
    input: Option<PathBuf>,
    /// Generate a random square-summable sequence of this length instead.
    #[arg(long, value_name = "LEN")]
    random_len: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Check only the window (m, n].
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    /// Grid points for the logarithmic window grid.
    #[arg(long, default_value_t = 24)]
    windows: usize,
    /// Slack in the bound; defaults to 1e-12·(1 + r_0).
    #[arg(long)]
    tol: Option<f64>,
    /// Write columns n, a_n², r_n, partial weighted sum, 2(√r_0 − √r_n).
    #[arg(long, value_name = "PATH")]
    series_out: Option<PathBuf>,
}

pub fn run(a: &OlympiadArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("olympiad");
    let seq = match (&a.input, a.random_len) {
        (Some(path), _) => {
            rep.param("input", path);
            io::read_sequence(path).with_context(|| format!("loading {}", path.display()))?
        }
        (None, Some(len)) => {
            rep.param("random_len", len).param("seed", a.seed);
            heavy_tail_sequence(&mut seeded_rng(a.seed), len)
        }
        (None, None) => bail!("give --input PATH or --random-len LEN"),
    };
    let prof = tail_profile(&seq)?;
    let len = prof.len();
    if len < 2 {
        bail!("need at least two terms");
    }
    let windows = match (a.m, a.n) {
        (Some(m), Some(n)) => vec![(m, n)],
        _ => log_grid_windows(len, a.windows),
    };
    if windows.is_empty() {
        bail!("no windows to check");
    }
    rep.param("tol", a.tol).param("windows", windows.len());

    let tol = a.tol.unwrap_or_else(|| prof.default_tol());
    let (mut worst, mut violations, mut skipped) = (f64::NEG_INFINITY, 0usize, 0usize);
    for &(m, n) in &windows {
        match verify_olympiad_bound(&prof, m, n, Some(tol)) {
            Ok(r) => {
                worst = worst.max(r.lhs - r.rhs);
                violations += usize::from(!r.holds);
            }
            Err(flatwitness::Error::DegenerateTail { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if skipped == windows.len() {
        bail!("every window ends in a zero tail");
    }
    rep.at_most("max over windows of lhs − rhs", worst, tol)
        .at_most("violating windows", violations as f64, 0.0)
        .at_most("telescoping defect", prof.telescoping_defect(), 1e-13 * (1.0 + prof.total()))
        .detail("length", len)
        .detail("r0", prof.total())
        .detail("windows_skipped_zero_tail", skipped);

    if let Some(path) = &a.series_out {
        let idx: Vec<f64> = (0..=len).map(|n| n as f64).collect();
        let a_sq: Vec<f64> = (0..=len).map(|n| if n == 0 { 0.0 } else { prof.a_sq(n) }).collect();
        let r: Vec<f64> = (0..=len).map(|n| prof.r(n)).collect();
        let mut partial = vec![0.0];
        let mut acc = 0.0;
        for n in 1..=len {
            if prof.r(n - 1) > 0.0 {
                acc += olympiad_weighted_sum(&prof, n - 1, n)?;
            }
            partial.push(acc);
        }
        let bound: Vec<f64> = r.iter().map(|rn| 2.0 * (prof.total().sqrt() - rn.sqrt())).collect();
        write_columns(path, &[("n", &idx), ("a_sq", &a_sq), ("r", &r), ("weighted_sum", &partial), ("bound", &bound)])?;
        rep.param("series_out", path);
    }
    Ok(rep)
}
