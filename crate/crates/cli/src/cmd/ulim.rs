use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use flatwitness::ultralimit::{eventual_limit, ideal_membership_with_tail, DEFAULT_TAIL_FRACTION};
use flatwitness::{io, principal_limit, BoundedSequence, EventualLimit};

use crate::report::RunReport;

#[derive(Args, Debug)]
pub struct UlimArgs {
    /// Sequence as JSON or CSV.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Decision tolerance for the tail.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Share of trailing samples that must have settled.
    #[arg(long, default_value_t = DEFAULT_TAIL_FRACTION)]
    tail_fraction: f64,
    /// Also report the principal limit at this 1-based index.
    #[arg(long)]
    index: Option<usize>,
}

pub fn run(a: &UlimArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("ulim");
    rep.param("input", &a.input).param("tol", a.tol).param("tail_fraction", a.tail_fraction);
    let values = io::read_sequence(&a.input).with_context(|| format!("loading {}", a.input.display()))?;
    let seq = BoundedSequence::new(values)?;
    let membership = ideal_membership_with_tail(&seq, a.tol, a.tail_fraction)?;
    rep.verdict("nonprincipal_membership", membership)
        .detail("length", seq.len())
        .detail("sup_norm", seq.sup_norm());
    match eventual_limit(&seq, a.tol, a.tail_fraction)? {
        EventualLimit::Settled { limit, radius } => {
            rep.verdict("eventual_limit", limit).detail("tail_radius", radius);
        }
        EventualLimit::NoVerdict => {
            rep.verdict("eventual_limit", "no verdict");
        }
    }
    if let Some(m) = a.index {
        let v = principal_limit(&seq, m)?;
        rep.param("index", m)
            .verdict("principal_limit", v)
            .holds("principal limit equals the indexed term", v == seq.values()[m - 1]);
    }
    Ok(rep)
}
