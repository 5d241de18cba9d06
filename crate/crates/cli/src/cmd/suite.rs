use clap::Args;
use flatwitness::suite::{run_criterion, CRITERIA, DEFAULT_SEED};

use crate::report::RunReport;

/// Wall-clock budget for the whole battery.
const TOTAL_BUDGET: f64 = 60.0;

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run only these criteria (repeatable).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
    only: Vec<u8>,
}

pub fn run(a: &SuiteArgs) -> anyhow::Result<RunReport> {
    let mut rep = RunReport::new("suite");
    rep.param("seed", a.seed).param("only", &a.only);
    let mut total = 0.0;
    let mut lines = Vec::new();
    for &(id, _, _) in CRITERIA.iter().filter(|c| a.only.is_empty() || a.only.contains(&c.0)) {
        let r = run_criterion(id, a.seed).expect("listed criterion");
        total += r.seconds;
        for c in &r.checks {
            rep.at_most(&format!("c{id}: {}", c.name), c.value, c.bound);
        }
        rep.at_most(&format!("c{id}: seconds"), r.seconds, r.budget_seconds);
        if let Some(e) = &r.error {
            rep.holds(&format!("c{id}: ran to completion ({e})"), false);
        }
        lines.push(r.summary_line());
    }
    rep.at_most("total seconds", total, TOTAL_BUDGET).detail("criteria", lines);
    Ok(rep)
}
