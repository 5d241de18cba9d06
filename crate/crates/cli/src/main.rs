use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cmd;
mod report;

use report::RunReport;

/// Constructs and verifies flatness witnesses, weighted factorizations and
/// their Hardy-space counterparts.
#[derive(Parser, Debug)]
#[command(name = "flatwitness", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Print the JSON report on stdout instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize and verify a pointwise witness for a relation.
    Witness(cmd::witness::WitnessArgs),
    /// Check the weighted tail-sum bound on a sequence.
    Olympiad(cmd::olympiad::OlympiadArgs),
    /// Principal generator of a two-generator ideal of bounded functions.
    Bezout(cmd::bezout::BezoutArgs),
    /// Principal limits and maximal-ideal membership of a bounded sequence.
    Ulim(cmd::ulim::UlimArgs),
    /// Weighted factorization on a layered measure space.
    Layered(cmd::layered::LayeredArgs),
    /// Hardy-space pipelines on a grid of the unit circle.
    Hardy {
        #[command(subcommand)]
        op: HardyOp,
    },
    /// Move a disk factorization to the right half-plane.
    Transfer(cmd::transfer::TransferArgs),
    /// Run the acceptance battery.
    Suite(cmd::suite::SuiteArgs),
}

#[derive(Subcommand, Debug)]
enum HardyOp {
    /// Factor f = g·h with g outer and bounded.
    Factor(cmd::hardy::FactorArgs),
    /// Outer function from a log-modulus.
    Outer(cmd::hardy::OuterArgs),
    /// Project onto bH² for an inner b.
    Project(cmd::hardy::ProjectArgs),
}

/// Named boundary functions shared by the grid subcommands.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    /// f ≡ 1.
    Constant1,
    /// f(z) = 1 − z.
    OneMinusZ,
    /// f(z) = 1 + z/2.
    OnePlusHalfZ,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("FLATWITNESS_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("FLATWITNESS_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            anyhow::bail!("FLATWITNESS_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn dispatch(command: &Command) -> anyhow::Result<RunReport> {
    match command {
        Command::Witness(a) => cmd::witness::run(a),
        Command::Olympiad(a) => cmd::olympiad::run(a),
        Command::Bezout(a) => cmd::bezout::run(a),
        Command::Ulim(a) => cmd::ulim::run(a),
        Command::Layered(a) => cmd::layered::run(a),
        Command::Hardy { op: HardyOp::Factor(a) } => cmd::hardy::factor(a),
        Command::Hardy { op: HardyOp::Outer(a) } => cmd::hardy::outer(a),
        Command::Hardy { op: HardyOp::Project(a) } => cmd::hardy::project(a),
        Command::Transfer(a) => cmd::transfer::run(a),
        Command::Suite(a) => cmd::suite::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let mut report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    report.finish(start.elapsed().as_secs_f64());

    if let Some(path) = &cli.output.out {
        if let Err(e) = report.save(path) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let written = if cli.output.json {
        use std::io::Write;
        writeln!(stdout, "{}", report.to_json())
    } else {
        report.write_text(&mut stdout)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
