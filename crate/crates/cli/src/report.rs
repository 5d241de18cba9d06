use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// A measured value and the bound it was held to; `ok` is `value ≤ bound`.
#[derive(Debug, Clone, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub parameters: BTreeMap<String, Value>,
    pub metrics: Vec<Metric>,
    /// Informational outcomes that never fail a run.
    pub verdicts: BTreeMap<String, Value>,
    pub details: BTreeMap<String, Value>,
    pub passed: bool,
    pub wall_seconds: f64,
}

impl RunReport {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            metrics: Vec::new(),
            verdicts: BTreeMap::new(),
            details: BTreeMap::new(),
            passed: true,
            wall_seconds: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    /// Records `value ≤ bound`. Non-finite values fail.
    pub fn at_most(&mut self, name: &str, value: f64, bound: f64) -> &mut Self {
        let ok = value.is_finite() && value <= bound;
        self.metrics.push(Metric { name: name.into(), value, bound, ok });
        self
    }

    /// Records a predicate as a violation count: 0 when it holds.
    pub fn holds(&mut self, name: &str, ok: bool) -> &mut Self {
        self.at_most(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.verdicts.insert(key.into(), to_value(value));
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.details.insert(key.into(), to_value(value));
        self
    }

    pub fn finish(&mut self, wall_seconds: f64) {
        self.wall_seconds = wall_seconds;
        self.passed = self.metrics.iter().all(|m| m.ok);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{} {verdict} ({:.3}s)", self.subcommand, self.wall_seconds)?;
        for m in &self.metrics {
            let flag = if m.ok { "ok  " } else { "FAIL" };
            writeln!(out, "  {flag} {}: {:.6e} (bound {:.3e})", m.name, m.value, m.bound)?;
        }
        for (k, v) in &self.verdicts {
            writeln!(out, "  verdict {k}: {v}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json() + "\n")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}
