pub mod bezout;
pub mod hardy;
pub mod layered;
pub mod olympiad;
pub mod suite;
pub mod transfer;
pub mod ulim;
pub mod witness;

use anyhow::Context;
use std::path::Path;

pub fn write_json(path: &Path, value: &impl serde::Serialize) -> anyhow::Result<()> {
    let text = serde_json::to_string(value)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes named columns of equal length as CSV.
pub fn write_columns(path: &Path, columns: &[(&str, &[f64])]) -> anyhow::Result<()> {
    use std::fmt::Write;
    let rows = columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
    let mut out = columns.iter().map(|c| c.0).collect::<Vec<_>>().join(",");
    out.push('\n');
    for i in 0..rows {
        let line: Vec<String> = columns
            .iter()
            .map(|c| c.1.get(i).map_or(String::new(), |v| format!("{v:?}")))
            .collect();
        writeln!(out, "{}", line.join(",")).unwrap();
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}
