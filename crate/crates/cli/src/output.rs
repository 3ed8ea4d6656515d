//! Output envelope shared by every command, rendered as JSON or CSV.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use a2count::census::TOOL_VERSION;

use crate::cache::Hashes;
use crate::config::Format;
use crate::Outcome;

/// A table of decimal strings with the provenance of the run.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: &'static str,
    pub status: Outcome,
    pub variant_flags: BTreeMap<String, String>,
    pub caches: Hashes,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Output {
            command,
            status: Outcome::Pass,
            variant_flags: BTreeMap::new(),
            caches: Hashes::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn status_str(&self) -> &'static str {
        match self.status {
            Outcome::Pass => "pass",
            Outcome::Mismatch => "mismatch",
        }
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), Value::String(v.clone()))).collect();
                Value::Object(m)
            })
            .collect();
        let v = json!({
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "status": self.status_str(),
            "variant_flags": self.variant_flags,
            "caches": self.caches,
            "rows": rows,
        });
        serde_json::to_string_pretty(&v).expect("output serializes") + "\n"
    }

    /// Provenance as `#` comment lines, then the table.
    pub fn to_csv(&self) -> String {
        let mut s = format!("# tool_version={TOOL_VERSION}\n# command={}\n# status={}\n", self.command, self.status_str());
        for (k, v) in &self.variant_flags {
            s += &format!("# flag {k}={v}\n");
        }
        for (k, v) in &self.caches {
            s += &format!("# cache {k}={v}\n");
        }
        s += &self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s += &r.iter().map(|x| csv_field(x)).collect::<Vec<_>>().join(",");
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn csv_field(x: &str) -> String {
    if x.contains([',', '"', '\n']) {
        format!("\"{}\"", x.replace('"', "\"\""))
    } else {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut o = Output::new("report", &["isotype", "value"]);
        o.push(vec!["[2^2,1^2]".into(), "-40".into()]);
        assert!(o.to_csv().ends_with("isotype,value\n\"[2^2,1^2]\",-40\n"));
        let v: Value = serde_json::from_str(&o.to_json()).unwrap();
        assert_eq!(v["rows"][0]["value"], "-40");
        assert_eq!(v["status"], "pass");
    }
}
