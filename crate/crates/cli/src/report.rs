//! Check records and their JSON and CSV encodings.

use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::sampling::show_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub name: String,
    /// The mathematical statement the check falsifies.
    pub anchor: &'static str,
    pub statistic: f64,
    /// How `statistic` is compared: `≤ threshold`, or `≥` for lower bounds.
    pub threshold: f64,
    pub lower_bound: bool,
    pub pass: bool,
    pub detail: String,
    pub wall_ms: Option<f64>,
}

impl Record {
    pub fn at_most(name: &str, anchor: &'static str, statistic: f64, threshold: f64) -> Self {
        Record {
            name: name.to_string(),
            anchor,
            statistic,
            threshold,
            lower_bound: false,
            pass: statistic <= threshold,
            detail: String::new(),
            wall_ms: None,
        }
    }

    pub fn at_least(name: &str, anchor: &'static str, statistic: f64, threshold: f64) -> Self {
        Record {
            lower_bound: true,
            pass: statistic >= threshold,
            ..Record::at_most(name, anchor, statistic, threshold)
        }
    }

    /// Adds a side condition and a note about it.
    pub fn and(mut self, ok: bool, detail: impl Into<String>) -> Self {
        self.pass &= ok;
        let detail = detail.into();
        if !detail.is_empty() {
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&detail);
        }
        self
    }

    pub fn failed(name: &str, anchor: &'static str, why: String) -> Self {
        Record { pass: false, detail: why, ..Record::at_most(name, anchor, f64::NAN, 0.0) }
    }

    fn comparison(&self) -> &'static str {
        if self.lower_bound {
            ">="
        } else {
            "<="
        }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("anchor".into(), json!(self.anchor));
        m.insert("statistic".into(), json!(show_f64(self.statistic)));
        m.insert("comparison".into(), json!(self.comparison()));
        m.insert("threshold".into(), json!(show_f64(self.threshold)));
        m.insert("pass".into(), json!(self.pass.to_string()));
        m.insert("detail".into(), json!(self.detail));
        if let Some(ms) = self.wall_ms {
            m.insert("wall_ms".into(), json!(format!("{ms:.3}")));
        }
        Value::Object(m)
    }
}

/// The records of one command, sorted by check name.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub model: &'static str,
    pub group: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &'static str, cfg: &RunConfig, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        Report { command, model: cfg.model.name(), group: cfg.group.clone(), seed: cfg.seed, records }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "model": self.model,
            "group": self.group,
            "seed": self.seed.to_string(),
            "pass": self.passed().to_string(),
            "checks": self.records.iter().map(Record::to_json).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let timed = self.records.iter().any(|r| r.wall_ms.is_some());
        let mut out = String::from("name,anchor,statistic,comparison,threshold,pass,detail");
        if timed {
            out.push_str(",wall_ms");
        }
        out.push('\n');
        for r in &self.records {
            let mut cells = vec![
                csv_cell(&r.name),
                csv_cell(r.anchor),
                show_f64(r.statistic),
                r.comparison().to_string(),
                show_f64(r.threshold),
                r.pass.to_string(),
                csv_cell(&r.detail),
            ];
            if timed {
                cells.push(r.wall_ms.map(|ms| format!("{ms:.3}")).unwrap_or_default());
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Quotes a CSV field when it contains a separator, quote or newline.
pub fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelKind;

    #[test]
    fn sorted_and_encoded() {
        let cfg = RunConfig::new(ModelKind::Tree);
        let r = Report::new(
            "verify",
            &cfg,
            vec![
                Record::at_most("z.last", "statement, with comma", 0.0, 0.0),
                Record::at_least("a.first", "other", 0.5, 1.0),
            ],
        );
        assert_eq!(r.records[0].name, "a.first");
        assert!(!r.passed());
        let csv = r.to_csv();
        assert!(csv.contains("\"statement, with comma\""));
        assert!(csv.lines().nth(1).unwrap().starts_with("a.first,other,5.0000000000000000e-1,>=,"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["pass"], "false");
        assert_eq!(v["checks"][1]["statistic"], "0.0000000000000000e0");
    }
}
