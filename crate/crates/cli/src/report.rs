//! Structured command output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Echoed inputs in canonical form.
    pub inputs: BTreeMap<String, String>,
    /// `verdict` holds the headline; other keys hold supporting values.
    pub verdicts: BTreeMap<String, String>,
    pub certificates: Vec<Certificate>,
    pub witnesses: Vec<Witness>,
    /// Milliseconds.
    pub timings: BTreeMap<String, f64>,
    pub caveats: Vec<String>,
    pub error: Option<ReportError>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub data: BTreeMap<String, String>,
    /// Result of re-checking the certificate from scratch.
    pub rechecked: bool,
}

/// A polynomial map, with the derivation it is claimed to commute with.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub nvars: usize,
    pub components: Vec<String>,
    pub degree: u32,
    /// Components of the derivation; empty when the map is not a
    /// commutation witness.
    pub derivation: Vec<String>,
    pub commutes: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    /// `usage`, `parse`, `domain`, `budget`.
    pub kind: String,
    pub message: String,
    pub position: Option<usize>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn verdict(&mut self, key: &str, value: impl ToString) {
        self.verdicts.insert(key.to_string(), value.to_string());
    }

    pub fn headline(&self) -> Option<&str> {
        self.verdicts.get("verdict").map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "input {k}: {v}");
        }
        if let Some(v) = self.verdicts.get("verdict") {
            let _ = writeln!(s, "verdict: {v}");
        }
        for (k, v) in self.verdicts.iter().filter(|(k, _)| k.as_str() != "verdict") {
            let _ = writeln!(s, "{k}: {v}");
        }
        for c in &self.certificates {
            let data: Vec<String> = c.data.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(
                s,
                "certificate {} [{}]: {}",
                c.kind,
                if c.rechecked { "rechecked" } else { "NOT rechecked" },
                data.join("; ")
            );
        }
        for w in &self.witnesses {
            let status = match w.commutes {
                Some(true) => ", commutes",
                Some(false) => ", does not commute",
                None => "",
            };
            let _ = writeln!(s, "witness {}: ({}) [degree {}{status}]", w.label, w.components.join(", "), w.degree);
        }
        for c in &self.caveats {
            let _ = writeln!(s, "note: {c}");
        }
        if let Some(e) = &self.error {
            match e.position {
                Some(p) => {
                    let _ = writeln!(s, "error ({}): {} at position {p}", e.kind, e.message);
                }
                None => {
                    let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
                }
            }
        }
        s
    }
}
