use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub anchor: String,
    pub pass: bool,
}

/// The outcome of one command. Field order is the JSON schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub degree_cap: usize,
    pub cert: usize,
    pub tables: Vec<Table>,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: String, degree_cap: usize, cert: usize) -> Self {
        Report {
            command,
            degree_cap,
            cert,
            tables: Vec::new(),
            assertions: Vec::new(),
        }
    }

    pub fn table(&mut self, name: impl Into<String>, dims: Vec<usize>) {
        self.tables.push(Table { name: name.into(), dims });
    }

    pub fn assert(&mut self, anchor: impl Into<String>, pass: bool) {
        self.assertions.push(Assertion {
            anchor: anchor.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        let _ = writeln!(s, "degree cap {}, exact through {}", self.degree_cap, self.cert);
        let width = self.tables.iter().map(|t| t.name.chars().count()).max().unwrap_or(0);
        for t in &self.tables {
            let dims: Vec<String> = t.dims.iter().map(usize::to_string).collect();
            let pad = width - t.name.chars().count();
            let _ = writeln!(s, "  {}{}  [{}]", t.name, " ".repeat(pad), dims.join(" "));
        }
        for a in &self.assertions {
            let _ = writeln!(s, "{} {}", if a.pass { "PASS" } else { "FAIL" }, a.anchor);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::Report;

    #[test]
    fn one_failed_assertion_fails_the_report() {
        let mut r = Report::new("info free(0)".into(), 4, 4);
        r.table("dim M", vec![1, 0, 0, 0, 0]);
        r.assert("holds", true);
        assert!(r.passed());
        r.assert("does not hold", false);
        assert!(!r.passed());
        assert!(r.to_text().contains("FAIL does not hold"));
        assert!(r.to_json().starts_with("{\n  \"command\": \"info free(0)\",\n  \"degree_cap\": 4,"));
    }
}
