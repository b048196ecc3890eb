//! Deterministic reports: a structured tree of sections that renders to a
//! stable text form (golden-file friendly) and round-trips through JSON.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Item {
    Field { key: String, value: String },
    Lines { lines: Vec<String> },
    Table { header: Vec<String>, rows: Vec<Vec<String>> },
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            ok: true,
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, title: impl Into<String>) -> &mut Section {
        self.sections.push(Section {
            title: title.into(),
            items: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }
}

impl Section {
    pub fn field(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.items.push(Item::Field {
            key: key.into(),
            value: value.into(),
        });
        self
    }

    pub fn lines(&mut self, lines: Vec<String>) -> &mut Self {
        self.items.push(Item::Lines { lines });
        self
    }

    pub fn table(&mut self, header: Vec<String>, rows: Vec<Vec<String>>) -> &mut Self {
        self.items.push(Item::Table { header, rows });
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

pub fn parse_report(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Spec {
        path: format!("line {}, column {}", e.line(), e.column()),
        reason: e.to_string(),
    })
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\n", report.command));
    out.push_str(&format!(
        "status: {}\n",
        if report.ok { "ok" } else { "FAILED" }
    ));
    for section in &report.sections {
        out.push('\n');
        out.push_str(&format!("== {} ==\n", section.title));
        for item in &section.items {
            match item {
                Item::Field { key, value } => out.push_str(&format!("{}: {}\n", key, value)),
                Item::Lines { lines } => {
                    for line in lines {
                        out.push_str(&format!("  {}\n", line));
                    }
                }
                Item::Table { header, rows } => {
                    out.push_str(&format!("  {}\n", header.join(" | ")));
                    for row in rows {
                        out.push_str(&format!("  {}\n", row.join(" | ")));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid() {
        let report = Report::new("noop");
        let text = emit_report(&report, ReportFormat::Text);
        assert_eq!(text, "# noop\nstatus: ok\n");
        let json = emit_report(&report, ReportFormat::Structured);
        assert_eq!(parse_report(&json).unwrap(), report);
    }

    #[test]
    fn structured_round_trip() {
        let mut report = Report::new("demo");
        report
            .section("numbers")
            .field("dim", "3")
            .table(
                vec!["a".into(), "b".into()],
                vec![vec!["1".into(), "2".into()]],
            );
        report.section("basis").lines(vec!["h(x)(1, -1, 0)".into()]);
        report.ok = false;
        let json = emit_report(&report, ReportFormat::Structured);
        assert_eq!(parse_report(&json).unwrap(), report);
    }
}
