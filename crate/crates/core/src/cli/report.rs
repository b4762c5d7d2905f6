//! Deterministic reports in a text and a line-protocol form.

use std::fmt::Write;

use crate::checks::{CheckEntry, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Header fields, check entries and result lines of one command run.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub entries: Vec<CheckEntry>,
    pub result: Vec<(String, String)>,
}

impl Report {
    pub fn has_failure(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Fail)
    }

    fn count(&self, v: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == v).count()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.meta {
                    writeln!(out, "{k}: {v}").unwrap();
                }
                if !self.entries.is_empty() {
                    out.push('\n');
                    let width = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
                    for e in &self.entries {
                        writeln!(out, "{:<12} {:<width$}  {}", format!("[{}]", e.verdict), e.id, e.detail).unwrap();
                    }
                }
                if !self.result.is_empty() {
                    out.push('\n');
                    for (k, v) in &self.result {
                        writeln!(out, "{k}: {v}").unwrap();
                    }
                }
                if !self.entries.is_empty() {
                    writeln!(
                        out,
                        "\nsummary: {} pass, {} fail, {} infeasible",
                        self.count(Verdict::Pass),
                        self.count(Verdict::Fail),
                        self.count(Verdict::Infeasible)
                    )
                    .unwrap();
                }
            }
            Format::Machine => {
                for (k, v) in &self.meta {
                    writeln!(out, "META {} {}", k.replace(' ', "_"), one_line(v)).unwrap();
                }
                for e in &self.entries {
                    let detail = one_line(&e.detail);
                    if detail.is_empty() {
                        writeln!(out, "CHECK {} {}", e.id, e.verdict).unwrap();
                    } else {
                        writeln!(out, "CHECK {} {} {}", e.id, e.verdict, detail).unwrap();
                    }
                }
                for (k, v) in &self.result {
                    writeln!(out, "{} {}", k.to_uppercase().replace(' ', "_"), one_line(v)).unwrap();
                }
                writeln!(
                    out,
                    "SUMMARY pass={} fail={} infeasible={}",
                    self.count(Verdict::Pass),
                    self.count(Verdict::Fail),
                    self.count(Verdict::Infeasible)
                )
                .unwrap();
            }
        }
        out
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
