//! Reports, rendered either as line-stable text or as one JSON document.
//! Both renderings come from the same rows.

use std::fmt::Write as _;

use absorb_core::theorems::VerificationOutcome;
use absorb_core::{CheckReport, Predicate, Submodule};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<ResultRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outcomes: Vec<OutcomeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ResultRow {
    pub submodule: String,
    pub generators: String,
    pub predicate: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub algorithm: String,
}

impl ResultRow {
    pub fn new(name: &str, n: &Submodule, report: &CheckReport) -> ResultRow {
        let m = n.module();
        ResultRow {
            submodule: name.to_string(),
            generators: format!("<{}>", n.show_generators()),
            predicate: report.predicate.name().to_string(),
            verdict: report.verdict.to_string(),
            witness: report.witness.map(|s| absorb_core::checkers::show_ring(m.ring(), s)),
            counterexample: report.counterexample.as_ref().map(|v| v.describe(m)),
            reason: report.reason.clone(),
            algorithm: format!("{:?}", report.algorithm).to_lowercase(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OutcomeRow {
    pub index: usize,
    pub id: String,
    pub status: String,
    pub instances_tested: usize,
    pub asserted: usize,
    pub vacuous: usize,
    pub skipped: usize,
    pub failing_instances: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

impl From<&VerificationOutcome> for OutcomeRow {
    fn from(o: &VerificationOutcome) -> Self {
        OutcomeRow {
            index: o.index,
            id: o.id.to_string(),
            status: o.status.to_string(),
            instances_tested: o.instances_tested,
            asserted: o.asserted,
            vacuous: o.vacuous,
            skipped: o.skipped,
            failing_instances: o.failing_instances,
            failures: o.failures.iter().map(|f| format!("instance {} ({}): {}", f.instance, f.label, f.detail)).collect(),
            discrepancies: o.discrepancies.iter().map(|d| d.to_string()).collect(),
        }
    }
}

impl Report {
    pub fn new(command: String) -> Report {
        Report { command, instance: None, results: Vec::new(), outcomes: Vec::new(), summary: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(i) = &self.instance {
            let _ = writeln!(out, "instance: {i}");
        }
        let mut last = None;
        for r in &self.results {
            if last != Some((&r.submodule, &r.generators)) {
                let _ = writeln!(out, "{} = {}", r.submodule, r.generators);
                last = Some((&r.submodule, &r.generators));
            }
            let _ = write!(out, "  {}: {}", r.predicate, r.verdict);
            if let Some(w) = &r.witness {
                let _ = write!(out, " (witness s={w})");
            }
            if let Some(c) = &r.counterexample {
                let _ = write!(out, " (counterexample {c})");
            }
            if let Some(why) = &r.reason {
                let _ = write!(out, " ({why})");
            }
            out.push('\n');
        }
        for o in &self.outcomes {
            let _ = writeln!(
                out,
                "{:>2} {:<28} {:<17} tested={} asserted={} vacuous={} skipped={} failing={}",
                o.index, o.id, o.status, o.instances_tested, o.asserted, o.vacuous, o.skipped, o.failing_instances
            );
            for f in &o.failures {
                let _ = writeln!(out, "     {f}");
            }
            for d in &o.discrepancies {
                let _ = writeln!(out, "     {d}");
            }
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "summary: {s}");
        }
        out
    }
}

pub fn predicate_list(names: &[String]) -> Result<Vec<Predicate>, String> {
    names.iter().map(|n| n.parse()).collect()
}
