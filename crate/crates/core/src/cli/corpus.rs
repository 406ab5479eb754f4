use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::input::{parse_input, InputDocument};
use super::report::Report;
use super::run::{run, Command, Flags};
use crate::error::{Error, Result};

const ENTRIES: &[(&str, &str)] = &[
    ("ex-2-1", include_str!("../../corpus/ex-2-1.json")),
    ("ex-2-2", include_str!("../../corpus/ex-2-2.json")),
    ("ex-2-3", include_str!("../../corpus/ex-2-3.json")),
    ("prop-5-1-1a", include_str!("../../corpus/prop-5-1-1a.json")),
    ("prop-5-1-1b", include_str!("../../corpus/prop-5-1-1b.json")),
    ("prop-5-1-2", include_str!("../../corpus/prop-5-1-2.json")),
    ("prop-5-1-2-abelian", include_str!("../../corpus/prop-5-1-2-abelian.json")),
    ("prop-5-1-3", include_str!("../../corpus/prop-5-1-3.json")),
    ("prop-5-1-4", include_str!("../../corpus/prop-5-1-4.json")),
    ("linearizable-4", include_str!("../../corpus/linearizable-4.json")),
    ("moebius-rotation-5", include_str!("../../corpus/moebius-rotation-5.json")),
    ("moebius-inversion", include_str!("../../corpus/moebius-inversion.json")),
    ("moebius-scaling-2", include_str!("../../corpus/moebius-scaling-2.json")),
];

/// The built-in documents, in a fixed order.
pub fn corpus() -> Vec<(&'static str, InputDocument)> {
    ENTRIES
        .iter()
        .map(|(name, text)| (*name, parse_input(text).unwrap_or_else(|e| panic!("corpus entry {name}: {e}"))))
        .collect()
}

pub fn corpus_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn corpus_entry(name: &str) -> Result<InputDocument> {
    let (_, text) = ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Input(format!("no corpus entry `{name}`; try `examples list`")))?;
    parse_input(text)
}

/// A recorded verdict that a fresh run did not reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub command: String,
    pub key: String,
    pub expected: String,
    pub actual: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ExampleRun {
    pub name: String,
    pub reports: Vec<Report>,
    pub mismatches: Vec<Mismatch>,
}

impl ExampleRun {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// All sub-reports folded into one, with verdict keys prefixed by their
    /// command.
    pub fn summary(&self, timing_ms: u64) -> Report {
        let mut verdicts = BTreeMap::new();
        for r in &self.reports {
            for (k, v) in &r.verdicts {
                verdicts.insert(format!("{} :: {k}", r.command), v.clone());
            }
        }
        verdicts.insert("match".into(), self.matched().to_string());
        let mismatches: Vec<Value> = self
            .mismatches
            .iter()
            .map(|m| json!({"command": m.command, "key": m.key, "expected": m.expected, "actual": m.actual}))
            .collect();
        let runs: Vec<Value> = self
            .reports
            .iter()
            .map(|r| json!({"command": r.command, "certificates": r.certificates}))
            .collect();
        Report {
            command: format!("examples run {}", self.name),
            input: self.name.clone(),
            verdicts,
            certificates: json!({"mismatches": mismatches, "runs": runs}),
            limit_reached: false,
            timing_ms,
        }
    }
}

/// Runs every expectation recorded in a corpus entry and compares verdicts.
pub fn run_example(name: &str, flags: &Flags) -> Result<ExampleRun> {
    let doc = corpus_entry(name)?;
    check_document(name, &doc, flags)
}

pub fn check_document(name: &str, doc: &InputDocument, flags: &Flags) -> Result<ExampleRun> {
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    for exp in &doc.expected {
        let cmd = Command::from_parts(&exp.command, exp.element.as_deref(), exp.generator.as_deref())?;
        let report = run(&cmd, doc, flags)?;
        for (key, expected) in &exp.verdicts {
            let actual = report.verdicts.get(key);
            if actual != Some(expected) {
                mismatches.push(Mismatch {
                    command: report.command.clone(),
                    key: key.clone(),
                    expected: expected.clone(),
                    actual: actual.cloned(),
                });
            }
        }
        reports.push(report);
    }
    Ok(ExampleRun {
        name: name.to_string(),
        reports,
        mismatches,
    })
}

