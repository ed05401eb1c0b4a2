//! Structured results for law runs.
//!
//! Every law/instance pair produces exactly one [`LawReport`]. Reports
//! render to one line each for terminals and serialize to JSON for
//! machine consumption.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

/// Verdict for one law on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A concrete witness that a law failed: which input was fed in, what came
/// back, and the transformers involved, all rendered so the failure can be
/// replayed by hand against the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// What disagreed, in words.
    pub description: String,
    /// The request at which the disagreement shows up, if pointwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub request: Option<String>,
    /// The response fed backward, if the backward pass disagreed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub response: Option<String>,
    /// Renderings of the transformers under test.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<String>,
}

impl Counterexample {
    pub fn message(description: impl Into<String>) -> Self {
        Counterexample {
            description: description.into(),
            request: None,
            response: None,
            morphisms: Vec::new(),
        }
    }
}

/// Outcome of checking one law on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// Law name, `suite/law` style (for example `category/associativity`).
    pub law: String,
    /// Which instance of the law was checked (containers, effects, ...).
    pub instance: String,
    /// How many pointwise checks this report covers.
    pub cases: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    /// One-line rendering, stable across runs.
    pub fn line(&self) -> String {
        match (&self.status, &self.counterexample) {
            (Status::Pass, _) => {
                format!("PASS {} [{}] ({} cases)", self.law, self.instance, self.cases)
            }
            (Status::Fail, Some(cx)) => {
                let mut line = format!(
                    "FAIL {} [{}] ({} cases): {}",
                    self.law, self.instance, self.cases, cx.description
                );
                if let Some(req) = &cx.request {
                    line.push_str(&format!(" at request {req}"));
                }
                if let Some(resp) = &cx.response {
                    line.push_str(&format!(", response {resp}"));
                }
                line
            }
            (Status::Fail, None) => {
                format!("FAIL {} [{}] ({} cases)", self.law, self.instance, self.cases)
            }
        }
    }
}

/// True when every report passed.
pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

/// Render the whole run, one line per report, plus a summary line.
pub fn render_lines(reports: &[LawReport], out: &mut impl Write) -> io::Result<()> {
    for report in reports {
        writeln!(out, "{}", report.line())?;
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let cases: u64 = reports.iter().map(|r| r.cases).sum();
    if failed == 0 {
        writeln!(out, "all {} law instances passed ({} cases)", reports.len(), cases)?;
    } else {
        writeln!(
            out,
            "{failed} of {} law instances FAILED ({} cases)",
            reports.len(),
            cases
        )?;
    }
    Ok(())
}

/// Write the run as a JSON document: a summary header plus every report.
pub fn write_json(reports: &[LawReport], path: &Path) -> io::Result<()> {
    #[derive(Serialize)]
    struct Document<'a> {
        passed: bool,
        laws: usize,
        failures: usize,
        cases: u64,
        reports: &'a [LawReport],
    }
    let doc = Document {
        passed: all_passed(reports),
        laws: reports.len(),
        failures: reports.iter().filter(|r| r.status == Status::Fail).count(),
        cases: reports.iter().map(|r| r.cases).sum(),
        reports,
    };
    let file = std::fs::File::create(path)?;
    let mut writer = io::BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, &doc)?;
    writer.write_all(b"\n")?;
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<LawReport> {
        vec![
            LawReport {
                law: "category/left-identity".into(),
                instance: "dom=C2 cod=C3".into(),
                cases: 12,
                status: Status::Pass,
                counterexample: None,
            },
            LawReport {
                law: "maybe/join-agrees-with-tables".into(),
                instance: "c=C2".into(),
                cases: 3,
                status: Status::Fail,
                counterexample: Some(Counterexample {
                    description: "backward disagrees".into(),
                    request: Some("just(just(q0))".into()),
                    response: Some("just(r0)".into()),
                    morphisms: vec!["maybe(maybe(C2)) => maybe(C2) ...".into()],
                }),
            },
        ]
    }

    #[test]
    fn lines_render_pass_and_fail() {
        let reports = sample();
        assert_eq!(
            reports[0].line(),
            "PASS category/left-identity [dom=C2 cod=C3] (12 cases)"
        );
        let fail_line = reports[1].line();
        assert!(fail_line.starts_with("FAIL maybe/join-agrees-with-tables [c=C2] (3 cases):"));
        assert!(fail_line.contains("at request just(just(q0))"));
        assert!(fail_line.contains("response just(r0)"));
    }

    #[test]
    fn json_document_round_trips_key_fields() {
        let reports = sample();
        let dir = std::env::temp_dir().join(format!("duplex-report-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("laws.json");
        write_json(&reports, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["passed"], serde_json::Value::Bool(false));
        assert_eq!(doc["laws"], serde_json::json!(2));
        assert_eq!(doc["failures"], serde_json::json!(1));
        assert_eq!(doc["reports"][0]["status"], serde_json::json!("pass"));
        assert_eq!(
            doc["reports"][1]["counterexample"]["request"],
            serde_json::json!("just(just(q0))")
        );
        std::fs::remove_dir_all(&dir).unwrap();
        assert!(!all_passed(&reports));
    }
}
