use serde::{Deserialize, Serialize};

use crate::image::ImageReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One identity or expectation checked on one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Left side of the identity (computed value).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub actual: Option<String>,
    /// Right side (expected value).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            actual: None,
            expected: None,
            detail: detail.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            actual: None,
            expected: None,
            detail: reason.into(),
        }
    }

    /// Pass if the two sides agree; both are recorded either way.
    pub fn compare(name: impl Into<String>, actual: String, expected: String, ok: bool) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            actual: Some(actual),
            expected: Some(expected),
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// A computed invariant: exact value plus a decimal approximation where
/// that helps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub name: String,
    pub exact: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub strands: usize,
    pub word: String,
    pub components: usize,
    pub values: Vec<Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub entries: Vec<EntryReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image: Option<ImageReport>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, entries: Vec<EntryReport>) -> Self {
        let mut summary = Summary::default();
        for c in entries.iter().flat_map(|e| &e.checks) {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Self {
            command: command.to_string(),
            entries,
            image: None,
            summary,
            total_ms: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out += &format!(
                "{} [{} strands: {}] components={}",
                e.name, e.strands, e.word, e.components
            );
            if let Some(ms) = e.elapsed_ms {
                out += &format!(" ({ms:.1} ms)");
            }
            out.push('\n');
            for v in &e.values {
                out += &format!("  {} = {}", v.name, v.exact);
                if let Some(a) = &v.approx {
                    out += &format!("  ≈ {a}");
                }
                out.push('\n');
            }
            for c in &e.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                out += &format!("  [{tag}] {}", c.name);
                if c.status == Status::Fail {
                    if let (Some(a), Some(x)) = (&c.actual, &c.expected) {
                        out += &format!(": got {a}, expected {x}");
                    }
                }
                if !c.detail.is_empty() {
                    out += &format!(" ({})", c.detail);
                }
                out.push('\n');
            }
        }
        if let Some(img) = &self.image {
            out += &format!(
                "{}: dimension {}, {} generators\n",
                img.spec, img.dimension, img.generators
            );
            out += &format!("  verdict: {}\n", describe_verdict(&img.verdict));
            for n in &img.notes {
                out += &format!("  note: {n}\n");
            }
        }
        if self.command == "check-table" {
            let s = &self.summary;
            out += &format!(
                "{} entries: {} passed, {} failed, {} skipped\n",
                self.entries.len(),
                s.passed,
                s.failed,
                s.skipped
            );
        }
        if let Some(ms) = self.total_ms {
            out += &format!("total {ms:.1} ms\n");
        }
        out
    }
}

fn describe_verdict(v: &crate::image::Verdict) -> String {
    use crate::image::Verdict;
    match v {
        Verdict::FiniteAbelian { order } => format!("finite abelian, projective order {order}"),
        Verdict::Finite { order } => format!("finite, projective order {order}"),
        Verdict::Infinite { witness } => format!(
            "infinite; word [{}] has M^K ≠ 1 mod {} with K of {} bits",
            witness.word.iter().map(i32::to_string).collect::<Vec<_>>().join(" "),
            witness.prime,
            witness.exponent.bits()
        ),
        Verdict::Unknown { bound } => format!("unknown: closure exceeded {bound} elements and no witness found"),
    }
}
