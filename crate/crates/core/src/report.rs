//! Structured verification reports: one record per check, a configuration
//! echo, and a deterministic plain-text rendering. Failing records carry a
//! replayable witness (object names and morphism tables).

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be run as stated (e.g. a truncated chain
    /// universe); the detail says why.
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    /// Which law or statement was checked, e.g. `CS4` or `prop-6.1`.
    pub check: String,
    /// The object(s) and morphism(s) the instance ran on.
    pub subject: String,
    pub verdict: Verdict,
    /// Witness payload for failures, context for skips.
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    /// Configuration echo in insertion order (kept stable by the callers).
    pub config: Vec<(String, String)>,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            config: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn set_config(&mut self, key: &str, value: impl Into<String>) {
        self.config.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, check: &str, subject: impl Into<String>, verdict: Verdict, detail: Option<String>) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            subject: subject.into(),
            verdict,
            detail,
        });
    }

    /// Records a pass, or a failure with the witness produced lazily.
    pub fn check(
        &mut self,
        check: &str,
        subject: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) {
        if ok {
            self.push(check, subject, Verdict::Pass, None);
        } else {
            self.push(check, subject, Verdict::Fail, Some(witness()));
        }
    }

    pub fn skip(&mut self, check: &str, subject: impl Into<String>, reason: impl Into<String>) {
        self.push(check, subject, Verdict::Skip, Some(reason.into()));
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn pass_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Pass)
            .count()
    }

    pub fn fail_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .count()
    }

    pub fn skip_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Skip)
            .count()
    }

    pub fn ok(&self) -> bool {
        self.fail_count() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// Stable text rendering: suite, config lines, one line per record,
    /// summary. Identical inputs produce identical bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for (k, v) in &self.config {
            out.push_str(&format!("config: {k}={v}\n"));
        }
        for r in &self.records {
            out.push_str(&format!("check: {} [{}] {}", r.check, r.subject, r.verdict));
            if let Some(d) = &r.detail {
                out.push_str(&format!(" :: {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "summary: total={} pass={} fail={} skip={}\n",
            self.records.len(),
            self.pass_count(),
            self.fail_count(),
            self.skip_count()
        ));
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
