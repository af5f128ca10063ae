//! Check outcomes and their text / JSON serialization.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not decidable at the configured truncation order.
    Precision,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Precision => "PRECISION",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub check_id: String,
    pub paper_eq: String,
    pub status: Status,
    pub witness: Option<String>,
    pub millis: u64,
    /// For `Precision`: how many degrees were missing.
    #[serde(skip)]
    pub shortfall: Option<i64>,
}

impl Outcome {
    pub fn pass(id: impl Into<String>) -> Self {
        Outcome {
            check_id: id.into(),
            paper_eq: String::new(),
            status: Status::Pass,
            witness: None,
            millis: 0,
            shortfall: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            witness: Some(witness.into()),
            ..Self::pass(id)
        }
    }

    pub fn from_result(id: impl Into<String>, r: crate::Result<Option<String>>) -> Self {
        match r {
            Ok(None) => Self::pass(id),
            Ok(Some(w)) => Self::fail(id, w),
            Err(crate::Error::Precision { needed, have }) => Outcome {
                status: Status::Precision,
                witness: Some(format!("needs precision {needed}, have {have}")),
                shortfall: Some(needed - have),
                ..Self::pass(id)
            },
            Err(e) => Self::fail(id, e.to_string()),
        }
    }

    /// Passing outcome that still carries an informational value.
    pub fn note(mut self, text: impl Into<String>) -> Self {
        if self.witness.is_none() {
            self.witness = Some(text.into());
        }
        self
    }

    pub fn tag(mut self, eq: &str) -> Self {
        self.paper_eq = eq.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f`, stamping the elapsed wall time into its outcome.
pub fn timed(tag: &str, id: impl Into<String>, f: impl FnOnce() -> crate::Result<Option<String>>) -> Outcome {
    let t = Instant::now();
    let r = f();
    let mut o = Outcome::from_result(id, r).tag(tag);
    o.millis = t.elapsed().as_millis() as u64;
    o
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Outcome>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, o: Outcome) {
        self.checks.push(o);
    }

    pub fn extend(&mut self, it: impl IntoIterator<Item = Outcome>) {
        self.checks.extend(it);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Outcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.checks.iter().filter(|o| !o.passed())
    }

    pub fn find(&self, id: &str) -> Option<&Outcome> {
        self.checks.iter().find(|o| o.check_id == id)
    }

    pub fn has_precision_failure(&self) -> bool {
        self.checks.iter().any(|o| o.status == Status::Precision)
    }

    /// One line per check: `status  check_id  [tag]  witness`.
    pub fn render_text(&self, with_times: bool) -> String {
        let mut s = String::new();
        for o in &self.checks {
            s.push_str(&format!("{:<9} {}", o.status.to_string(), o.check_id));
            if !o.paper_eq.is_empty() {
                s.push_str(&format!("  [{}]", o.paper_eq));
            }
            if let Some(w) = &o.witness {
                s.push_str(&format!("  {w}"));
            }
            if with_times {
                s.push_str(&format!("  ({} ms)", o.millis));
            }
            s.push('\n');
        }
        let failed = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.checks).expect("report serializes")
    }
}
