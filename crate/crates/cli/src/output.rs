//! The report document and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use coring_core::exactla::Mat;
use coring_core::frobenius::Budget;
use coring_core::report::{CheckItem, Report, Status, Witness};

#[derive(Clone, Debug, Serialize)]
pub struct WitnessDoc {
    pub label: String,
    pub rows: Vec<Vec<String>>,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            label: w.label.clone(),
            rows: w.rows.clone(),
        }
    }
}

impl WitnessDoc {
    pub fn matrix(label: impl Into<String>, m: &Mat) -> Self {
        (&Witness::matrix(label, m)).into()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessDoc>,
}

impl From<&CheckItem> for CheckDoc {
    fn from(c: &CheckItem) -> Self {
        CheckDoc {
            name: c.name.clone(),
            status: c.status.to_string(),
            detail: c.detail.clone(),
            witnesses: c.witnesses.iter().map(Into::into).collect(),
        }
    }
}

/// The outcome for one object.
#[derive(Clone, Debug, Serialize)]
pub struct ResultDoc {
    pub object: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub tags: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessDoc>,
    #[serde(skip)]
    pub state: Status,
}

impl ResultDoc {
    pub fn new(object: impl Into<String>) -> Self {
        ResultDoc {
            object: object.into(),
            status: Status::Pass.to_string(),
            verdict: None,
            reason: None,
            tags: Vec::new(),
            values: BTreeMap::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            state: Status::Pass,
        }
    }

    /// Appends the items of `r`; the status becomes the worse of the two.
    pub fn absorb(&mut self, r: &Report) {
        for t in &r.tags {
            if !self.tags.contains(t) {
                self.tags.push(t.clone());
            }
        }
        self.checks.extend(r.items.iter().map(Into::into));
        self.worsen(r.status());
    }

    /// Appends the items of `r` without letting them decide the status.
    pub fn log(&mut self, r: &Report) {
        let before = self.state;
        self.absorb(r);
        self.set_status(before);
    }

    pub fn worsen(&mut self, s: Status) {
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::Undecided => 1,
            Status::Fail => 2,
        };
        if rank(s) > rank(self.state) {
            self.set_status(s);
        }
    }

    pub fn set_status(&mut self, s: Status) {
        self.state = s;
        self.status = s.to_string();
    }

    pub fn value(&mut self, key: &str, v: impl Into<serde_json::Value>) {
        self.values.insert(key.to_string(), v.into());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetDoc {
    pub height: u32,
    pub grid: u64,
    pub candidates: u64,
}

impl From<&Budget> for BudgetDoc {
    fn from(b: &Budget) -> Self {
        BudgetDoc {
            height: b.height,
            grid: b.grid,
            candidates: b.candidates,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub criterion: String,
    pub field: String,
    pub budget: BudgetDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Vec<ResultDoc>,
    pub status: String,
    pub exit_code: i32,
}

pub fn exit_code(results: &[ResultDoc]) -> (Status, i32) {
    if results.iter().any(|r| r.state == Status::Fail) {
        (Status::Fail, 1)
    } else if results.iter().any(|r| r.state == Status::Undecided) {
        (Status::Undecided, 2)
    } else {
        (Status::Pass, 0)
    }
}

fn write_rows(out: &mut String, indent: &str, w: &WitnessDoc) {
    let rows: Vec<String> = w
        .rows
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    let _ = writeln!(out, "{indent}{} = {}", w.label, rows.join(" "));
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} over {} (height {}, grid {}, candidates {})",
        doc.command, doc.field, doc.budget.height, doc.budget.grid, doc.budget.candidates
    );
    if let Some(d) = &doc.description {
        let _ = writeln!(out, "{d}");
    }
    let _ = writeln!(out, "criterion: {}", doc.criterion);
    for r in &doc.results {
        let _ = write!(out, "\n== {}: {}", r.object, r.status);
        if let Some(v) = &r.verdict {
            let _ = write!(out, ", verdict {v}");
        }
        let _ = writeln!(out);
        if let Some(reason) = &r.reason {
            let _ = writeln!(out, "   reason: {reason}");
        }
        for t in &r.tags {
            let _ = writeln!(out, "   note: {t}");
        }
        for (k, v) in &r.values {
            let _ = writeln!(out, "   {k} = {v}");
        }
        for c in &r.checks {
            let _ = write!(out, "   {:<9} {}", c.status, c.name);
            if !c.detail.is_empty() {
                let _ = write!(out, " ({})", c.detail);
            }
            let _ = writeln!(out);
            for w in &c.witnesses {
                write_rows(&mut out, "             ", w);
            }
        }
        for w in &r.witnesses {
            write_rows(&mut out, "   witness ", w);
        }
    }
    let _ = writeln!(out, "\nstatus: {} (exit {})", doc.status, doc.exit_code);
    out
}
