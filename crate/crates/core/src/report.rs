//! Check reports shared by every module.

use std::fmt;

use crate::exactla::{format_scalar, Mat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
        })
    }
}

/// A named matrix or vector attached to a check, rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub rows: Vec<Vec<String>>,
}

impl Witness {
    pub fn matrix(label: impl Into<String>, m: &Mat) -> Self {
        Witness {
            label: label.into(),
            rows: m.to_string_rows(),
        }
    }

    pub fn vector(label: impl Into<String>, v: &[Scalar]) -> Self {
        Witness {
            label: label.into(),
            rows: vec![v.iter().map(format_scalar).collect()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub tags: Vec<String>,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn tag(&mut self, tag: impl Into<String>) -> &mut Self {
        let t = tag.into();
        if !self.tags.contains(&t) {
            self.tags.push(t);
        }
        self
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, Status::Pass, String::new(), Vec::new());
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>, w: Vec<Witness>) {
        self.record(name, Status::Fail, detail.into(), w);
    }

    pub fn undecided(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.record(name, Status::Undecided, detail.into(), Vec::new());
    }

    pub fn record(&mut self, name: impl Into<String>, status: Status, detail: String, w: Vec<Witness>) {
        self.items.push(CheckItem {
            name: name.into(),
            status,
            detail,
            witnesses: w,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail, Vec::new());
        }
        ok
    }

    /// Records whether `lhs = rhs`. On failure the witness is the first basis
    /// vector on which the two maps differ, with both images.
    pub fn check_eq(&mut self, name: impl Into<String>, lhs: &Mat, rhs: &Mat) -> bool {
        let name = name.into();
        if lhs.shape() != rhs.shape() {
            let detail = format!(
                "shape mismatch: {}x{} vs {}x{}",
                lhs.rows(),
                lhs.cols(),
                rhs.rows(),
                rhs.cols()
            );
            self.fail(name, detail, Vec::new());
            return false;
        }
        match lhs.first_difference(rhs) {
            None => {
                self.pass(name);
                true
            }
            Some((_, c)) => {
                let detail = format!("sides differ on basis vector {c}");
                let w = vec![
                    Witness::vector("lhs", &lhs.col(c)),
                    Witness::vector("rhs", &rhs.col(c)),
                ];
                self.fail(name, detail, w);
                false
            }
        }
    }

    /// Records that `m` vanishes.
    pub fn check_zero(&mut self, name: impl Into<String>, m: &Mat) -> bool {
        let z = Mat::zeros(m.field(), m.rows(), m.cols());
        self.check_eq(name, m, &z)
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for t in other.tags {
            self.tag(t);
        }
        for mut item in other.items {
            if !prefix.is_empty() {
                item.name = format!("{prefix}: {}", item.name);
            }
            self.items.push(item);
        }
    }

    pub fn status(&self) -> Status {
        if self.items.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else if self.items.iter().any(|i| i.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    pub fn all_pass(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.title)?;
        if !self.tags.is_empty() {
            write!(f, " [{}]", self.tags.join(", "))?;
        }
        writeln!(f)?;
        for item in &self.items {
            write!(f, "  {:<9} {}", item.status, item.name)?;
            if !item.detail.is_empty() {
                write!(f, " ({})", item.detail)?;
            }
            writeln!(f)?;
            for w in &item.witnesses {
                let rows: Vec<String> = w.rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                writeln!(f, "            {} = {}", w.label, rows.join(" "))?;
            }
        }
        Ok(())
    }
}
