use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A condition the tool deliberately does not check.
    Unverified,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Unverified => "UNVERIFIED",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub certificate: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub unverified: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, checks: Vec::new(), summary: Summary::default() }
    }

    /// Records a check; the wall time runs from `start` to now.
    pub fn push(&mut self, name: impl Into<String>, status: Status, certificate: Value, start: Instant) {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.checks.push(Check {
            name: name.into(),
            status,
            certificate,
            wall_time_ms: Some((ms * 1e3).round() / 1e3),
        });
    }

    /// Recomputes the summary; drops wall times when `timing` is false.
    pub fn finish(&mut self, timing: bool) {
        let mut s = Summary::default();
        for c in &mut self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Unverified => s.unverified += 1,
            }
            if !timing {
                c.wall_time_ms = None;
            }
        }
        self.summary = s;
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check; certificates are abbreviated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.command.get("name").and_then(Value::as_str).unwrap_or("?");
        out.push_str(&format!("dwork {name}\n"));
        for c in &self.checks {
            let mut cert = c.certificate.to_string();
            if cert.len() > 160 {
                let cut = (0..=157).rev().find(|&i| cert.is_char_boundary(i)).unwrap_or(0);
                cert.truncate(cut);
                cert.push_str("...");
            }
            match c.wall_time_ms {
                Some(ms) => out.push_str(&format!("{:<10} {} ({ms:.1} ms) {cert}\n", c.status.label(), c.name)),
                None => out.push_str(&format!("{:<10} {} {cert}\n", c.status.label(), c.name)),
            }
        }
        let s = &self.summary;
        out.push_str(&format!("pass {} fail {} skipped {} unverified {}\n", s.pass, s.fail, s.skipped, s.unverified));
        out
    }
}
