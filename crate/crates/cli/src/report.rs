//! Command reports in human and machine-readable form.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A law or property was checked and holds.
    Pass,
    /// Something was computed; nothing was on trial.
    Computed,
    /// A law failed or a hypothesis is unmet.
    Fail,
    InputError,
    SizeGuard,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Computed => 0,
            Verdict::Fail => 1,
            Verdict::InputError => 2,
            Verdict::SizeGuard => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Computed => "OK",
            Verdict::Fail => "FAIL",
            Verdict::InputError => "INPUT ERROR",
            Verdict::SizeGuard => "SIZE GUARD",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        Input {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub verdict: Verdict,
    /// Human-readable lines, also carried in the JSON.
    pub summary: Vec<String>,
    pub data: Value,
    /// Wall time; shown in human output only.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: Verdict::Computed,
            summary: Vec::new(),
            data: Value::Object(Default::default()),
            elapsed: None,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("report data serializes");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered by key, so a round trip through
        // `Value` sorts struct fields too.
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.verdict.label());
        for l in &self.summary {
            let _ = writeln!(out, "  {l}");
        }
        for i in &self.inputs {
            let _ = writeln!(out, "  input {} sha256:{}", i.path, &i.sha256[..16]);
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "  elapsed {:.3} ms", t.as_secs_f64() * 1e3);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_timing_is_absent() {
        let mut r = Report::new("demo");
        r.set("zeta", 1);
        r.set("alpha", serde_json::json!({"y": 1, "b": 2}));
        r.elapsed = Some(Duration::from_millis(5));
        let j = r.to_json();
        assert!(!j.contains("elapsed"));
        let pos = |k: &str| j.find(k).unwrap();
        assert!(pos("\"command\"") < pos("\"data\""));
        assert!(pos("\"alpha\"") < pos("\"zeta\""));
        assert!(pos("\"b\"") < pos("\"y\""));
        assert!(r.to_human().contains("elapsed"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Computed.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::InputError.exit_code(), 2);
        assert_eq!(Verdict::SizeGuard.exit_code(), 3);
    }
}
