//! Versioned run report, rendered as JSON or as aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ncchar::charfunc::PsdVerdict;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "ncchar";

/// Tolerances in force for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportTolerances {
    /// PSD slack per matrix dimension.
    pub psd_scale: f64,
    /// Identity checks (reconstruction, purity, integrals).
    pub identity: f64,
    /// Round-trip deviation.
    pub roundtrip: f64,
    /// `|φ(e) − 1|`.
    pub normalization: f64,
}

/// SHA-256 over a canonical `key=value` listing of the inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub description: String,
    pub sha256: String,
}

#[derive(Debug, Default)]
pub struct DigestBuilder {
    hasher: Sha256,
    parts: Vec<String>,
}

impl DigestBuilder {
    pub fn add(&mut self, key: &str, value: &str) -> &mut Self {
        self.hasher.update(key.as_bytes());
        self.hasher.update(b"=");
        self.hasher.update(value.len().to_le_bytes());
        self.hasher.update(value.as_bytes());
        self.hasher.update(b"\n");
        self
    }

    /// Adds `value` to the digest and a short form to the description.
    pub fn describe(&mut self, key: &str, value: &str, short: &str) -> &mut Self {
        self.parts.push(format!("{key}={short}"));
        self.add(key, value)
    }

    pub fn finish(self) -> InputDigest {
        InputDigest {
            description: self.parts.join(" "),
            sha256: hex::encode(self.hasher.finalize()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: PsdVerdict,
}

/// A measured residual with the tolerance it was judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub inputs: InputDigest,
    pub verdicts: Vec<NamedVerdict>,
    pub deviations: Vec<Deviation>,
    /// Boolean checks that are not residuals, e.g. `agreement` or `index_identity_exact`.
    pub checks: BTreeMap<String, bool>,
    /// Informational labels, e.g. `agreement = AGREE`.
    pub flags: BTreeMap<String, String>,
    /// Command-specific payload (matrices, spectra).
    pub data: serde_json::Value,
    pub tolerances: ReportTolerances,
    pub timing_ms: f64,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, inputs: InputDigest, tolerances: ReportTolerances) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool: TOOL.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            inputs,
            verdicts: Vec::new(),
            deviations: Vec::new(),
            checks: BTreeMap::new(),
            flags: BTreeMap::new(),
            data: serde_json::Value::Object(Default::default()),
            tolerances,
            timing_ms: 0.0,
            passed: true,
        }
    }

    pub fn verdict(&mut self, name: &str, verdict: PsdVerdict) {
        self.verdicts.push(NamedVerdict {
            name: name.into(),
            verdict,
        });
    }

    /// Records `value ≤ tolerance` as a pass/fail residual.
    pub fn deviation(&mut self, name: &str, value: f64, tolerance: f64) -> bool {
        let pass = value <= tolerance;
        self.passed &= pass;
        self.deviations.push(Deviation {
            name: name.into(),
            value,
            tolerance,
            pass,
        });
        pass
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.passed &= ok;
        self.checks.insert(name.into(), ok);
    }

    pub fn flag(&mut self, name: &str, value: impl Into<String>) {
        self.flags.insert(name.into(), value.into());
    }

    pub fn set_data(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable payload");
        if let serde_json::Value::Object(map) = &mut self.data {
            map.insert(key.into(), v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} ({}) inputs {} sha256 {}",
            self.tool,
            self.command,
            self.tool_version,
            self.inputs.description,
            &self.inputs.sha256[..16]
        );
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "  verdict    {:<32} {:<18} min eig {:>+.6e}  tol {:.1e}{}",
                v.name,
                crate::commands::qualified(v.verdict, "PSD", "NOT-PSD"),
                v.verdict.min_eigenvalue,
                v.verdict.tolerance,
                if v.verdict.necessary_only { "  (necessary only)" } else { "" }
            );
        }
        for d in &self.deviations {
            let _ = writeln!(
                out,
                "  deviation  {:<32} {:.3e} <= {:.1e}  {}",
                d.name,
                d.value,
                d.tolerance,
                if d.pass { "ok" } else { "FAIL" }
            );
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "  check      {name:<32} {}", if *ok { "ok" } else { "FAIL" });
        }
        for (name, value) in &self.flags {
            let _ = writeln!(out, "  flag       {name:<32} {value}");
        }
        let _ = writeln!(out, "  result     {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
