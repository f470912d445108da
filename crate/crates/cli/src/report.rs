use std::fmt::Write as _;

use schwarz_gap_core::classical::{sort_by_tightness, BoundReport, Family};
use schwarz_gap_core::GapReport;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";

/// Everything printed on standard output by the data commands and `fuzz`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_report: Option<GapReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_params: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<serde_json::Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, input: Option<&[u8]>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            input_digest: input.map(digest),
            gap: None,
            gap_report: None,
            certificates: Vec::new(),
            fitted_params: None,
            fuzz: None,
            warnings: Vec::new(),
        }
    }

    pub fn set_certificates(&mut self, mut certs: Vec<BoundReport>) {
        sort_by_tightness(&mut certs);
        for c in &certs {
            if c.errata_applied {
                self.warnings.push(errata_notice(c.family).into());
            }
        }
        self.certificates = certs;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.gap_report {
            let _ = writeln!(out, "gap        {}", g.gap);
            let _ = writeln!(out, "|x|^2      {}", g.norm_x_sq);
            let _ = writeln!(out, "|y|^2      {}", g.norm_y_sq);
            let _ = writeln!(out, "<x,y>      {} {:+}i", g.inner_xy.re, g.inner_xy.im);
        } else if let Some(g) = self.gap {
            let _ = writeln!(out, "gap        {g}");
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(
                out,
                "{:<20} {:>5} {:>14} {:>14} {:>10}",
                "family", "hyp", "lhs", "rhs", "tightness"
            );
            for c in &self.certificates {
                let _ = writeln!(
                    out,
                    "{:<20} {:>5} {:>14.7e} {:>14.7e} {:>10.6}{}",
                    c.family.name(),
                    if c.hypothesis_ok { "ok" } else { "no" },
                    c.lhs,
                    c.rhs,
                    c.tightness,
                    if c.errata_applied { "  *" } else { "" }
                );
            }
        }
        if let Some(p) = &self.fitted_params {
            let _ = writeln!(out, "params     {p}");
        }
        if let Some(f) = &self.fuzz {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(f).unwrap_or_default());
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn errata_notice(family: Family) -> &'static str {
    match family {
        Family::GenDiazMetcalf => {
            "gen-diaz-metcalf: (m, M) bound b/a, not a/b as often printed; the printed orientation is false"
        }
        Family::KlamkinMclenaghan => {
            "klamkin-mclenaghan: closing factor is sum w b^2; the often printed sum w a^2 is false"
        }
        _ => "corrected form evaluated",
    }
}
