use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value as Json};

use super::Diagnostic;
use crate::verifier::Report;

/// Version of the JSON report schema.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

/// Renders reports in report order. Elapsed times are included only when
/// `timings` is set, so that output is byte-identical across runs otherwise.
pub fn render_report(reports: &[Report], format: Format, timings: bool) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let s = &r.stats;
                write!(out, "{} {} instances={} candidates={} sampled={}", r.axiom_id, r.verdict, s.instances, s.candidates, s.sampled)
                    .unwrap();
                if timings {
                    write!(out, " elapsed={}ms", s.elapsed.as_millis()).unwrap();
                }
                write!(out, " | {}", r.instance).unwrap();
                if let Some(w) = &r.witness {
                    write!(out, " | witness: {w}").unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let reports: Vec<Json> = reports.iter().map(|r| report_json(r, timings)).collect();
            let mut text = serde_json::to_string_pretty(&json!({ "version": SCHEMA_VERSION, "reports": reports }))
                .expect("reports serialize");
            text.push('\n');
            text
        }
    }
}

fn report_json(r: &Report, timings: bool) -> Json {
    let mut stats = json!({
        "instances": r.stats.instances,
        "candidates": r.stats.candidates,
        "sampled": r.stats.sampled,
    });
    if timings {
        stats["elapsed_ms"] = json!(r.stats.elapsed.as_millis() as u64);
    }
    let mut obj = json!({
        "axiom_id": r.axiom_id,
        "instance": r.instance,
        "verdict": r.verdict,
        "stats": stats,
    });
    if let Some(w) = &r.witness {
        obj["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    obj
}

/// One diagnostic per line group, prefixed with `origin` (typically the script path).
pub fn render_diagnostics(diags: &[Diagnostic], origin: &str) -> String {
    let mut out = String::new();
    for d in diags {
        writeln!(out, "{origin}:{d}").unwrap();
    }
    out
}
