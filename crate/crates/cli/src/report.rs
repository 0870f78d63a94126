use alpp::format::serialize_certificate;
use alpp::instance::ValidationReport;
use alpp::solve::{SolveConfig, SolveReport};
use serde::Serialize;

use crate::Format;

/// JSON shape shared by every strategy.
#[derive(Serialize)]
struct SolveJson<'a> {
    answer: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<Vec<usize>>>,
    strategy: &'a str,
    seed: u64,
    elapsed_ms: f64,
    trace_len: usize,
}

pub fn solve(rep: &SolveReport, cfg: &SolveConfig, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("{}\n", rep.answer.label());
            if let Some(p) = rep.answer.packing() {
                out.push_str(&serialize_certificate(p));
            }
            out
        }
        Format::Json => {
            let json = SolveJson {
                answer: rep.answer.label(),
                certificate: rep.answer.packing().map(|p| {
                    p.paths
                        .iter()
                        .map(|q| q.vertices().iter().map(|v| v + 1).collect())
                        .collect()
                }),
                strategy: rep.strategy.name(),
                seed: cfg.seed,
                elapsed_ms: rep.elapsed.as_secs_f64() * 1000.0,
                trace_len: rep.trace_len,
            };
            format!(
                "{}\n",
                serde_json::to_string(&json).expect("plain data serializes")
            )
        }
    }
}

pub fn timeout(cfg: &SolveConfig, format: Format) -> String {
    match format {
        Format::Text => "TIMEOUT\n".into(),
        Format::Json => {
            let json = SolveJson {
                answer: "TIMEOUT",
                certificate: None,
                strategy: cfg.strategy.name(),
                seed: cfg.seed,
                elapsed_ms: f64::NAN,
                trace_len: 0,
            };
            format!(
                "{}\n",
                serde_json::to_string(&json).expect("plain data serializes")
            )
        }
    }
}

#[derive(Serialize)]
struct VerifyJson {
    valid: bool,
    violations: Vec<String>,
}

pub fn verify(report: &ValidationReport, format: Format) -> String {
    let violations: Vec<String> = report.violations.iter().map(|v| v.describe(1)).collect();
    match format {
        Format::Text => {
            if report.is_ok() {
                "VALID\n".into()
            } else {
                let mut out = String::from("INVALID\n");
                for v in violations {
                    out.push_str(&format!("c {v}\n"));
                }
                out
            }
        }
        Format::Json => {
            let json = VerifyJson {
                valid: report.is_ok(),
                violations,
            };
            format!(
                "{}\n",
                serde_json::to_string(&json).expect("plain data serializes")
            )
        }
    }
}
