use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use alpp::answer::Answer;
use alpp::format::parse_instance;
use alpp::instance::validate_packing;
use alpp::solve::{solve, SolveConfig, Strategy};

use crate::with_timeout;

/// One strategy run on one instance.
#[derive(Debug, Clone)]
pub struct Row {
    pub instance: String,
    pub strategy: Strategy,
    /// `YES`, `NO`, `NO-probable`, `TIMEOUT`, `ERROR` or `BAD-CERT`.
    pub answer: String,
    pub elapsed_ms: Option<f64>,
    /// Agreement with the oracle's answer on the same instance, when the oracle finished.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub rows: Vec<Row>,
    pub strategies: Vec<Strategy>,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

fn agreement(answer: &str, oracle: &str) -> bool {
    matches!(
        (answer, oracle),
        ("YES", "YES") | ("NO" | "NO-probable", "NO")
    )
}

pub fn run(
    dir: &Path,
    strategies: &[Strategy],
    seed: u64,
    trials: Option<usize>,
    budget: Duration,
) -> Result<Table, String> {
    let mut table = Table {
        rows: Vec::new(),
        strategies: strategies.to_vec(),
    };
    for file in corpus_files(dir)? {
        let name = file
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
        let inst = parse_instance(&text).map_err(|e| format!("{}: {e}", file.display()))?;
        let mut rows: Vec<Row> = Vec::new();
        for &strategy in strategies {
            let cfg = SolveConfig {
                strategy,
                seed,
                trials,
                ..SolveConfig::default()
            };
            let worker = inst.clone();
            let outcome = with_timeout(Some(budget), move || {
                solve(&worker, &cfg).map(|r| {
                    let cert_ok = r
                        .answer
                        .packing()
                        .is_none_or(|p| validate_packing(&worker, p).is_ok());
                    (r, cert_ok)
                })
            });
            let (answer, elapsed_ms) = match outcome {
                None => ("TIMEOUT".to_string(), None),
                Some(Err(_)) => ("ERROR".to_string(), None),
                Some(Ok((r, cert_ok))) => {
                    let label = match (&r.answer, cert_ok) {
                        (Answer::Yes(_), false) => "BAD-CERT".to_string(),
                        (a, _) => a.label().to_string(),
                    };
                    (label, Some(r.elapsed.as_secs_f64() * 1000.0))
                }
            };
            rows.push(Row {
                instance: name.clone(),
                strategy,
                answer,
                elapsed_ms,
                agrees: None,
            });
        }
        let oracle = rows
            .iter()
            .find(|r| r.strategy == Strategy::Oracle && (r.answer == "YES" || r.answer == "NO"))
            .map(|r| r.answer.clone());
        if let Some(o) = oracle {
            for r in rows.iter_mut() {
                r.agrees = Some(agreement(&r.answer, &o));
            }
        }
        table.rows.extend(rows);
    }
    Ok(table)
}

fn cell_ms(ms: Option<f64>) -> String {
    ms.map_or_else(|| "-".into(), |m| format!("{m:.3}"))
}

fn cell_agree(a: Option<bool>) -> &'static str {
    match a {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

impl Table {
    pub fn csv(&self) -> String {
        let mut out = String::from("instance,strategy,answer,elapsed_ms,agrees_with_oracle\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.instance,
                r.strategy,
                r.answer,
                cell_ms(r.elapsed_ms),
                cell_agree(r.agrees)
            );
        }
        out
    }

    pub fn text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.instance.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let mut out = format!(
            "{:<width$}  {:<9}  {:<11}  {:>10}  agrees\n",
            "instance", "strategy", "answer", "ms"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<width$}  {:<9}  {:<11}  {:>10}  {}",
                r.instance,
                r.strategy.name(),
                r.answer,
                cell_ms(r.elapsed_ms),
                cell_agree(r.agrees)
            );
        }
        for &s in &self.strategies {
            let scored: Vec<bool> = self
                .rows
                .iter()
                .filter(|r| r.strategy == s)
                .filter_map(|r| r.agrees)
                .collect();
            if !scored.is_empty() {
                let hits = scored.iter().filter(|&&a| a).count();
                let _ = writeln!(
                    out,
                    "agreement {}: {hits}/{} ({:.0}%)",
                    s.name(),
                    scored.len(),
                    100.0 * hits as f64 / scored.len() as f64
                );
            }
        }
        out
    }
}
