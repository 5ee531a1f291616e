use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::experiment::AggregateReport;
use super::trial::TrialRecord;
use crate::error::{Error, Result};
use crate::io::write_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Structured,
}

pub fn csv_header(d: u32) -> String {
    let mut cols: Vec<String> = ["n", "d", "alpha", "seed", "r"].iter().map(|s| s.to_string()).collect();
    cols.extend((0..=d).map(|j| format!("N_{j}")));
    cols.extend((0..=d).map(|j| format!("mu_{j}")));
    cols.extend(
        [
            "giant_size",
            "two_core_size",
            "longest_deg2_run",
            "max_tree_size",
            "isolated_cycles",
            "connected",
            "beta_exact",
            "beta_lower",
            "beta_upper",
            "lambda2",
            "diameter",
            "runtime_ms",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    cols.join(",")
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn csv_row(n: usize, d: u32, alpha: f64, rec: &TrialRecord) -> String {
    let mut row = format!("{n},{d},{alpha},{},{}", rec.seed, rec.r);
    for j in 0..=d as usize {
        write!(row, ",{}", rec.census.get(j).copied().unwrap_or(0)).unwrap();
    }
    for j in 0..=d as usize {
        write!(row, ",{}", opt(rec.mu.get(j))).unwrap();
    }
    let cert = rec.expansion.as_ref();
    write!(
        row,
        ",{},{},{},{},{},{},{},{},{},{},{},{}",
        rec.giant_size,
        rec.two_core_size,
        rec.longest_deg2_run,
        rec.max_isolated_tree_size,
        rec.isolated_cycle_count,
        rec.connected,
        opt(cert.and_then(|c| c.exact_beta)),
        opt(cert.and_then(|c| c.lower_bound)),
        opt(cert.and_then(|c| c.upper_bound)),
        opt(cert.and_then(|c| c.lambda2)),
        opt(cert.and_then(|c| c.diameter)),
        opt(rec.runtime_ms),
    )
    .unwrap();
    row
}

/// One header line plus one line per trial. Missing values are empty.
pub fn to_csv(report: &AggregateReport) -> String {
    let cfg = &report.config;
    let mut out = csv_header(cfg.d);
    out.push('\n');
    for rec in &report.records {
        out.push_str(&csv_row(cfg.n, cfg.d, cfg.effective_alpha(), rec));
        out.push('\n');
    }
    out
}

pub fn to_json(report: &AggregateReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports hold finite plain data");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<AggregateReport> {
    Ok(serde_json::from_str(text)?)
}

/// Writes the report into `dir` as `trials.csv` and/or `report.json`,
/// unless the config names other paths. Returns the paths written.
pub fn emit_report(report: &AggregateReport, dir: &Path, formats: &[ReportFormat]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for format in formats {
        let (path, contents) = match format {
            ReportFormat::Csv => {
                (report.config.csv_path.clone().unwrap_or_else(|| dir.join("trials.csv")), to_csv(report))
            }
            ReportFormat::Structured => {
                (report.config.json_path.clone().unwrap_or_else(|| dir.join("report.json")), to_json(report))
            }
        };
        write_file(&path, &contents)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{aggregate, run_experiment, ExperimentConfig};

    #[test]
    fn header_columns() {
        assert_eq!(
            csv_header(3),
            "n,d,alpha,seed,r,N_0,N_1,N_2,N_3,mu_0,mu_1,mu_2,mu_3,giant_size,two_core_size,\
             longest_deg2_run,max_tree_size,isolated_cycles,connected,beta_exact,beta_lower,\
             beta_upper,lambda2,diameter,runtime_ms"
        );
    }

    #[test]
    fn empty_and_single() {
        let cfg = ExperimentConfig::new(200, 3, 0.5, 1, 0);
        let empty = aggregate(&cfg, Vec::new(), Vec::new()).unwrap();
        assert_eq!(to_csv(&empty).lines().count(), 1);
        let one = run_experiment(&cfg).unwrap();
        let csv = to_csv(&one);
        assert_eq!(csv.lines().count(), 2);
        let cells: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(cells.len(), csv_header(3).split(',').count());
        assert_eq!(cells[0], "200");
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = ExperimentConfig::new(14, 3, 0.6, 3, 8);
        cfg.exhaustive_expansion = true;
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(from_json(&to_json(&rep)).unwrap(), rep);
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let cfg = ExperimentConfig::new(200, 3, 0.5, 1, 0);
        let rep = aggregate(&cfg, Vec::new(), Vec::new()).unwrap();
        let err = emit_report(&rep, Path::new("/proc/no/such/dir"), &[ReportFormat::Csv]).unwrap_err();
        assert!(err.to_string().contains("/proc/no/such/dir"));
    }
}
