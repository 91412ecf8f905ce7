//! Result files of a sweep.
//!
//! Everything except `timings.csv` is a pure function of the config, so a
//! rerun reproduces those files byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::aggregate::{largest_subgraph_histogram, summarize};
use crate::config::BenchRunConfig;
use crate::error::{BenchError, Result};
use crate::run::BenchOutput;

pub const RECORDS_CSV: &str = "records.csv";
pub const RECORDS_JSON: &str = "records.json";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const HISTOGRAM_CSV: &str = "histogram.csv";
pub const TIMINGS_CSV: &str = "timings.csv";
pub const CONFIG_JSON: &str = "config.json";

/// Files whose content is fixed by the config.
pub const DETERMINISTIC_FILES: [&str; 5] = [RECORDS_CSV, RECORDS_JSON, SUMMARY_CSV, HISTOGRAM_CSV, CONFIG_JSON];

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

#[derive(Serialize)]
struct HistogramRow {
    size: usize,
    count: usize,
}

/// Writes all result files into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, cfg: &BenchRunConfig, out: &BenchOutput) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let path = |name: &str| dir.join(name);

    write_csv(&path(RECORDS_CSV), &out.records)?;
    write_csv(&path(SUMMARY_CSV), &summarize(&out.records))?;
    let hist: Vec<HistogramRow> = largest_subgraph_histogram(&out.records)
        .into_iter()
        .map(|(size, count)| HistogramRow { size, count })
        .collect();
    write_csv(&path(HISTOGRAM_CSV), &hist)?;
    write_csv(&path(TIMINGS_CSV), &out.timings)?;

    // the echo leaves out settings that cannot change any result
    let echo = BenchRunConfig {
        output: PathBuf::new(),
        threads: None,
        ..cfg.clone()
    };
    for (name, text) in [
        (RECORDS_JSON, serde_json::to_string_pretty(&out.records)?),
        (CONFIG_JSON, serde_json::to_string_pretty(&echo)?),
    ] {
        let p = path(name);
        fs::write(&p, text + "\n").map_err(|e| BenchError::io(&p, e))?;
    }
    Ok([DETERMINISTIC_FILES.as_slice(), &[TIMINGS_CSV]]
        .concat()
        .into_iter()
        .map(path)
        .collect())
}
