//! Per-cell summaries and the largest-subgraph histogram.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Backend;
use crate::run::BenchRecord;

/// Mean and standard deviation of the mean for one (n, p, backend) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub p: f64,
    pub backend: Backend,
    pub runs: usize,
    pub failures: usize,
    pub mean_gap: f64,
    pub sem_gap: f64,
    pub mean_weight: f64,
    pub sem_weight: f64,
}

/// Sample mean and standard deviation of the mean (n − 1 denominator; 0 for
/// a single value).
pub fn mean_and_sem(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Failed records count toward `failures` and are left out of the means.
/// Rows come out in first-appearance order of the cells.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut order: Vec<(usize, u64, Backend)> = Vec::new();
    let mut cells: BTreeMap<(usize, u64, Backend), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.n, r.p.to_bits(), r.backend);
        if !cells.contains_key(&key) {
            order.push(key);
        }
        cells.entry(key).or_default().push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rs = &cells[&key];
            let gaps: Vec<f64> = rs.iter().filter_map(|r| r.gap).collect();
            let weights: Vec<f64> = rs.iter().filter_map(|r| r.weight).collect();
            let (mean_gap, sem_gap) = mean_and_sem(&gaps);
            let (mean_weight, sem_weight) = mean_and_sem(&weights);
            SummaryRow {
                n: key.0,
                p: f64::from_bits(key.1),
                backend: key.2,
                runs: rs.len(),
                failures: rs.iter().filter(|r| r.failed()).count(),
                mean_gap,
                sem_gap,
                mean_weight,
                sem_weight,
            }
        })
        .collect()
}

/// Size of the largest embedded subgraph of each successful beam run,
/// counted per size.
pub fn largest_subgraph_histogram(records: &[BenchRecord]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for size in records.iter().filter(|r| r.backend.is_beam()).filter_map(|r| r.largest_subgraph) {
        *h.entry(size).or_insert(0) += 1;
    }
    h
}
