//! Which layout produces the largest GLS subgraphs.

use mwis_core::gls::{gls_map, GlsOptions};
use mwis_core::{seed, LatticeLayout, WeightedGraph};
use rand::Rng;
use serde::Serialize;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayoutScore {
    pub label: String,
    /// Mean over graphs of this layout's share of the top-decile subgraphs.
    pub fraction: f64,
    /// Top-decile subgraphs attributed to this layout, summed over graphs.
    pub top_count: usize,
    pub max_size: usize,
}

/// For every graph, maps `samples` start vertices onto every layout (the
/// same start vertices for each layout), pools the subgraph sizes, and
/// credits each layout with its share of the top decile. Sizes tied with
/// the decile cutoff are all included.
pub fn lattice_scoring(
    graphs: &[WeightedGraph],
    layouts: &[(String, LatticeLayout)],
    samples: usize,
    base_seed: u64,
    options: &GlsOptions,
) -> Result<Vec<LayoutScore>> {
    if layouts.is_empty() || samples == 0 {
        return Err(BenchError::Config("need at least one layout and one sample".into()));
    }
    let mut fraction = vec![0.0; layouts.len()];
    let mut top_count = vec![0usize; layouts.len()];
    let mut max_size = vec![0usize; layouts.len()];
    let mut scored_graphs = 0usize;
    for (gi, g) in graphs.iter().enumerate() {
        if g.is_empty() {
            continue;
        }
        let mut rng = seed::rng(seed::mix(base_seed, &[gi as u64]));
        let starts: Vec<usize> = (0..samples).map(|_| rng.gen_range(0..g.vertex_count())).collect();
        let mut pool: Vec<(usize, usize)> = Vec::with_capacity(samples * layouts.len());
        for (li, (_, layout)) in layouts.iter().enumerate() {
            for &s in &starts {
                let size = gls_map(g, layout, s, options.clone())?.len();
                max_size[li] = max_size[li].max(size);
                pool.push((size, li));
            }
        }
        let mut sizes: Vec<usize> = pool.iter().map(|&(s, _)| s).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let keep = (sizes.len() as f64 * 0.1).ceil().max(1.0) as usize;
        let cutoff = sizes[keep - 1];
        let top: Vec<usize> = pool.iter().filter(|&&(s, _)| s >= cutoff).map(|&(_, li)| li).collect();
        for &li in &top {
            top_count[li] += 1;
            fraction[li] += 1.0 / top.len() as f64;
        }
        scored_graphs += 1;
    }
    if scored_graphs == 0 {
        return Err(BenchError::Config("no nonempty graphs to score".into()));
    }
    Ok(layouts
        .iter()
        .enumerate()
        .map(|(li, (label, _))| LayoutScore {
            label: label.clone(),
            fraction: fraction[li] / scored_graphs as f64,
            top_count: top_count[li],
            max_size: max_size[li],
        })
        .collect())
}
