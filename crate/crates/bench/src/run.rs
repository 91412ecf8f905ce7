//! The benchmark sweep.

use std::time::Instant;

use mwis_core::graph::{erdos_renyi, optimality_gap, weights_equal};
use mwis_core::subsolvers::{exact_mwis, greedy_mis, simulated_annealing_mwis, ExactParams, SubSolverRequest};
use mwis_core::{seed, solve_mwis, VertexSet, WeightedGraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Backend, BenchRunConfig};
use crate::error::{BenchError, Result};

/// Where an instance's reference weight came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// The exact optimum.
    Exact,
    /// The best weight any backend found.
    BestOfBackends,
}

/// One backend on one instance. Wall-clock time lives in [`Timing`] so
/// that records are reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub backend: Backend,
    pub weight: Option<f64>,
    pub size: Option<usize>,
    pub gap: Option<f64>,
    pub best_known: f64,
    pub reference: Reference,
    pub largest_subgraph: Option<usize>,
    pub error: Option<String>,
}

impl BenchRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub instance: usize,
    pub backend: Backend,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOutput {
    pub records: Vec<BenchRecord>,
    pub timings: Vec<Timing>,
}

impl BenchOutput {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed()).count()
    }
}

/// One generated graph of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub id: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

/// Instances in sweep order: n outer, p middle, instance inner.
pub fn instances(cfg: &BenchRunConfig) -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        for &p in &cfg.p_values {
            for i in 0..cfg.instances {
                out.push(InstanceSpec {
                    id: out.len(),
                    n,
                    p,
                    seed: seed::mix(cfg.seed, &[n as u64, p.to_bits(), i as u64]),
                });
            }
        }
    }
    out
}

/// One backend's answer on one graph.
#[derive(Debug, Clone)]
pub struct Solved {
    pub set: VertexSet,
    /// Largest GLS subgraph of the winning branch, beam backends only.
    pub largest_subgraph: Option<usize>,
}

/// Runs `backend` on `g` with the parameter blocks of `cfg`.
pub fn solve_one(cfg: &BenchRunConfig, backend: Backend, g: &WeightedGraph, run_seed: u64) -> mwis_core::Result<Solved> {
    let plain = |set| Solved {
        set,
        largest_subgraph: None,
    };
    match backend {
        Backend::Greedy => Ok(plain(greedy_mis(g))),
        Backend::Exact => {
            let out = exact_mwis(&SubSolverRequest::new(g, 1, run_seed), &ExactParams::default())?;
            Ok(plain(out.solutions.into_iter().next().unwrap_or_else(VertexSet::empty)))
        }
        Backend::Sa => {
            let out = simulated_annealing_mwis(&SubSolverRequest::new(g, 1, run_seed), &cfg.sa)?;
            Ok(plain(out.solutions.into_iter().next().unwrap_or_else(VertexSet::empty)))
        }
        Backend::Beam(kind) => {
            let beam = mwis_core::BeamConfig {
                rng_seed: run_seed,
                ..cfg.beam_for(kind)
            };
            let run = solve_mwis(g, &beam)?;
            Ok(Solved {
                set: run.solution,
                largest_subgraph: Some(run.largest_subgraph),
            })
        }
    }
}

fn run_instance(cfg: &BenchRunConfig, spec: InstanceSpec) -> Result<(Vec<BenchRecord>, Vec<Timing>)> {
    let g = erdos_renyi(spec.n, spec.p, spec.seed)?;
    let mut results = Vec::with_capacity(cfg.backends.len());
    let mut timings = Vec::with_capacity(cfg.backends.len());
    for &backend in &cfg.backends {
        let clock = Instant::now();
        let r = solve_one(cfg, backend, &g, seed::mix(spec.seed, &[backend.salt()]));
        timings.push(Timing {
            instance: spec.id,
            backend,
            wall_ms: clock.elapsed().as_secs_f64() * 1e3,
        });
        results.push(r);
    }

    let mut best = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .map(|s| s.set.total_weight())
        .fold(0.0, f64::max);
    let mut reference = Reference::BestOfBackends;
    if spec.n <= cfg.exact_reference_max_n {
        let exact = match cfg.backends.iter().position(|&b| b == Backend::Exact) {
            Some(i) => results[i].as_ref().ok().map(|s| s.set.total_weight()),
            None => exact_mwis(&SubSolverRequest::new(&g, 1, 0), &ExactParams::default())
                .ok()
                .and_then(|o| o.best().map(VertexSet::total_weight)),
        };
        if let Some(w) = exact {
            best = best.max(w);
            reference = Reference::Exact;
        }
    }

    let records = cfg
        .backends
        .iter()
        .zip(results)
        .map(|(&backend, r)| {
            let mut rec = BenchRecord {
                instance: spec.id,
                n: spec.n,
                p: spec.p,
                seed: spec.seed,
                backend,
                weight: None,
                size: None,
                gap: None,
                best_known: best,
                reference,
                largest_subgraph: None,
                error: None,
            };
            match r {
                Ok(s) => {
                    let w = s.set.total_weight();
                    // snap float noise so that ties with the reference read as 0
                    let w_for_gap = if weights_equal(w, best) { best } else { w };
                    rec.gap = optimality_gap(w_for_gap, best).ok().map(|g| g.value());
                    rec.weight = Some(w);
                    rec.size = Some(s.set.len());
                    rec.largest_subgraph = s.largest_subgraph;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect();
    Ok((records, timings))
}

/// Runs every backend on every instance. Backend failures become flagged
/// records. Output order is the sweep order whatever the thread count.
pub fn run_benchmark(cfg: &BenchRunConfig) -> Result<BenchOutput> {
    cfg.validate()?;
    let specs = instances(cfg);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| BenchError::Config(format!("cannot build thread pool: {e}")))?;
    let per_instance: Vec<(Vec<BenchRecord>, Vec<Timing>)> =
        pool.install(|| specs.par_iter().map(|&s| run_instance(cfg, s)).collect::<Result<_>>())?;
    let mut out = BenchOutput::default();
    for (r, t) in per_instance {
        out.records.extend(r);
        out.timings.extend(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SubKind;

    fn small(backends: Vec<Backend>) -> BenchRunConfig {
        BenchRunConfig {
            n_values: vec![12],
            p_values: vec![0.4],
            instances: 1,
            backends,
            ..BenchRunConfig::default()
        }
    }

    #[test]
    fn single_greedy_backend_has_zero_gap() {
        let cfg = BenchRunConfig {
            exact_reference_max_n: 0,
            ..small(vec![Backend::Greedy])
        };
        let out = run_benchmark(&cfg).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].gap, Some(0.0));
        assert_eq!(out.records[0].reference, Reference::BestOfBackends);
    }

    #[test]
    fn exact_is_the_reference_on_small_graphs() {
        let out = run_benchmark(&small(vec![Backend::Greedy, Backend::Exact])).unwrap();
        let (g, e) = (&out.records[0], &out.records[1]);
        assert!(g.gap.unwrap() >= 0.0);
        assert_eq!(e.gap, Some(0.0));
        assert_eq!(g.best_known, e.weight.unwrap());
        assert_eq!(g.reference, Reference::Exact);
    }

    #[test]
    fn oversized_exact_is_flagged_not_fatal() {
        let cfg = BenchRunConfig {
            n_values: vec![45],
            ..small(vec![Backend::Exact, Backend::Greedy])
        };
        let out = run_benchmark(&cfg).unwrap();
        assert!(out.records[0].failed());
        assert_eq!(out.records[1].gap, Some(0.0));
        assert_eq!(out.failures(), 1);
    }

    #[test]
    fn instance_seeds_do_not_depend_on_backend_list() {
        let a = run_benchmark(&small(vec![Backend::Greedy, Backend::Beam(SubKind::Greedy)])).unwrap();
        let b = run_benchmark(&small(vec![Backend::Beam(SubKind::Greedy)])).unwrap();
        assert_eq!(a.records[1].weight, b.records[0].weight);
        assert_eq!(a.records[1].seed, b.records[0].seed);
    }
}
