//! Simulated annealing on the MWIS penalty energy
//! `E(x) = -sum_i w_i x_i + alpha * sum_{(i,j) in E} x_i x_j`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{repair_to_maximal, top_distinct, BackendTag, SolverOutcome, SubSolverRequest};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SaParams {
    pub sweeps: usize,
    pub restarts: usize,
    /// Inverse temperature at the first and last sweep, ramped geometrically.
    pub beta_start: f64,
    pub beta_end: f64,
    /// Edge penalty; defaults to twice the largest weight.
    pub alpha: Option<f64>,
}

impl Default for SaParams {
    fn default() -> Self {
        Self {
            sweeps: 1000,
            restarts: 20,
            beta_start: 0.1,
            beta_end: 10.0,
            alpha: None,
        }
    }
}

/// Binary state with incrementally maintained energy.
#[derive(Debug, Clone)]
pub(crate) struct SaState<'g> {
    graph: &'g WeightedGraph,
    alpha: f64,
    x: Vec<bool>,
    // number of selected neighbors per vertex
    occupied: Vec<u32>,
    energy: f64,
}

impl<'g> SaState<'g> {
    pub(crate) fn new(graph: &'g WeightedGraph, alpha: f64, x: Vec<bool>) -> Self {
        let occupied = (0..graph.vertex_count())
            .map(|v| graph.neighbors(v).iter().filter(|&&u| x[u]).count() as u32)
            .collect();
        let mut s = Self {
            graph,
            alpha,
            x,
            occupied,
            energy: 0.0,
        };
        s.energy = s.full_energy();
        s
    }

    pub(crate) fn full_energy(&self) -> f64 {
        let linear: f64 = (0..self.x.len())
            .filter(|&v| self.x[v])
            .map(|v| -self.graph.weight(v))
            .sum();
        let conflicts = self.graph.edges().filter(|&(u, v)| self.x[u] && self.x[v]).count();
        linear + self.alpha * conflicts as f64
    }

    #[cfg(test)]
    pub(crate) fn energy(&self) -> f64 {
        self.energy
    }

    pub(crate) fn flip_delta(&self, v: usize) -> f64 {
        let d = -self.graph.weight(v) + self.alpha * f64::from(self.occupied[v]);
        if self.x[v] {
            -d
        } else {
            d
        }
    }

    pub(crate) fn flip(&mut self, v: usize) {
        self.energy += self.flip_delta(v);
        self.x[v] = !self.x[v];
        for &u in self.graph.neighbors(v) {
            if self.x[v] {
                self.occupied[u] += 1;
            } else {
                self.occupied[u] -= 1;
            }
        }
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.x
    }
}

/// Metropolis annealing with restarts; every final state is repaired into a
/// maximal independent set and the best distinct ones are returned.
pub fn simulated_annealing_mwis(req: &SubSolverRequest<'_>, params: &SaParams) -> Result<SolverOutcome> {
    req.validate()?;
    let g = req.graph;
    let max_w = g.max_weight();
    let alpha = params.alpha.unwrap_or(2.0 * max_w);
    if !(alpha > max_w) {
        return Err(Error::InvalidParameter(format!(
            "penalty alpha = {alpha} must exceed the largest weight {max_w}"
        )));
    }
    if params.sweeps == 0 || params.restarts == 0 {
        return Err(Error::InvalidParameter("sweeps and restarts must be positive".into()));
    }
    if !(params.beta_start > 0.0 && params.beta_end > 0.0) {
        return Err(Error::InvalidParameter("inverse temperatures must be positive".into()));
    }
    let n = g.vertex_count();
    let ratio = params.beta_end / params.beta_start;
    let mut found = Vec::with_capacity(params.restarts);
    let mut flips = 0u64;
    for restart in 0..params.restarts {
        let mut rng = seed::rng(seed::mix(req.seed, &[restart as u64]));
        let start = (0..n).map(|_| rng.gen::<bool>()).collect();
        let mut state = SaState::new(g, alpha, start);
        for sweep in 0..params.sweeps {
            let frac = if params.sweeps > 1 {
                sweep as f64 / (params.sweeps - 1) as f64
            } else {
                1.0
            };
            let beta = params.beta_start * ratio.powf(frac);
            for v in 0..n {
                let delta = state.flip_delta(v);
                if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                    state.flip(v);
                    flips += 1;
                }
            }
        }
        found.push(repair_to_maximal(g, state.bits()));
    }
    Ok(SolverOutcome {
        solutions: top_distinct(found, req.want_top),
        backend: BackendTag::Sa,
        effort: flips,
    })
}
