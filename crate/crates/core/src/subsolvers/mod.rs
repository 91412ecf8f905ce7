//! Interchangeable MWIS backends.
//!
//! Every backend answers a [`SubSolverRequest`] with up to `want_top`
//! distinct independent sets, heaviest first. Sampling backends repair their
//! raw states into maximal independent sets before reporting them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{solution_order, VertexSet, WeightedGraph};

pub mod anneal;
pub mod exact;
pub mod greedy;
pub mod quantum;

pub use anneal::{simulated_annealing_mwis, SaParams};
pub use exact::{exact_mwis, ExactParams, EXACT_LIMIT};
pub use greedy::greedy_mis;
pub use quantum::{quantum_subsolver, QuantumParams};

#[derive(Debug, Clone, Copy)]
pub struct SubSolverRequest<'a> {
    pub graph: &'a WeightedGraph,
    /// Number of distinct sets wanted, at least 1.
    pub want_top: usize,
    pub seed: u64,
}

impl<'a> SubSolverRequest<'a> {
    pub fn new(graph: &'a WeightedGraph, want_top: usize, seed: u64) -> Self {
        Self { graph, want_top, seed }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.want_top == 0 {
            return Err(Error::InvalidParameter("want_top must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendTag {
    Exact,
    Greedy,
    Sa,
    Quantum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOutcome {
    /// Heaviest first, ties broken by lexicographic vertex order.
    pub solutions: Vec<VertexSet>,
    pub backend: BackendTag,
    /// Search nodes, flips or shots, depending on the backend.
    pub effort: u64,
}

impl SolverOutcome {
    pub fn best(&self) -> Option<&VertexSet> {
        self.solutions.first()
    }
}

/// Backend selector with its parameters. The config string forms are
/// `exact`, `greedy`, `sa` and `quantum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
pub enum SubSolver {
    Exact(ExactParams),
    Greedy,
    Sa(SaParams),
    Quantum(QuantumParams),
}

impl SubSolver {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "exact" => Ok(SubSolver::Exact(ExactParams::default())),
            "greedy" => Ok(SubSolver::Greedy),
            "sa" => Ok(SubSolver::Sa(SaParams::default())),
            "quantum" => Ok(SubSolver::Quantum(QuantumParams::default())),
            other => Err(Error::InvalidParameter(format!("unknown backend '{other}'"))),
        }
    }

    pub fn tag(&self) -> BackendTag {
        match self {
            SubSolver::Exact(_) => BackendTag::Exact,
            SubSolver::Greedy => BackendTag::Greedy,
            SubSolver::Sa(_) => BackendTag::Sa,
            SubSolver::Quantum(_) => BackendTag::Quantum,
        }
    }

    /// Largest subgraph the backend accepts, if bounded.
    pub fn capacity(&self) -> Option<usize> {
        match self {
            SubSolver::Exact(_) => Some(EXACT_LIMIT),
            SubSolver::Quantum(p) => Some(p.capacity),
            SubSolver::Greedy | SubSolver::Sa(_) => None,
        }
    }

    /// Solves a request. `positions` are atom coordinates in µm and are
    /// required by the quantum backend only.
    pub fn solve(&self, req: &SubSolverRequest<'_>, positions: Option<&[[f64; 2]]>) -> Result<SolverOutcome> {
        match self {
            SubSolver::Exact(p) => exact_mwis(req, p),
            SubSolver::Greedy => {
                req.validate()?;
                Ok(SolverOutcome {
                    solutions: vec![greedy_mis(req.graph)],
                    backend: BackendTag::Greedy,
                    effort: req.graph.vertex_count() as u64,
                })
            }
            SubSolver::Sa(p) => simulated_annealing_mwis(req, p),
            SubSolver::Quantum(p) => {
                let positions = positions.ok_or_else(|| {
                    Error::InvalidParameter("quantum backend needs atom positions".into())
                })?;
                quantum::solve_register(req, positions, p).map(|q| q.outcome)
            }
        }
    }
}

/// Turns an arbitrary 0/1 assignment into a maximal independent set.
///
/// Violated edges are visited in lexicographic order and lose their lighter
/// endpoint (the higher index on equal weights). The survivor is then
/// extended greedily: heaviest first, then smallest degree, then index.
pub fn repair_to_maximal(g: &WeightedGraph, selected: &[bool]) -> VertexSet {
    let n = g.vertex_count();
    debug_assert_eq!(selected.len(), n);
    let mut inside = selected.to_vec();
    for (u, v) in g.edges() {
        if inside[u] && inside[v] {
            let drop = if g.weight(u) < g.weight(v) { u } else { v };
            inside[drop] = false;
        }
    }
    let mut blocked = vec![false; n];
    for v in 0..n {
        if inside[v] {
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| !blocked[v]).collect();
    order.sort_by(|&a, &b| {
        g.weight(b)
            .total_cmp(&g.weight(a))
            .then(g.degree(a).cmp(&g.degree(b)))
            .then(a.cmp(&b))
    });
    for v in order {
        if !blocked[v] {
            inside[v] = true;
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    let w = g.weight_of(&members);
    VertexSet::from_sorted(members, w)
}

/// Sorts by solution order, removes duplicate sets, keeps `want_top`.
pub(crate) fn top_distinct(mut sets: Vec<VertexSet>, want_top: usize) -> Vec<VertexSet> {
    sets.sort_by(|a, b| solution_order(a.total_weight(), a.members(), b.total_weight(), b.members()));
    sets.dedup_by(|a, b| a.members() == b.members());
    sets.truncate(want_top);
    sets
}
