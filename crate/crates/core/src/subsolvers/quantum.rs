//! Subsolver backed by the Rydberg emulator: atoms sit on the lattice sites
//! of a GLS mapping, the register is annealed, and measured bitstrings are
//! repaired into maximal independent sets of the subgraph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{repair_to_maximal, top_distinct, BackendTag, SolverOutcome, SubSolverRequest};
use crate::error::{Error, Result};
use crate::gls::{mapped_subgraph, LatticeMapping};
use crate::graph::VertexSet;
use crate::rydberg::{self, default_mis_schedule, stable_dt, AnnealSchedule, RydbergRegister, ScheduleFile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuantumParams {
    /// Largest register accepted, at most [`rydberg::MAX_ATOMS`].
    pub capacity: usize,
    /// Anneal duration in µs for the default schedule.
    pub total_time: f64,
    /// Upper bound on the integrator step in µs. Tightened automatically to
    /// the stability limit of the register.
    pub dt: f64,
    pub shots: usize,
    /// Replaces the default schedule when set.
    pub schedule: Option<ScheduleFile>,
}

impl Default for QuantumParams {
    fn default() -> Self {
        Self {
            capacity: rydberg::MAX_ATOMS,
            total_time: 4.0,
            dt: rydberg::DEFAULT_DT,
            shots: 500,
            schedule: None,
        }
    }
}

impl QuantumParams {
    pub fn schedule(&self) -> Result<AnnealSchedule> {
        match &self.schedule {
            Some(file) => file.to_schedule(),
            None => default_mis_schedule(self.total_time),
        }
    }
}

/// Outcome plus the histogram of repaired samples.
#[derive(Debug, Clone)]
pub struct QuantumOutcome {
    pub outcome: SolverOutcome,
    /// Distinct repaired sets with their shot counts, most frequent first.
    pub counts: Vec<(VertexSet, usize)>,
    /// Shots whose raw bitstring was already independent.
    pub raw_independent: usize,
}

impl QuantumOutcome {
    pub fn modal(&self) -> Option<&VertexSet> {
        self.counts.first().map(|(s, _)| s)
    }
}

/// Anneals atoms at `positions` (one per local vertex of `req.graph`).
pub fn solve_register(
    req: &SubSolverRequest<'_>,
    positions: &[[f64; 2]],
    params: &QuantumParams,
) -> Result<QuantumOutcome> {
    let schedule = params.schedule()?;
    solve_with_schedule(req, positions, &schedule, params)
}

fn solve_with_schedule(
    req: &SubSolverRequest<'_>,
    positions: &[[f64; 2]],
    schedule: &AnnealSchedule,
    params: &QuantumParams,
) -> Result<QuantumOutcome> {
    req.validate()?;
    let g = req.graph;
    let n = g.vertex_count();
    let limit = params.capacity.min(rydberg::MAX_ATOMS);
    if n > limit {
        return Err(Error::CapacityExceeded {
            backend: "quantum",
            size: n,
            limit,
        });
    }
    if positions.len() != n {
        return Err(Error::DimensionMismatch {
            register: positions.len(),
            state: n,
        });
    }
    if params.shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let register = RydbergRegister::new(positions.to_vec(), g.weights().to_vec())?;
    let dt = params
        .dt
        .min(stable_dt(&register, schedule))
        .min(schedule.min_gap() / 10.0);
    let state = rydberg::evolve(&register, schedule, dt)?;
    let shots = rydberg::sample(&state, params.shots, req.seed)?;

    let mut tally: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut raw_independent = 0;
    let mut selected = vec![false; n];
    for &shot in &shots {
        for (i, s) in selected.iter_mut().enumerate() {
            *s = shot >> i & 1 == 1;
        }
        if crate::graph::is_independent_slice(g, &rydberg::occupied(shot, n)) {
            raw_independent += 1;
        }
        let repaired = repair_to_maximal(g, &selected);
        *tally.entry(repaired.into_members()).or_default() += 1;
    }
    let mut counts: Vec<(VertexSet, usize)> = tally
        .into_iter()
        .map(|(m, c)| {
            let w = g.weight_of(&m);
            (VertexSet::from_sorted(m, w), c)
        })
        .collect();
    // BTreeMap order is lexicographic, so the stable sort keeps ties lexicographic
    counts.sort_by(|a, b| b.1.cmp(&a.1));
    let solutions = top_distinct(counts.iter().map(|(s, _)| s.clone()).collect(), req.want_top);
    Ok(QuantumOutcome {
        outcome: SolverOutcome {
            solutions,
            backend: BackendTag::Quantum,
            effort: params.shots as u64,
        },
        counts,
        raw_independent,
    })
}

/// Places one atom per mapped vertex at its lattice site and anneals with
/// `schedule`. `req.graph` must be the mapped subgraph of `mapping`.
pub fn quantum_subsolver(
    req: &SubSolverRequest<'_>,
    mapping: &LatticeMapping<'_>,
    schedule: &AnnealSchedule,
    params: &QuantumParams,
) -> Result<QuantumOutcome> {
    if !mapping.is_induced_embedding() {
        return Err(Error::Contract("mapping is not an induced embedding".into()));
    }
    let sub = mapped_subgraph(mapping);
    if sub.graph != *req.graph {
        return Err(Error::Contract("request graph is not the mapped subgraph".into()));
    }
    let positions = mapping.positions(&sub);
    solve_with_schedule(req, &positions, schedule, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::gls::{gls_map, GlsOptions};
    use crate::lattice::{build_lattice, LatticeKind};

    fn fast() -> QuantumParams {
        QuantumParams {
            total_time: 2.0,
            dt: 2e-3,
            shots: 200,
            ..QuantumParams::default()
        }
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::unweighted(1, &[]).unwrap();
        let out = solve_register(&SubSolverRequest::new(&g, 2, 5), &[[0.0, 0.0]], &fast()).unwrap();
        assert_eq!(out.outcome.solutions.len(), 1);
        assert_eq!(out.outcome.solutions[0].members(), &[0]);
    }

    #[test]
    fn capacity_is_enforced() {
        let g = WeightedGraph::unweighted(3, &[]).unwrap();
        let params = QuantumParams {
            capacity: 2,
            ..fast()
        };
        let pos = [[0.0, 0.0], [10.0, 0.0], [20.0, 0.0]];
        assert!(matches!(
            solve_register(&SubSolverRequest::new(&g, 1, 0), &pos, &params),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn rejects_invalid_mapping() {
        let g = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
        let l = build_lattice(LatticeKind::Square, 3, 3, 5.0).unwrap();
        let mut m = LatticeMapping::new(&g, &l);
        m.assign(0, 0).unwrap();
        m.assign(1, 8).unwrap();
        let sub = mapped_subgraph(&m);
        let sched = default_mis_schedule(1.0).unwrap();
        assert!(matches!(
            quantum_subsolver(&SubSolverRequest::new(&sub.graph, 1, 0), &m, &sched, &fast()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn mapped_triangle_path() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        let l = build_lattice(LatticeKind::Triangular, 3, 3, 5.0).unwrap();
        let m = gls_map(&g, &l, 1, GlsOptions::default()).unwrap();
        assert_eq!(m.len(), 3);
        let sub = mapped_subgraph(&m);
        let sched = default_mis_schedule(2.0).unwrap();
        let out = quantum_subsolver(&SubSolverRequest::new(&sub.graph, 2, 3), &m, &sched, &fast()).unwrap();
        assert_eq!(out.modal().unwrap().members(), &[0, 2]);
        assert_eq!(out.outcome.solutions[0].members(), &[0, 2]);
    }
}
