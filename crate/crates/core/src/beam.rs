//! Recursive decomposition with a beam of branches.
//!
//! A branch holds a partial independent set and the residual graph left
//! after deleting the closed neighborhood of that set. Expanding a branch
//! samples `k` lattice embeddings of its residual, solves each embedded
//! subgraph, and spawns one child per retained solution (`s` per subgraph).
//! Each generation keeps the best `ell` unfinished branches; branches whose
//! residual is empty are frozen and compete only at the end.
//!
//! By default the `s` retained solutions of a subgraph are picked from a
//! larger candidate pool by their weight plus the weight of a min-degree
//! greedy completion of the residual they leave behind
//! ([`SolutionChoice::Lookahead`]). [`SolutionChoice::Weight`] keeps the
//! plain heaviest-first order.

use std::cmp::Ordering;
use std::time::Instant;

use rand::seq::index::sample as sample_indices;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gls::{gls_map, mapped_subgraph, GlsOptions, RankingPolicy};
use crate::graph::{
    closed_neighborhood, is_independent, remove_vertices, solution_order, InducedSubgraph, VertexSet,
    WeightedGraph,
};
use crate::lattice::{build_lattice, LatticeKind, LatticeLayout, DEFAULT_SPACING};
use crate::seed;
use crate::subsolvers::{exact_mwis, greedy_mis, quantum, ExactParams, SubSolver, SubSolverRequest};

/// Subgraphs at or below this size are solved exactly in place.
pub const INLINE_EXACT_MAX: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutSpec {
    pub kind: LatticeKind,
    pub rows: usize,
    pub cols: usize,
    pub spacing: f64,
}

impl Default for LayoutSpec {
    fn default() -> Self {
        Self {
            kind: LatticeKind::Triangular,
            rows: 6,
            cols: 6,
            spacing: DEFAULT_SPACING,
        }
    }
}

impl LayoutSpec {
    pub fn build(&self) -> Result<LatticeLayout> {
        build_lattice(self.kind, self.rows, self.cols, self.spacing)
    }
}

/// How the `k` GLS start vertices of an expansion are picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartPolicy {
    /// Uniformly without replacement, seeded per branch and generation.
    Random,
    /// The `k` highest-degree residual vertices, lowest index on ties.
    HighestDegree,
}

/// Which `s` solutions of a subgraph become children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionChoice {
    /// The `s` heaviest, lexicographically smallest on ties.
    Weight,
    /// Request `pool` candidates and keep the `s` with the largest weight
    /// plus greedy completion of the residual. Ties fall back to weight,
    /// then lexicographic order.
    Lookahead { pool: usize },
}

impl Default for SolutionChoice {
    fn default() -> Self {
        Self::Lookahead { pool: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BeamConfig {
    /// Subgraphs sampled per branch and generation.
    pub k: usize,
    /// Solutions kept per subgraph.
    pub s: usize,
    /// Surviving branches per generation.
    pub ell: usize,
    pub subsolver: SubSolver,
    pub layout: LayoutSpec,
    pub policy: RankingPolicy,
    pub start: StartPolicy,
    pub choice: SolutionChoice,
    pub rng_seed: u64,
}

impl Default for BeamConfig {
    fn default() -> Self {
        Self {
            k: 4,
            s: 2,
            ell: 10,
            subsolver: SubSolver::Exact(ExactParams::default()),
            layout: LayoutSpec::default(),
            policy: RankingPolicy::low_degree_first(),
            start: StartPolicy::Random,
            choice: SolutionChoice::default(),
            rng_seed: 0,
        }
    }
}

impl BeamConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.s == 0 || self.ell == 0 {
            return Err(Error::InvalidParameter(format!(
                "beam parameters must be positive: k={}, s={}, ell={}",
                self.k, self.s, self.ell
            )));
        }
        if let SolutionChoice::Lookahead { pool } = self.choice {
            if pool < self.s {
                return Err(Error::InvalidParameter(format!(
                    "lookahead pool {pool} is smaller than s = {}",
                    self.s
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// Remaining graph, indexed back into the original graph.
    pub residual: InducedSubgraph,
    /// Partial solution in original indices.
    pub partial: VertexSet,
    pub depth: usize,
    /// Largest embedded subgraph extracted along this branch.
    pub largest_subgraph: usize,
}

impl Branch {
    pub fn root(g: &WeightedGraph) -> Self {
        Self {
            residual: InducedSubgraph::identity(g),
            partial: VertexSet::empty(),
            depth: 0,
            largest_subgraph: 0,
        }
    }

    pub fn score(&self) -> f64 {
        self.partial.total_weight()
    }

    pub fn is_complete(&self) -> bool {
        self.residual.graph.is_empty()
    }

    fn signature(&self) -> u64 {
        // the residual is determined by the partial set
        let words: Vec<u64> = self.partial.members().iter().map(|&v| v as u64).collect();
        seed::mix(self.partial.len() as u64, &words)
    }
}

/// Beam order: score descending, smaller residual first, then
/// lexicographically smaller partial set.
fn branch_order(a: &Branch, b: &Branch) -> Ordering {
    solution_order(a.score(), &[], b.score(), &[])
        .then(a.residual.graph.vertex_count().cmp(&b.residual.graph.vertex_count()))
        .then(a.partial.members().cmp(b.partial.members()))
}

/// Deduplicates, sorts and truncates to `ell`.
pub fn prune_branches(mut branches: Vec<Branch>, ell: usize) -> Vec<Branch> {
    branches.sort_by(branch_order);
    branches.dedup_by(|a, b| a.partial.members() == b.partial.members());
    branches.truncate(ell);
    branches
}

/// Shared per-run context.
pub struct BeamContext<'g> {
    pub original: &'g WeightedGraph,
    pub config: &'g BeamConfig,
    pub layout: LatticeLayout,
}

impl<'g> BeamContext<'g> {
    pub fn new(original: &'g WeightedGraph, config: &'g BeamConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            original,
            config,
            layout: config.layout.build()?,
        })
    }

    fn start_vertices(&self, residual: &WeightedGraph, branch_seed: u64) -> Vec<usize> {
        let n = residual.vertex_count();
        let k = self.config.k.min(n);
        match self.config.start {
            StartPolicy::Random => {
                let mut rng = seed::rng(branch_seed);
                sample_indices(&mut rng, n, k).into_vec()
            }
            StartPolicy::HighestDegree => {
                let mut v: Vec<usize> = (0..n).collect();
                v.sort_by(|&a, &b| residual.degree(b).cmp(&residual.degree(a)).then(a.cmp(&b)));
                v.truncate(k);
                v
            }
        }
    }

    /// Children of `b` for generation `generation`.
    pub fn expand_branch(&self, b: &Branch, generation: usize) -> Result<Vec<Branch>> {
        let residual = &b.residual.graph;
        if residual.is_empty() {
            return Err(Error::Contract("cannot expand a branch with an empty residual".into()));
        }
        let cfg = self.config;
        let branch_seed = seed::mix(cfg.rng_seed, &[b.signature(), generation as u64]);
        let cap = cfg.subsolver.capacity();
        let options = GlsOptions {
            policy: cfg.policy.clone(),
            max_size: cap,
        };

        let mut children = Vec::new();
        for (j, start) in self.start_vertices(residual, branch_seed).into_iter().enumerate() {
            let mapping = gls_map(residual, &self.layout, start, options.clone())?;
            let sub = mapped_subgraph(&mapping);
            let want = match cfg.choice {
                SolutionChoice::Weight => cfg.s,
                SolutionChoice::Lookahead { pool } => pool,
            };
            let req = SubSolverRequest::new(&sub.graph, want, seed::mix(branch_seed, &[j as u64 + 1]));
            let outcome = if sub.graph.vertex_count() <= INLINE_EXACT_MAX {
                exact_mwis(&req, &ExactParams::default())?
            } else {
                match &cfg.subsolver {
                    SubSolver::Quantum(params) => {
                        let schedule = params.schedule()?;
                        quantum::quantum_subsolver(&req, &mapping, &schedule, params)?.outcome
                    }
                    other => other.solve(&req, None)?,
                }
            };
            let mut kids = Vec::with_capacity(outcome.solutions.len());
            for local in &outcome.solutions {
                if local.is_empty() || !is_independent(&sub.graph, local) {
                    return Err(Error::Internal(format!(
                        "{:?} returned an invalid set {:?} for a {}-vertex subgraph",
                        outcome.backend,
                        local.members(),
                        sub.graph.vertex_count()
                    )));
                }
                kids.push(self.child(b, &sub, local)?);
            }
            if matches!(cfg.choice, SolutionChoice::Lookahead { .. }) {
                let mut scored: Vec<(f64, Branch)> = kids
                    .into_iter()
                    .map(|c| (c.score() + greedy_mis(&c.residual.graph).total_weight(), c))
                    .collect();
                scored.sort_by(|a, b| {
                    b.0.total_cmp(&a.0)
                        .then(solution_order(a.1.score(), a.1.partial.members(), b.1.score(), b.1.partial.members()))
                });
                kids = scored.into_iter().map(|(_, c)| c).collect();
            }
            kids.truncate(cfg.s);
            children.extend(kids);
        }
        Ok(children)
    }

    fn child(&self, parent: &Branch, sub: &InducedSubgraph, local: &VertexSet) -> Result<Branch> {
        let residual = &parent.residual;
        let in_residual = VertexSet::new(&residual.graph, sub.lift(local.members()))?;
        let removed = closed_neighborhood(&residual.graph, &in_residual)?;
        let next = remove_vertices(&residual.graph, &removed)?.compose(residual);
        let mut members = parent.partial.members().to_vec();
        members.extend(residual.lift(in_residual.members()));
        Ok(Branch {
            residual: next,
            partial: VertexSet::new(self.original, members)?,
            depth: parent.depth + 1,
            largest_subgraph: parent.largest_subgraph.max(sub.graph.vertex_count()),
        })
    }
}

/// Convenience wrapper around [`BeamContext::expand_branch`].
pub fn expand_branch(g: &WeightedGraph, b: &Branch, config: &BeamConfig, generation: usize) -> Result<Vec<Branch>> {
    BeamContext::new(g, config)?.expand_branch(b, generation)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Scores of the branches kept for the next generation.
    pub active_scores: Vec<f64>,
    pub completed: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BeamRun {
    pub solution: VertexSet,
    pub largest_subgraph: usize,
    pub depth: usize,
    pub generations: Vec<GenerationRecord>,
}

impl BeamRun {
    /// Run record: configuration, per-generation scores and timings, and the
    /// final vertex list.
    pub fn to_record(&self, config: &BeamConfig) -> serde_json::Value {
        serde_json::json!({
            "config": config,
            "generations": self.generations,
            "solution": self.solution.members(),
            "weight": self.solution.total_weight(),
            "largest_subgraph": self.largest_subgraph,
        })
    }
}

/// Beam search over GLS decompositions. Returns the heaviest completed
/// branch, which is a maximal independent set of `g`.
pub fn solve_mwis(g: &WeightedGraph, config: &BeamConfig) -> Result<BeamRun> {
    if g.weights().iter().any(|&w| !(w > 0.0)) {
        return Err(Error::InvalidParameter("beam search needs strictly positive weights".into()));
    }
    let ctx = BeamContext::new(g, config)?;
    let mut active = vec![Branch::root(g)];
    let mut best: Option<Branch> = None;
    let mut generations = Vec::new();
    if g.is_empty() {
        best = active.pop();
    }
    let mut generation = 0;
    while !active.is_empty() {
        let clock = Instant::now();
        let expanded: Vec<Vec<Branch>> = active
            .par_iter()
            .map(|b| ctx.expand_branch(b, generation))
            .collect::<Result<_>>()?;
        let mut open = Vec::new();
        let mut completed = 0;
        for child in expanded.into_iter().flatten() {
            if child.is_complete() {
                completed += 1;
                let better = best.as_ref().is_none_or(|cur| {
                    solution_order(child.score(), child.partial.members(), cur.score(), cur.partial.members())
                        .is_lt()
                });
                if better {
                    best = Some(child);
                }
            } else {
                open.push(child);
            }
        }
        active = prune_branches(open, config.ell);
        generations.push(GenerationRecord {
            generation,
            active_scores: active.iter().map(Branch::score).collect(),
            completed,
            wall_ms: clock.elapsed().as_secs_f64() * 1e3,
        });
        generation += 1;
    }
    let best = best.expect("every branch terminates, so at least one completes");
    Ok(BeamRun {
        largest_subgraph: best.largest_subgraph,
        depth: best.depth,
        solution: best.partial,
        generations,
    })
}
