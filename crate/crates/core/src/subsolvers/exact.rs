//! Exact branch-and-bound over maximal independent sets.
//!
//! Search branches on the lowest undecided vertex, include first. That visits
//! maximal sets in lexicographic order, so once the top list is full a branch
//! whose bound only ties the current cutoff can never displace anything and
//! is cut. The bound is a greedy clique cover of the candidates: each clique
//! contributes at most its heaviest vertex.

use serde::{Deserialize, Serialize};

use super::{BackendTag, SolverOutcome, SubSolverRequest};
use crate::error::{Error, Result};
use crate::graph::{solution_order, weights_equal, VertexSet};

/// Hard cap on instance size (vertex sets are `u64` masks).
pub const EXACT_LIMIT: usize = 40;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExactParams {}

struct TopList {
    want: usize,
    // (weight, sorted members), kept in solution order
    items: Vec<(f64, Vec<usize>)>,
}

impl TopList {
    fn full(&self) -> bool {
        self.items.len() >= self.want
    }

    fn cutoff(&self) -> f64 {
        self.items.last().map_or(f64::NEG_INFINITY, |x| x.0)
    }

    fn offer(&mut self, weight: f64, members: Vec<usize>) {
        let pos = self
            .items
            .iter()
            .position(|(w, m)| solution_order(weight, &members, *w, m).is_lt())
            .unwrap_or(self.items.len());
        if pos < self.want {
            self.items.insert(pos, (weight, members));
            self.items.truncate(self.want);
        }
    }
}

struct Search<'w> {
    adj: Vec<u64>,
    weights: &'w [f64],
    top: TopList,
    nodes: u64,
}

impl Search<'_> {
    fn clique_cover_bound(&self, mut rest: u64) -> f64 {
        let mut bound = 0.0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !(1u64 << v);
            let mut heaviest = self.weights[v];
            let mut common = self.adj[v] & rest;
            while common != 0 {
                let u = common.trailing_zeros() as usize;
                rest &= !(1u64 << u);
                heaviest = heaviest.max(self.weights[u]);
                common &= self.adj[u] & rest;
            }
            bound += heaviest;
        }
        bound
    }

    fn dfs(&mut self, chosen: u64, weight: f64, cand: u64, excluded: u64) {
        self.nodes += 1;
        // an excluded vertex with no possible dominator kills maximality
        let reach = chosen | cand;
        let mut ex = excluded;
        while ex != 0 {
            let x = ex.trailing_zeros() as usize;
            ex &= ex - 1;
            if self.adj[x] & reach == 0 {
                return;
            }
        }
        if cand == 0 {
            let members = (0..64).filter(|&i| chosen >> i & 1 == 1).collect();
            self.top.offer(weight, members);
            return;
        }
        if self.top.full() {
            let bound = weight + self.clique_cover_bound(cand);
            let cutoff = self.top.cutoff();
            if bound < cutoff || weights_equal(bound, cutoff) {
                return;
            }
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.dfs(chosen | bit, weight + self.weights[v], cand & !bit & !self.adj[v], excluded);
        self.dfs(chosen, weight, cand & !bit, excluded | bit);
    }
}

/// Top `want_top` maximal independent sets by weight. The first entry is an
/// optimum.
pub fn exact_mwis(req: &SubSolverRequest<'_>, _params: &ExactParams) -> Result<SolverOutcome> {
    req.validate()?;
    let g = req.graph;
    let n = g.vertex_count();
    if n > EXACT_LIMIT {
        return Err(Error::CapacityExceeded {
            backend: "exact",
            size: n,
            limit: EXACT_LIMIT,
        });
    }
    let adj = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1u64 << u))
        .collect();
    let mut search = Search {
        adj,
        weights: g.weights(),
        top: TopList {
            want: req.want_top,
            items: Vec::new(),
        },
        nodes: 0,
    };
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    search.dfs(0, 0.0, all, 0);
    let solutions = search
        .top
        .items
        .into_iter()
        .map(|(_, m)| {
            let w = g.weight_of(&m);
            VertexSet::from_sorted(m, w)
        })
        .collect();
    Ok(SolverOutcome {
        solutions,
        backend: BackendTag::Exact,
        effort: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn solve(g: &WeightedGraph, top: usize) -> SolverOutcome {
        exact_mwis(&SubSolverRequest::new(g, top, 0), &ExactParams::default()).unwrap()
    }

    /// Exhaustive scan over all subsets.
    fn brute_best(g: &WeightedGraph) -> f64 {
        let n = g.vertex_count();
        (0u64..1 << n)
            .filter(|&m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| g.weight(i)).sum::<f64>())
            .fold(0.0, f64::max)
    }

    #[test]
    fn c5_optimum_is_two() {
        let g = WeightedGraph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_best(&g), 2.0);
        let out = solve(&g, 1);
        assert_eq!(out.solutions[0].total_weight(), 2.0);
        assert_eq!(out.solutions[0].members(), &[0, 2]);
    }

    #[test]
    fn edgeless_takes_everything() {
        let g = WeightedGraph::unweighted(4, &[]).unwrap();
        let out = solve(&g, 3);
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.solutions[0].members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn weighted_path() {
        let g = WeightedGraph::new(3, &[(0, 1), (1, 2)], Some(vec![0.9, 1.0, 0.9])).unwrap();
        let out = solve(&g, 2);
        assert_eq!(out.solutions[0].members(), &[0, 2]);
        assert!((out.solutions[0].total_weight() - 1.8).abs() < 1e-12);
        assert_eq!(out.solutions[1].members(), &[1]);
    }

    #[test]
    fn top_two_on_unit_path_lists_maximal_sets_only() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        let out = solve(&g, 5);
        let sets: Vec<&[usize]> = out.solutions.iter().map(|s| s.members()).collect();
        assert_eq!(sets, vec![&[0, 2][..], &[1][..]]);
    }

    #[test]
    fn ties_prefer_lexicographically_smaller() {
        // K3: three optima of weight 1
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let out = solve(&g, 2);
        assert_eq!(out.solutions[0].members(), &[0]);
        assert_eq!(out.solutions[1].members(), &[1]);
    }

    #[test]
    fn empty_graph_yields_empty_set() {
        let g = WeightedGraph::empty();
        let out = solve(&g, 1);
        assert_eq!(out.solutions.len(), 1);
        assert!(out.solutions[0].is_empty());
    }

    #[test]
    fn rejects_oversized_and_zero_top() {
        let g = WeightedGraph::unweighted(41, &[]).unwrap();
        assert!(matches!(
            exact_mwis(&SubSolverRequest::new(&g, 1, 0), &ExactParams::default()),
            Err(Error::CapacityExceeded { .. })
        ));
        let g = WeightedGraph::unweighted(2, &[]).unwrap();
        assert!(exact_mwis(&SubSolverRequest::new(&g, 0, 0), &ExactParams::default()).is_err());
    }

    #[test]
    fn handles_forty_vertices() {
        let g = crate::graph::erdos_renyi(40, 0.25, 3).unwrap();
        let out = solve(&g, 2);
        assert!(crate::graph::is_independent(&g, &out.solutions[0]));
        assert!(out.solutions[0].total_weight() >= out.solutions[1].total_weight());
    }
}
