//! Weighted simple graphs and the set algebra the solvers are built on.
//!
//! Vertices are dense indices `0..n`. Anything that deletes vertices returns
//! an [`InducedSubgraph`] carrying the map back to the parent indices instead
//! of leaving holes.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

/// Relative tolerance used whenever two weight sums are compared.
pub const WEIGHT_RTOL: f64 = 1e-12;

/// `true` when `a` and `b` agree within [`WEIGHT_RTOL`].
pub fn weights_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= WEIGHT_RTOL * a.abs().max(b.abs()).max(1.0)
}

/// Ordering of candidate solutions: heavier first, then lexicographically
/// smaller member list.
pub fn solution_order(wa: f64, a: &[usize], wb: f64, b: &[usize]) -> Ordering {
    if weights_equal(wa, wb) {
        a.cmp(b)
    } else if wa > wb {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Immutable simple undirected graph with per-vertex weights in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<usize>>,
    weights: Vec<f64>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Duplicate edges are merged, self
    /// loops and out-of-range endpoints are rejected. `weights` defaults to
    /// all ones.
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Option<Vec<f64>>) -> Result<Self> {
        let weights = match weights {
            Some(w) => {
                if w.len() != n {
                    return Err(Error::WeightCount {
                        expected: n,
                        got: w.len(),
                    });
                }
                w
            }
            None => vec![1.0; n],
        };
        for (vertex, &weight) in weights.iter().enumerate() {
            if !(weight > 0.0 && weight <= 1.0) {
                return Err(Error::InvalidWeight { vertex, weight });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, count: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self {
            adjacency,
            weights,
            edge_count,
        })
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, None)
    }

    pub fn empty() -> Self {
        Self {
            adjacency: Vec::new(),
            weights: Vec::new(),
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// Sum of the weights of `members`. Indices are not checked.
    pub fn weight_of(&self, members: &[usize]) -> f64 {
        members.iter().map(|&v| self.weights[v]).sum()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            })
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.vertex_count(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            weights: if self.is_unweighted() {
                None
            } else {
                Some(self.weights.clone())
            },
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(file.n, &edges, file.weights.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }
}

/// On-disk graph representation: `{"n": .., "edges": [[u, v], ..], "weights": [..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

/// Sorted set of vertices together with its total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    members: Vec<usize>,
    total_weight: f64,
}

impl VertexSet {
    /// Validates indices against `g`, sorts and deduplicates.
    pub fn new(g: &WeightedGraph, mut members: Vec<usize>) -> Result<Self> {
        for &v in &members {
            g.check_vertex(v)?;
        }
        members.sort_unstable();
        members.dedup();
        let total_weight = g.weight_of(&members);
        Ok(Self {
            members,
            total_weight,
        })
    }

    pub fn empty() -> Self {
        Self {
            members: Vec::new(),
            total_weight: 0.0,
        }
    }

    /// Caller guarantees `members` is sorted, deduplicated and sums to
    /// `total_weight`.
    pub(crate) fn from_sorted(members: Vec<usize>, total_weight: f64) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            members,
            total_weight,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn into_members(self) -> Vec<usize> {
        self.members
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Solution ordering, see [`solution_order`].
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        solution_order(self.total_weight, &self.members, other.total_weight, &other.members)
    }
}

/// A graph derived from a parent by keeping a subset of vertices.
/// `original[i]` is the parent index of local vertex `i`, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedSubgraph {
    pub graph: WeightedGraph,
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn identity(g: &WeightedGraph) -> Self {
        Self {
            graph: g.clone(),
            original: (0..g.vertex_count()).collect(),
        }
    }

    /// Local indices to parent indices. Order is preserved.
    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.original[v]).collect()
    }

    /// Chains `self` (a subgraph of `parent`) onto `parent.original`.
    pub fn compose(mut self, parent: &InducedSubgraph) -> Self {
        for v in &mut self.original {
            *v = parent.original[*v];
        }
        self
    }
}

/// Induced subgraph on `keep`, which must be sorted and in range.
fn induce(g: &WeightedGraph, keep: Vec<usize>) -> InducedSubgraph {
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let adjacency: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                .collect()
        })
        .collect();
    let weights = keep.iter().map(|&v| g.weight(v)).collect();
    let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    InducedSubgraph {
        graph: WeightedGraph {
            adjacency,
            weights,
            edge_count,
        },
        original: keep,
    }
}

/// Subgraph induced by `vertices` (any order, duplicates ignored).
pub fn induced_subgraph(g: &WeightedGraph, vertices: &[usize]) -> Result<InducedSubgraph> {
    let mut keep = vertices.to_vec();
    for &v in &keep {
        g.check_vertex(v)?;
    }
    keep.sort_unstable();
    keep.dedup();
    Ok(induce(g, keep))
}

/// G(n, p): every pair `u < v`, visited in lexicographic order, is an edge
/// with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = seed::rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unweighted(n, &edges)
}

/// Unit-disk graph: `u ~ v` iff `|x_u - x_v| <= radius`.
pub fn unit_disk_graph(positions: &[[f64; 2]], radius: f64) -> Result<WeightedGraph> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "unit-disk radius must be positive, got {radius}"
        )));
    }
    let mut edges = Vec::new();
    for (u, a) in positions.iter().enumerate() {
        for (v, b) in positions.iter().enumerate().skip(u + 1) {
            if a == b {
                return Err(Error::DuplicatePosition(u, v));
            }
            if distance(a, b) <= radius {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unweighted(positions.len(), &edges)
}

pub fn distance(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// N[s] = s plus every neighbor of a member of s.
pub fn closed_neighborhood(g: &WeightedGraph, s: &VertexSet) -> Result<VertexSet> {
    let mut mark = vec![false; g.vertex_count()];
    for &v in s.members() {
        g.check_vertex(v)?;
        mark[v] = true;
        for &u in g.neighbors(v) {
            mark[u] = true;
        }
    }
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| mark[v]).collect();
    let w = g.weight_of(&members);
    Ok(VertexSet::from_sorted(members, w))
}

/// Deletes `s` from `g`, returning the remainder with its index map.
pub fn remove_vertices(g: &WeightedGraph, s: &VertexSet) -> Result<InducedSubgraph> {
    let mut gone = vec![false; g.vertex_count()];
    for &v in s.members() {
        g.check_vertex(v)?;
        gone[v] = true;
    }
    let keep = (0..g.vertex_count()).filter(|&v| !gone[v]).collect();
    Ok(induce(g, keep))
}

pub fn is_independent(g: &WeightedGraph, s: &VertexSet) -> bool {
    is_independent_slice(g, s.members())
}

pub(crate) fn is_independent_slice(g: &WeightedGraph, members: &[usize]) -> bool {
    let mut inside = vec![false; g.vertex_count()];
    for &v in members {
        inside[v] = true;
    }
    members
        .iter()
        .all(|&v| g.neighbors(v).iter().all(|&u| !inside[u]))
}

/// Every vertex outside `s` has a neighbor in `s`. Errors if `s` is not
/// independent.
pub fn is_maximal_independent(g: &WeightedGraph, s: &VertexSet) -> Result<bool> {
    if !is_independent(g, s) {
        return Err(Error::Contract(
            "maximality queried for a set that is not independent".into(),
        ));
    }
    Ok(is_dominating(g, s.members()))
}

pub(crate) fn is_dominating(g: &WeightedGraph, members: &[usize]) -> bool {
    let mut covered = vec![false; g.vertex_count()];
    for &v in members {
        covered[v] = true;
        for &u in g.neighbors(v) {
            covered[u] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Normalized distance of a solution value from the reference value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GapValue(pub f64);

impl GapValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `|candidate - best| / |best|`.
pub fn optimality_gap(candidate_weight: f64, best_weight: f64) -> Result<GapValue> {
    if best_weight == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(GapValue((candidate_weight - best_weight).abs() / best_weight.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::unweighted(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        WeightedGraph::unweighted(leaves + 1, &edges).unwrap()
    }

    fn set(g: &WeightedGraph, v: &[usize]) -> VertexSet {
        VertexSet::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            WeightedGraph::unweighted(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(WeightedGraph::unweighted(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(WeightedGraph::new(2, &[], Some(vec![0.5, 0.0])).is_err());
        assert!(WeightedGraph::new(2, &[], Some(vec![0.5, 1.5])).is_err());
        assert!(WeightedGraph::new(2, &[], Some(vec![0.5])).is_err());
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(erdos_renyi(10, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 1).unwrap().edge_count(), 45);
        assert_eq!(erdos_renyi(0, 0.5, 1).unwrap().vertex_count(), 0);
        assert_eq!(erdos_renyi(5, 1.5, 1), Err(Error::InvalidProbability(1.5)));
        assert!(erdos_renyi(5, -0.1, 1).is_err());
    }

    #[test]
    fn erdos_renyi_edge_count_moments() {
        let mean = 62375.0;
        let sd = (mean * 0.25f64).sqrt();
        for seed in [0, 7, 12345] {
            let m = erdos_renyi(500, 0.5, seed).unwrap().edge_count() as f64;
            assert!((m - mean).abs() < 5.0 * sd, "seed {seed}: {m}");
        }
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let a = erdos_renyi(40, 0.3, 99).unwrap();
        let b = erdos_renyi(40, 0.3, 99).unwrap();
        let c = erdos_renyi(40, 0.3, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unit_disk_closed_boundary() {
        let g = unit_disk_graph(&[[0.0, 0.0], [1.0, 0.0]], 1.2).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = unit_disk_graph(&[[0.0, 0.0], [1.2, 0.0]], 1.2).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = unit_disk_graph(&[[0.0, 0.0], [1.21, 0.0]], 1.2).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            unit_disk_graph(&[[0.0, 0.0], [0.0, 0.0]], 1.0),
            Err(Error::DuplicatePosition(0, 1))
        );
        assert!(unit_disk_graph(&[[0.0, 0.0]], 0.0).is_err());
    }

    #[test]
    fn triangular_points_interior_degree_six() {
        let a = 3.0;
        let mut pts = Vec::new();
        for r in 0..5 {
            for c in 0..5 {
                let shift = if r % 2 == 1 { a / 2.0 } else { 0.0 };
                pts.push([c as f64 * a + shift, r as f64 * a * 3f64.sqrt() / 2.0]);
            }
        }
        let g = unit_disk_graph(&pts, 1.2 * a).unwrap();
        for r in 1..4 {
            for c in 1..4 {
                let v = r * 5 + c;
                // brute-force count of points within the radius
                let brute = pts
                    .iter()
                    .enumerate()
                    .filter(|&(u, p)| u != v && distance(p, &pts[v]) <= 1.2 * a)
                    .count();
                assert_eq!(brute, 6);
                assert_eq!(g.degree(v), 6);
            }
        }
    }

    #[test]
    fn closed_neighborhood_cases() {
        let g = star(4);
        assert!(closed_neighborhood(&g, &VertexSet::empty()).unwrap().is_empty());
        assert_eq!(closed_neighborhood(&g, &set(&g, &[0])).unwrap().len(), 5);
        let iso = WeightedGraph::unweighted(3, &[(0, 1)]).unwrap();
        assert_eq!(closed_neighborhood(&iso, &set(&iso, &[2])).unwrap().members(), &[2]);
    }

    #[test]
    fn closed_neighborhood_rejects_foreign_set() {
        let big = WeightedGraph::unweighted(10, &[]).unwrap();
        let small = WeightedGraph::unweighted(3, &[]).unwrap();
        let s = set(&big, &[7]);
        assert!(closed_neighborhood(&small, &s).is_err());
        assert!(remove_vertices(&small, &s).is_err());
    }

    #[test]
    fn remove_vertices_cases() {
        let c5 = cycle(5);
        let all = set(&c5, &[0, 1, 2, 3, 4]);
        assert!(remove_vertices(&c5, &all).unwrap().graph.is_empty());

        let same = remove_vertices(&c5, &VertexSet::empty()).unwrap();
        assert_eq!(same.graph, c5);
        assert_eq!(same.original, vec![0, 1, 2, 3, 4]);

        let p4 = remove_vertices(&c5, &set(&c5, &[2])).unwrap();
        assert_eq!(p4.original, vec![0, 1, 3, 4]);
        assert_eq!(p4.graph.edge_count(), 3);
        let degrees: Vec<_> = (0..4).map(|v| p4.graph.degree(v)).collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2, 2]);
        // 3-4-0-1 in parent indices
        assert!(p4.graph.has_edge(2, 3) && p4.graph.has_edge(3, 0) && p4.graph.has_edge(0, 1));
    }

    #[test]
    fn independence_cases() {
        let c6 = cycle(6);
        assert!(is_independent(&c6, &set(&c6, &[3])));
        assert!(!is_independent(&c6, &set(&c6, &[0, 1])));
        assert!(is_independent(&c6, &set(&c6, &[0, 2, 4])));
    }

    #[test]
    fn maximality_cases() {
        let k3 = WeightedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_maximal_independent(&k3, &set(&k3, &[1])).unwrap());
        let p3 = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_maximal_independent(&p3, &set(&p3, &[0])).unwrap());
        let e = WeightedGraph::unweighted(4, &[]).unwrap();
        assert!(is_maximal_independent(&e, &set(&e, &[0, 1, 2, 3])).unwrap());
        assert!(matches!(
            is_maximal_independent(&p3, &set(&p3, &[0, 1])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn gap_cases() {
        assert_eq!(optimality_gap(10.0, 10.0).unwrap().value(), 0.0);
        assert!((optimality_gap(8.0, 10.0).unwrap().value() - 0.2).abs() < 1e-12);
        assert!((optimality_gap(12.0, 10.0).unwrap().value() - 0.2).abs() < 1e-12);
        assert_eq!(optimality_gap(1.0, 0.0), Err(Error::ZeroReference));
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let g = WeightedGraph::new(3, &[(0, 1), (1, 2)], Some(vec![0.5, 1.0, 0.25])).unwrap();
        assert_eq!(WeightedGraph::from_json(&g.to_json()).unwrap(), g);
        let h = WeightedGraph::from_json(r#"{"n": 3, "edges": [[0, 2]]}"#).unwrap();
        assert_eq!(h.weights(), &[1.0, 1.0, 1.0]);
        assert!(!g.to_json().contains("null"));
        assert!(WeightedGraph::from_json(r#"{"n": 2, "edges": [[0, 5]]}"#).is_err());
    }

    #[test]
    fn vertex_set_weight_sum() {
        let g = WeightedGraph::new(3, &[], Some(vec![0.1, 0.2, 0.3])).unwrap();
        let s = set(&g, &[2, 0, 2]);
        assert_eq!(s.members(), &[0, 2]);
        assert!(weights_equal(s.total_weight(), 0.4));
        assert!(VertexSet::new(&g, vec![3]).is_err());
    }

    fn graph_and_set() -> impl Strategy<Value = (WeightedGraph, Vec<usize>)> {
        (1usize..=20, 0.0f64..1.0, any::<u64>()).prop_flat_map(|(n, p, seed)| {
            let g = erdos_renyi(n, p, seed).unwrap();
            (Just(g), proptest::collection::vec(0..n, 0..=n))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn predicates_match_definitions((g, raw) in graph_and_set()) {
            let s = VertexSet::new(&g, raw).unwrap();
            let brute_indep = g.edges().all(|(u, v)| !(s.contains(u) && s.contains(v)));
            prop_assert_eq!(is_independent(&g, &s), brute_indep);
            if brute_indep {
                let brute_max = (0..g.vertex_count())
                    .filter(|v| !s.contains(*v))
                    .all(|v| s.members().iter().any(|&u| g.has_edge(u, v)));
                prop_assert_eq!(is_maximal_independent(&g, &s).unwrap(), brute_max);
            }
        }

        #[test]
        fn closed_neighborhood_is_superset((g, raw) in graph_and_set()) {
            let s = VertexSet::new(&g, raw).unwrap();
            let ns = closed_neighborhood(&g, &s).unwrap();
            prop_assert!(s.members().iter().all(|&v| ns.contains(v)));
            let leaks = s.members().iter().any(|&v| g.neighbors(v).iter().any(|&u| !s.contains(u)));
            prop_assert_eq!(ns.len() == s.len(), !leaks);
        }

        #[test]
        fn removal_keeps_induced_structure((g, raw) in graph_and_set()) {
            let s = VertexSet::new(&g, raw).unwrap();
            let sub = remove_vertices(&g, &s).unwrap();
            prop_assert_eq!(sub.graph.vertex_count(), g.vertex_count() - s.len());
            for a in 0..sub.graph.vertex_count() {
                for b in 0..sub.graph.vertex_count() {
                    if a != b {
                        prop_assert_eq!(
                            sub.graph.has_edge(a, b),
                            g.has_edge(sub.original[a], sub.original[b])
                        );
                    }
                }
            }
        }
    }
}
