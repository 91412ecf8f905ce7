//! Greedy lattice subgraph (GLS) mapping.
//!
//! Starting from one graph vertex pinned to the lattice center, the mapping
//! grows outward: each placed vertex in turn offers its free lattice
//! neighbors to its unplaced graph neighbors. A placement is accepted only
//! when adjacency and non-adjacency to every placed vertex are both
//! reproduced on the lattice, so the placed vertices always induce a
//! unit-disk subgraph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, InducedSubgraph, WeightedGraph};
use crate::lattice::LatticeLayout;

/// Sort criterion for the unplaced neighbors of the vertex being expanded.
/// Vertex index ascending is always the final tiebreak, which makes the
/// order total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankKey {
    /// More already-placed neighbors first.
    MappedNeighbors,
    /// Higher degree first.
    Degree,
    /// Lower degree first.
    LowDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingPolicy {
    pub keys: Vec<RankKey>,
}

impl Default for RankingPolicy {
    fn default() -> Self {
        Self {
            keys: vec![RankKey::MappedNeighbors, RankKey::Degree],
        }
    }
}

impl RankingPolicy {
    pub fn degree_only() -> Self {
        Self {
            keys: vec![RankKey::Degree],
        }
    }

    /// Mapped neighbors first, then lower degree. Pulls sparsely connected
    /// vertices into the subgraph, which suits MIS decomposition.
    pub fn low_degree_first() -> Self {
        Self {
            keys: vec![RankKey::MappedNeighbors, RankKey::LowDegree],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GlsOptions {
    pub policy: RankingPolicy,
    /// Stop once this many vertices are placed.
    pub max_size: Option<usize>,
}

/// Partial injective assignment of graph vertices to lattice sites.
#[derive(Debug, Clone)]
pub struct LatticeMapping<'a> {
    graph: &'a WeightedGraph,
    layout: &'a LatticeLayout,
    site_of: Vec<Option<usize>>,
    vertex_at: Vec<Option<usize>>,
    order: Vec<(usize, usize)>,
}

impl<'a> LatticeMapping<'a> {
    pub fn new(graph: &'a WeightedGraph, layout: &'a LatticeLayout) -> Self {
        Self {
            graph,
            layout,
            site_of: vec![None; graph.vertex_count()],
            vertex_at: vec![None; layout.site_count()],
            order: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'a WeightedGraph {
        self.graph
    }

    pub fn layout(&self) -> &'a LatticeLayout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn site_of(&self, v: usize) -> Option<usize> {
        self.site_of.get(v).copied().flatten()
    }

    pub fn vertex_at(&self, site: usize) -> Option<usize> {
        self.vertex_at.get(site).copied().flatten()
    }

    /// `(vertex, site)` pairs in placement order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.order
    }

    /// Placed vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.order.iter().map(|&(g, _)| g).collect();
        v.sort_unstable();
        v
    }

    fn check_free(&self, g_vertex: usize, l_site: usize) -> Result<()> {
        if g_vertex >= self.site_of.len() {
            return Err(Error::VertexOutOfRange {
                vertex: g_vertex,
                count: self.site_of.len(),
            });
        }
        if l_site >= self.vertex_at.len() {
            return Err(Error::VertexOutOfRange {
                vertex: l_site,
                count: self.vertex_at.len(),
            });
        }
        if self.site_of[g_vertex].is_some() {
            return Err(Error::Contract(format!("vertex {g_vertex} is already mapped")));
        }
        if self.vertex_at[l_site].is_some() {
            return Err(Error::Contract(format!("site {l_site} is already occupied")));
        }
        Ok(())
    }

    /// Would placing `g_vertex` on `l_site` keep the mapping an induced
    /// embedding? Both directions of the adjacency biconditional are checked
    /// against every placed vertex.
    pub fn is_valid_mapping(&self, g_vertex: usize, l_site: usize) -> Result<bool> {
        self.check_free(g_vertex, l_site)?;
        Ok(self.consistent(g_vertex, l_site))
    }

    fn consistent(&self, g_vertex: usize, l_site: usize) -> bool {
        let lattice = self.layout.graph();
        self.order
            .iter()
            .all(|&(u, site)| self.graph.has_edge(u, g_vertex) == lattice.has_edge(site, l_site))
    }

    /// Places `g_vertex` on `l_site` without the validity check.
    pub fn assign(&mut self, g_vertex: usize, l_site: usize) -> Result<()> {
        self.check_free(g_vertex, l_site)?;
        self.site_of[g_vertex] = Some(l_site);
        self.vertex_at[l_site] = Some(g_vertex);
        self.order.push((g_vertex, l_site));
        Ok(())
    }

    /// Injectivity plus the induced-isomorphism biconditional over all pairs.
    pub fn is_induced_embedding(&self) -> bool {
        let lattice = self.layout.graph();
        let injective = {
            let mut sites: Vec<usize> = self.order.iter().map(|&(_, l)| l).collect();
            sites.sort_unstable();
            sites.windows(2).all(|w| w[0] != w[1])
        };
        injective
            && self.order.iter().enumerate().all(|(i, &(u, lu))| {
                self.order[i + 1..]
                    .iter()
                    .all(|&(v, lv)| self.graph.has_edge(u, v) == lattice.has_edge(lu, lv))
            })
    }

    /// Lattice coordinates of the local vertices of `sub`, which must come
    /// from [`mapped_subgraph`] on this mapping.
    pub fn positions(&self, sub: &InducedSubgraph) -> Vec<[f64; 2]> {
        sub.original
            .iter()
            .map(|&v| self.layout.sites()[self.site_of[v].expect("vertex of mapped subgraph is mapped")])
            .collect()
    }

    pub fn to_file(&self, graph_ref: Option<String>, layout_ref: Option<String>) -> MappingFile {
        MappingFile {
            pairs: self.order.iter().map(|&(g, l)| [g, l]).collect(),
            graph: graph_ref,
            layout: layout_ref,
        }
    }
}

/// `{"pairs": [[g_vertex, l_site], ..], "graph": .., "layout": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingFile {
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<String>,
}

/// Incremental driver for the mapping. [`GlsMapper::step`] processes one
/// worklist entry, which lets callers observe intermediate states.
#[derive(Debug, Clone)]
pub struct GlsMapper<'a> {
    mapping: LatticeMapping<'a>,
    // stack: the most recently placed vertex is expanded next
    worklist: Vec<usize>,
    blocked: Vec<bool>,
    options: GlsOptions,
}

impl<'a> GlsMapper<'a> {
    pub fn new(
        graph: &'a WeightedGraph,
        layout: &'a LatticeLayout,
        start_vertex: usize,
        options: GlsOptions,
    ) -> Result<Self> {
        if start_vertex >= graph.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: start_vertex,
                count: graph.vertex_count(),
            });
        }
        let center = crate::lattice::lattice_center(layout)?;
        let mut mapping = LatticeMapping::new(graph, layout);
        mapping.assign(start_vertex, center)?;
        Ok(Self {
            mapping,
            worklist: vec![start_vertex],
            blocked: vec![false; graph.vertex_count()],
            options,
        })
    }

    pub fn mapping(&self) -> &LatticeMapping<'a> {
        &self.mapping
    }

    fn full(&self) -> bool {
        self.options.max_size.is_some_and(|cap| self.mapping.len() >= cap)
    }

    pub fn is_done(&self) -> bool {
        self.worklist.is_empty() || self.full()
    }

    /// Expands the newest worklist vertex. Returns `false` once finished.
    pub fn step(&mut self) -> bool {
        if self.is_done() {
            return false;
        }
        let v = self.worklist.pop().expect("worklist checked nonempty");
        let site = self.mapping.site_of(v).expect("worklist vertices are mapped");
        let graph = self.mapping.graph;
        let lattice = self.mapping.layout.graph();

        let mut candidates: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.mapping.site_of(u).is_none() && !self.blocked[u])
            .collect();
        let keys: Vec<Vec<usize>> = candidates
            .iter()
            .map(|&u| self.rank_key(u))
            .collect();
        let mut idx: Vec<usize> = (0..candidates.len()).collect();
        idx.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(candidates[a].cmp(&candidates[b])));
        candidates = idx.into_iter().map(|i| candidates[i]).collect();

        let mut free: Vec<usize> = lattice
            .neighbors(site)
            .iter()
            .copied()
            .filter(|&l| self.mapping.vertex_at(l).is_none())
            .collect();

        for u in candidates {
            if self.full() {
                break;
            }
            match free.iter().position(|&f| self.mapping.consistent(u, f)) {
                Some(i) => {
                    let f = free.remove(i);
                    self.mapping
                        .assign(u, f)
                        .expect("candidate vertex and site are free");
                    self.worklist.push(u);
                }
                // u neighbors v, so it can only ever sit next to v's site;
                // those choices only shrink from here on.
                None => self.blocked[u] = true,
            }
        }
        true
    }

    fn rank_key(&self, u: usize) -> Vec<usize> {
        let graph = self.mapping.graph;
        self.options
            .policy
            .keys
            .iter()
            .map(|key| match key {
                RankKey::MappedNeighbors => graph
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| self.mapping.site_of(w).is_some())
                    .count(),
                RankKey::Degree => graph.degree(u),
                RankKey::LowDegree => usize::MAX - graph.degree(u),
            })
            .collect()
    }

    pub fn run(mut self) -> LatticeMapping<'a> {
        while self.step() {}
        self.mapping
    }
}

/// Runs the mapping to completion from `start_vertex`.
pub fn gls_map<'a>(
    g: &'a WeightedGraph,
    layout: &'a LatticeLayout,
    start_vertex: usize,
    options: GlsOptions,
) -> Result<LatticeMapping<'a>> {
    Ok(GlsMapper::new(g, layout, start_vertex, options)?.run())
}

/// Induced subgraph of the source graph on the mapped vertices (ascending
/// source index), with original weights.
pub fn mapped_subgraph(m: &LatticeMapping<'_>) -> InducedSubgraph {
    induced_subgraph(m.graph, &m.vertices()).expect("mapped vertices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::erdos_renyi;
    use crate::lattice::{build_lattice, LatticeKind};

    /// Worked example graph: n0..n3 form a K4 and e (vertex 4) touches n1, n2.
    fn toy_graph() -> WeightedGraph {
        WeightedGraph::unweighted(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (2, 4)],
        )
        .unwrap()
    }

    // Triangular 3x3 at spacing 2 reproduces the worked-example patch around
    // its center: l0 = 4, l1 = 3, l4 = 5, l2 = 7, l3 = 8.
    const L0: usize = 4;
    const L1: usize = 3;
    const L2: usize = 7;
    const L3: usize = 8;
    const L4: usize = 5;

    fn toy_lattice() -> LatticeLayout {
        build_lattice(LatticeKind::Triangular, 3, 3, 2.0).unwrap()
    }

    #[test]
    fn toy_lattice_matches_figure() {
        let l = toy_lattice();
        assert_eq!(l.center(), L0);
        let mut n: Vec<usize> = l.graph().neighbors(L0).to_vec();
        n.sort();
        let mut want = vec![L1, L2, L3, L4, 1, 2];
        want.sort();
        assert_eq!(n, want);
        assert!(l.graph().has_edge(L3, L4));
        assert!(!l.graph().has_edge(L2, L4));
        assert!(!l.graph().has_edge(L1, L3) && !l.graph().has_edge(L1, L4));
    }

    #[test]
    fn worked_example_validity_steps() {
        let g = toy_graph();
        let l = toy_lattice();
        let mut m = LatticeMapping::new(&g, &l);
        assert!(m.is_valid_mapping(0, L0).unwrap());
        m.assign(0, L0).unwrap();
        assert!(m.is_valid_mapping(1, L4).unwrap());
        m.assign(1, L4).unwrap();
        assert!(m.is_valid_mapping(2, L3).unwrap());
        m.assign(2, L3).unwrap();
        assert!(!m.is_valid_mapping(3, L2).unwrap());
        assert!(!m.is_valid_mapping(3, L1).unwrap());
        assert!(m.is_induced_embedding());
    }

    #[test]
    fn validity_contract_errors() {
        let g = toy_graph();
        let l = toy_lattice();
        let mut m = LatticeMapping::new(&g, &l);
        m.assign(0, L0).unwrap();
        assert!(matches!(m.is_valid_mapping(0, L1), Err(Error::Contract(_))));
        assert!(matches!(m.is_valid_mapping(1, L0), Err(Error::Contract(_))));
        assert!(m.is_valid_mapping(9, L1).is_err());
    }

    #[test]
    fn worked_example_single_iteration() {
        let g = toy_graph();
        let l = toy_lattice();
        let mut mapper = GlsMapper::new(&g, &l, 0, GlsOptions::default()).unwrap();
        assert!(mapper.step());
        assert_eq!(mapper.mapping().vertices(), vec![0, 1, 2]);
        assert!(mapper.mapping().is_induced_embedding());
        // the figure's patch has no room for e either
        assert_eq!(mapper.run().vertices(), vec![0, 1, 2]);
    }

    #[test]
    fn worked_example_continues_on_larger_lattice() {
        let g = toy_graph();
        let l = build_lattice(LatticeKind::Triangular, 5, 5, 2.0).unwrap();
        let mut mapper = GlsMapper::new(&g, &l, 0, GlsOptions::default()).unwrap();
        mapper.step();
        assert_eq!(mapper.mapping().vertices(), vec![0, 1, 2]);
        let full = mapper.run();
        assert_eq!(full.site_of(3), None);
        assert_eq!(full.vertices(), vec![0, 1, 2, 4]);
        assert!(full.is_induced_embedding());
    }

    #[test]
    fn worked_example_subgraph_is_triangle() {
        let g = toy_graph();
        let l = toy_lattice();
        let mut mapper = GlsMapper::new(&g, &l, 0, GlsOptions::default()).unwrap();
        mapper.step();
        let sub = mapped_subgraph(mapper.mapping());
        assert_eq!(sub.original, vec![0, 1, 2]);
        assert_eq!(sub.graph.edge_count(), 3);
    }

    #[test]
    fn single_vertex_maps_to_center() {
        let g = WeightedGraph::unweighted(1, &[]).unwrap();
        let l = build_lattice(LatticeKind::Square, 3, 3, 5.0).unwrap();
        let m = gls_map(&g, &l, 0, GlsOptions::default()).unwrap();
        assert_eq!(m.pairs(), &[(0, 4)]);
    }

    #[test]
    fn k4_maps_three_vertices_on_triangular() {
        let k4 = WeightedGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for size in [3, 5, 7] {
            let l = build_lattice(LatticeKind::Triangular, size, size, 5.0).unwrap();
            for start in 0..4 {
                let m = gls_map(&k4, &l, start, GlsOptions::default()).unwrap();
                assert_eq!(m.len(), 3);
            }
        }
    }

    #[test]
    fn rejects_bad_start() {
        let g = toy_graph();
        let l = toy_lattice();
        assert!(gls_map(&g, &l, 5, GlsOptions::default()).is_err());
    }

    #[test]
    fn empty_mapping_subgraph() {
        let g = toy_graph();
        let l = toy_lattice();
        let m = LatticeMapping::new(&g, &l);
        assert!(mapped_subgraph(&m).graph.is_empty());
    }

    #[test]
    fn independent_pair_subgraph() {
        let g = WeightedGraph::unweighted(2, &[]).unwrap();
        let l = build_lattice(LatticeKind::Square, 3, 3, 5.0).unwrap();
        let mut m = LatticeMapping::new(&g, &l);
        m.assign(0, 0).unwrap();
        m.assign(1, 8).unwrap();
        let sub = mapped_subgraph(&m);
        assert_eq!(sub.graph.vertex_count(), 2);
        assert_eq!(sub.graph.edge_count(), 0);
        assert_eq!(m.positions(&sub), vec![[0.0, 0.0], [10.0, 10.0]]);
    }

    #[test]
    fn max_size_caps_growth() {
        let g = WeightedGraph::unweighted(30, &[]).unwrap();
        let l = build_lattice(LatticeKind::Triangular, 6, 6, 5.0).unwrap();
        // edgeless graph: neighbors never exist, only the seed is placed
        assert_eq!(gls_map(&g, &l, 3, GlsOptions::default()).unwrap().len(), 1);
        let g = erdos_renyi(40, 0.3, 5).unwrap();
        let opts = GlsOptions {
            max_size: Some(4),
            ..GlsOptions::default()
        };
        for start in 0..40 {
            assert!(gls_map(&g, &l, start, opts.clone()).unwrap().len() <= 4);
        }
    }

    #[test]
    fn growth_is_monotone_and_deterministic() {
        let g = erdos_renyi(50, 0.2, 11).unwrap();
        let l = build_lattice(LatticeKind::Triangular, 7, 7, 5.0).unwrap();
        let mut mapper = GlsMapper::new(&g, &l, 7, GlsOptions::default()).unwrap();
        let mut last = mapper.mapping().pairs().to_vec();
        while mapper.step() {
            let now = mapper.mapping().pairs();
            assert!(now.len() >= last.len());
            assert_eq!(&now[..last.len()], &last[..]);
            last = now.to_vec();
        }
        let a = gls_map(&g, &l, 7, GlsOptions::default()).unwrap();
        let b = gls_map(&g, &l, 7, GlsOptions::default()).unwrap();
        assert_eq!(a.pairs(), b.pairs());
        assert_eq!(a.pairs()[0], (7, l.center()));
    }

    #[test]
    fn mapping_file_shape() {
        let g = toy_graph();
        let l = toy_lattice();
        let m = gls_map(&g, &l, 0, GlsOptions::default()).unwrap();
        let json = serde_json::to_string(&m.to_file(Some("g.json".into()), None)).unwrap();
        assert!(json.starts_with(r#"{"pairs":[[0,4],"#));
        assert!(!json.contains("layout"));
    }

    #[test]
    fn ranking_direction_decides_first_site() {
        // vertex 1 has degree 3, vertex 2 degree 1; both hang off vertex 0
        let g = WeightedGraph::unweighted(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let l = build_lattice(LatticeKind::Square, 3, 3, 1.0).unwrap();
        let high = gls_map(&g, &l, 0, GlsOptions::default()).unwrap();
        assert_eq!(high.site_of(1), Some(1));
        assert_eq!(high.site_of(2), Some(3));
        let low = GlsOptions {
            policy: RankingPolicy::low_degree_first(),
            max_size: None,
        };
        let low = gls_map(&g, &l, 0, low).unwrap();
        assert_eq!(low.site_of(2), Some(1));
        assert_eq!(low.site_of(1), Some(3));
    }
}
