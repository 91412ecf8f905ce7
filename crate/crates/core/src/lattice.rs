//! Precalibrated atom layouts used as embedding targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distance, unit_disk_graph, WeightedGraph};

/// Default nearest-neighbor spacing in µm.
pub const DEFAULT_SPACING: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Triangular,
    Square,
    King,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [LatticeKind::Triangular, LatticeKind::Square, LatticeKind::King];

    /// Unit-disk radius in units of the spacing. Each sits strictly between
    /// the nearest and next-nearest neighbor distances of its geometry.
    pub fn radius_factor(self) -> f64 {
        match self {
            LatticeKind::Triangular | LatticeKind::Square => 1.2,
            LatticeKind::King => 1.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Triangular => "triangular",
            LatticeKind::Square => "square",
            LatticeKind::King => "king",
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triangular" | "tri" => Ok(LatticeKind::Triangular),
            "square" => Ok(LatticeKind::Square),
            "king" => Ok(LatticeKind::King),
            other => Err(Error::InvalidParameter(format!("unknown lattice kind '{other}'"))),
        }
    }
}

/// A set of trap sites with the unit-disk adjacency induced by `radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeLayout {
    kind: LatticeKind,
    rows: usize,
    cols: usize,
    spacing: f64,
    radius: f64,
    sites: Vec<[f64; 2]>,
    graph: WeightedGraph,
    center: usize,
}

/// Builds a `rows x cols` layout. Site `r * cols + c` sits at column `c` of
/// row `r`; odd triangular rows are shifted right by half a spacing.
pub fn build_lattice(kind: LatticeKind, rows: usize, cols: usize, spacing: f64) -> Result<LatticeLayout> {
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lattice spacing must be positive, got {spacing}"
        )));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!(
            "lattice needs at least one row and column, got {rows}x{cols}"
        )));
    }
    let pitch = match kind {
        LatticeKind::Triangular => spacing * 3f64.sqrt() / 2.0,
        LatticeKind::Square | LatticeKind::King => spacing,
    };
    let mut sites = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let shift = if kind == LatticeKind::Triangular && r % 2 == 1 {
            spacing / 2.0
        } else {
            0.0
        };
        for c in 0..cols {
            sites.push([c as f64 * spacing + shift, r as f64 * pitch]);
        }
    }
    let radius = kind.radius_factor() * spacing;
    let graph = unit_disk_graph(&sites, radius)?;
    let center = centroid_site(&sites);
    Ok(LatticeLayout {
        kind,
        rows,
        cols,
        spacing,
        radius,
        sites,
        graph,
        center,
    })
}

fn centroid_site(sites: &[[f64; 2]]) -> usize {
    let n = sites.len() as f64;
    let cx = sites.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = sites.iter().map(|p| p[1]).sum::<f64>() / n;
    let c = [cx, cy];
    let mut best = 0;
    let mut best_d = distance(&sites[0], &c);
    for (i, p) in sites.iter().enumerate().skip(1) {
        let d = distance(p, &c);
        // strict improvement beyond rounding noise keeps the lowest index on ties
        if d < best_d - 1e-9 * best_d.max(1.0) {
            best = i;
            best_d = d;
        }
    }
    best
}

/// Site closest to the centroid, lowest index on ties.
pub fn lattice_center(layout: &LatticeLayout) -> Result<usize> {
    if layout.sites.is_empty() {
        return Err(Error::InvalidParameter("empty layout has no center".into()));
    }
    Ok(layout.center)
}

impl LatticeLayout {
    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sites(&self) -> &[[f64; 2]] {
        &self.sites
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Unit-disk adjacency over the sites.
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn to_file(&self) -> LayoutFile {
        let g = self.graph.to_file();
        LayoutFile {
            n: g.n,
            edges: g.edges,
            weights: None,
            coords: self.sites.clone(),
            radius: self.radius,
            kind: Some(self.kind),
            spacing: Some(self.spacing),
            rows: Some(self.rows),
            cols: Some(self.cols),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("layout serialization cannot fail")
    }
}

/// Graph file format extended with site coordinates and the disk radius.
/// The remaining optional fields let a file be rebuilt into a layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub coords: Vec<[f64; 2]>,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<LatticeKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
}

impl LayoutFile {
    /// Rebuilds the layout from its generating parameters and checks that the
    /// stored coordinates agree.
    pub fn to_layout(&self) -> Result<LatticeLayout> {
        let (Some(kind), Some(rows), Some(cols), Some(spacing)) = (self.kind, self.rows, self.cols, self.spacing)
        else {
            return Err(Error::Format("layout file lacks kind/rows/cols/spacing".into()));
        };
        let layout = build_lattice(kind, rows, cols, spacing)?;
        let matches = layout.sites.len() == self.coords.len()
            && layout
                .sites
                .iter()
                .zip(&self.coords)
                .all(|(a, b)| distance(a, b) <= 1e-9 * spacing);
        if !matches {
            return Err(Error::Format("layout coordinates disagree with kind/rows/cols/spacing".into()));
        }
        Ok(layout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_clique(g: &WeightedGraph) -> usize {
        // brute force: extend cliques vertex by vertex
        fn grow(g: &WeightedGraph, clique: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(clique.len());
            for v in from..g.vertex_count() {
                if clique.iter().all(|&u| g.has_edge(u, v)) {
                    clique.push(v);
                    grow(g, clique, v + 1, best);
                    clique.pop();
                }
            }
        }
        let mut best = 0;
        grow(g, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn square_two_by_two() {
        let l = build_lattice(LatticeKind::Square, 2, 2, 5.0).unwrap();
        assert_eq!(l.site_count(), 4);
        assert_eq!(l.graph().edge_count(), 4);
        assert!((0..4).all(|v| l.graph().degree(v) == 2));
    }

    #[test]
    fn triangular_single_row_is_path() {
        let l = build_lattice(LatticeKind::Triangular, 1, 3, 5.0).unwrap();
        assert_eq!(l.graph().edge_count(), 2);
        assert!(l.sites().iter().all(|p| p[1] == 0.0));
    }

    #[test]
    fn king_center_degree() {
        let l = build_lattice(LatticeKind::King, 3, 3, 5.0).unwrap();
        let c = lattice_center(&l).unwrap();
        assert_eq!(c, 4);
        let brute = l
            .sites()
            .iter()
            .enumerate()
            .filter(|&(i, p)| i != c && distance(p, &l.sites()[c]) <= 1.5 * 5.0)
            .count();
        assert_eq!(brute, 8);
        assert_eq!(l.graph().degree(c), 8);
    }

    #[test]
    fn interior_degrees() {
        for (kind, deg) in [(LatticeKind::Triangular, 6), (LatticeKind::Square, 4), (LatticeKind::King, 8)] {
            let l = build_lattice(kind, 6, 6, 5.0).unwrap();
            for r in 1..5 {
                for c in 1..5 {
                    assert_eq!(l.graph().degree(r * 6 + c), deg, "{kind} ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn centers() {
        let l = build_lattice(LatticeKind::Square, 3, 3, 5.0).unwrap();
        assert_eq!(lattice_center(&l).unwrap(), 4);
        let l = build_lattice(LatticeKind::Triangular, 1, 1, 5.0).unwrap();
        assert_eq!(lattice_center(&l).unwrap(), 0);
        let l = build_lattice(LatticeKind::Square, 2, 2, 5.0).unwrap();
        assert_eq!(lattice_center(&l).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_lattice(LatticeKind::Square, 2, 2, 0.0).is_err());
        assert!(build_lattice(LatticeKind::Square, 2, 2, -1.0).is_err());
        assert!(build_lattice(LatticeKind::Square, 0, 2, 5.0).is_err());
    }

    #[test]
    fn max_cliques() {
        for size in 2..=6 {
            let tri = build_lattice(LatticeKind::Triangular, size, size, 5.0).unwrap();
            let sq = build_lattice(LatticeKind::Square, size, size, 5.0).unwrap();
            let king = build_lattice(LatticeKind::King, size, size, 5.0).unwrap();
            assert_eq!(max_clique(tri.graph()), 3);
            assert_eq!(max_clique(sq.graph()), 2);
            assert_eq!(max_clique(king.graph()), 4);
        }
    }

    #[test]
    fn adjacency_is_scale_invariant() {
        for kind in LatticeKind::ALL {
            let a = build_lattice(kind, 5, 4, 5.0).unwrap();
            let b = build_lattice(kind, 5, 4, 0.37).unwrap();
            assert_eq!(a.graph(), b.graph());
            let scaled: Vec<[f64; 2]> = a.sites().iter().map(|p| [p[0] * 3.1, p[1] * 3.1]).collect();
            assert_eq!(&unit_disk_graph(&scaled, a.radius() * 3.1).unwrap(), a.graph());
        }
    }

    #[test]
    fn layout_file_round_trip() {
        let l = build_lattice(LatticeKind::King, 3, 4, 4.0).unwrap();
        let file: LayoutFile = serde_json::from_str(&l.to_json()).unwrap();
        assert_eq!(file.coords.len(), 12);
        assert_eq!(file.radius, 6.0);
        assert_eq!(file.to_layout().unwrap(), l);
        assert_eq!("Square".parse::<LatticeKind>().unwrap(), LatticeKind::Square);
        assert!("hex".parse::<LatticeKind>().is_err());
    }
}
