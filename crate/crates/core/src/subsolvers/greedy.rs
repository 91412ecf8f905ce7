//! Min-degree greedy baseline.

use crate::graph::{VertexSet, WeightedGraph};

/// Repeatedly takes the vertex of minimum residual degree (ties: heavier,
/// then lower index) and deletes its closed neighborhood. The result is a
/// maximal independent set.
pub fn greedy_mis(g: &WeightedGraph) -> VertexSet {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut remaining = n;
    let mut picked = Vec::new();
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by(|&a, &b| {
                degree[a]
                    .cmp(&degree[b])
                    .then(g.weight(b).total_cmp(&g.weight(a)))
                    .then(a.cmp(&b))
            })
            .expect("remaining vertices exist");
        picked.push(v);
        let mut gone = vec![v];
        gone.extend(g.neighbors(v).iter().copied().filter(|&u| alive[u]));
        for &x in &gone {
            alive[x] = false;
        }
        remaining -= gone.len();
        for &x in &gone {
            for &y in g.neighbors(x) {
                if alive[y] {
                    degree[y] -= 1;
                }
            }
        }
    }
    picked.sort_unstable();
    let w = g.weight_of(&picked);
    VertexSet::from_sorted(picked, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{erdos_renyi, is_maximal_independent};
    use proptest::prelude::*;

    #[test]
    fn star_takes_leaves() {
        let g = WeightedGraph::unweighted(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(greedy_mis(&g).members(), &[1, 2, 3, 4]);
    }

    #[test]
    fn triangle_takes_one() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(greedy_mis(&g).members(), &[0]);
    }

    #[test]
    fn c5_takes_two() {
        // all degree 2: pick 0, drop 1 and 4, path 2-3 remains, pick 2
        let g = WeightedGraph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(greedy_mis(&g).members(), &[0, 2]);
    }

    #[test]
    fn ties_prefer_heavier() {
        let g = WeightedGraph::new(2, &[(0, 1)], Some(vec![0.3, 0.8])).unwrap();
        assert_eq!(greedy_mis(&g).members(), &[1]);
    }

    #[test]
    fn empty_graph() {
        assert!(greedy_mis(&WeightedGraph::empty()).is_empty());
    }

    proptest! {
        #[test]
        fn output_is_maximal(n in 0usize..60, p in 0.0f64..1.0, seed: u64) {
            let g = erdos_renyi(n, p, seed).unwrap();
            let s = greedy_mis(&g);
            prop_assert!(is_maximal_independent(&g, &s).unwrap());
        }
    }
}
