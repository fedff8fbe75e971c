//! The graph of communities: every community of the underlying graph becomes
//! one node; weights accumulate over ordered member pairs, so an inter edge
//! carries the mass of both directions and an intra weight is the community's
//! internal ordered-pair mass. Summing all entries reproduces the original
//! total weight exactly.

use std::collections::HashMap;
use std::fmt::Write;

use crate::{GraphError, KahanSum, Partition, WeightedGraph};

#[derive(Clone, Debug)]
pub struct CommunityGraph {
    /// Member count per community (compact ids).
    sizes: Vec<usize>,
    /// Internal ordered-pair weight per community.
    intra: Vec<f64>,
    /// `(a, b, weight)` with a < b; weight covers both orders.
    edges: Vec<(u32, u32, f64)>,
}

impl CommunityGraph {
    pub fn community_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn intra_weights(&self) -> &[f64] {
        &self.intra
    }

    pub fn edges(&self) -> &[(u32, u32, f64)] {
        &self.edges
    }

    /// Total mass: intra plus inter entries; equals the source graph's W.
    pub fn total_weight(&self) -> f64 {
        let mut acc: KahanSum = self.intra.iter().copied().collect();
        for &(_, _, w) in &self.edges {
            acc.add(w);
        }
        acc.value()
    }
}

pub fn build_community_graph(
    g: &WeightedGraph,
    p: &Partition,
) -> Result<CommunityGraph, GraphError> {
    if p.node_count() != g.node_count() {
        return Err(GraphError::PartitionSize {
            partition: p.node_count(),
            graph: g.node_count(),
        });
    }
    let (compact, k) = p.compact();
    let mut sizes = vec![0usize; k];
    for &l in compact.labels() {
        sizes[l as usize] += 1;
    }
    let mut intra = vec![0f64; k];
    let mut cross: HashMap<(u32, u32), f64> = HashMap::new();
    for x in 0..g.node_count() as u32 {
        let cx = compact.label(x);
        for (y, w) in g.neighbors(x) {
            let cy = compact.label(y);
            if cx == cy {
                // ordered pairs: (x,y) and (y,x) both visited, loops once
                intra[cx as usize] += w;
            } else {
                *cross.entry((cx.min(cy), cx.max(cy))).or_insert(0.0) += w;
            }
        }
    }
    let mut edges: Vec<(u32, u32, f64)> = cross.into_iter().map(|((a, b), w)| (a, b, w)).collect();
    edges.sort_unstable_by_key(|&(a, b, _)| (a, b));
    Ok(CommunityGraph {
        sizes,
        intra,
        edges,
    })
}

const MIN_NODE_WIDTH: f64 = 0.25;
const MAX_NODE_WIDTH: f64 = 2.5;
const MIN_PENWIDTH: f64 = 0.4;
const MAX_PENWIDTH: f64 = 8.0;

/// Renders an undirected DOT graph with node `width` scaled by the square
/// root of the community size and edge `penwidth` scaled by weight, both
/// clamped from below. Output ordering is deterministic.
pub fn export_dot(cg: &CommunityGraph) -> String {
    let max_size = cg.sizes.iter().copied().max().unwrap_or(1).max(1) as f64;
    let max_edge = cg
        .edges
        .iter()
        .map(|&(_, _, w)| w)
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut out = String::from("graph communities {\n");
    out.push_str("  node [shape=circle, fixedsize=true];\n");
    for (id, &size) in cg.sizes.iter().enumerate() {
        let width = (MAX_NODE_WIDTH * (size as f64 / max_size).sqrt()).max(MIN_NODE_WIDTH);
        writeln!(
            out,
            "  {id} [width={width:.3}, label=\"{id}\\n({size})\"];"
        )
        .unwrap();
    }
    for &(a, b, w) in &cg.edges {
        let penwidth = (MAX_PENWIDTH * w / max_edge).max(MIN_PENWIDTH);
        writeln!(out, "  {a} -- {b} [penwidth={penwidth:.3}];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use crate::GraphBuilder;

    use super::*;

    fn two_triangles() -> WeightedGraph {
        let mut b = GraphBuilder::new(6);
        for &(u, v) in &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            b.add_edge(u, v, 1.0);
        }
        b.build()
    }

    fn bridged_triangles() -> WeightedGraph {
        let mut b = GraphBuilder::new(6);
        for &(u, v) in &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)] {
            b.add_edge(u, v, 1.0);
        }
        b.build()
    }

    #[test]
    fn disjoint_triangles_fold_to_two_isolated_nodes() {
        let g = two_triangles();
        let p = Partition::from_labels(vec![0, 0, 0, 1, 1, 1]);
        let cg = build_community_graph(&g, &p).unwrap();
        assert_eq!(cg.community_count(), 2);
        assert_eq!(cg.sizes(), &[3, 3]);
        assert_eq!(cg.intra_weights(), &[6.0, 6.0]);
        assert!(cg.edges().is_empty());
        assert_eq!(cg.total_weight(), g.total_weight());
    }

    #[test]
    fn bridge_edge_counts_both_orders() {
        let g = bridged_triangles();
        let p = Partition::from_labels(vec![0, 0, 0, 1, 1, 1]);
        let cg = build_community_graph(&g, &p).unwrap();
        assert_eq!(cg.edges(), &[(0, 1, 2.0)]);
        assert_eq!(cg.total_weight(), g.total_weight());
    }

    #[test]
    fn single_community() {
        let g = two_triangles();
        let cg = build_community_graph(&g, &Partition::single_community(6)).unwrap();
        assert_eq!(cg.community_count(), 1);
        assert_eq!(cg.sizes(), &[6]);
        assert_eq!(cg.intra_weights(), &[12.0]);
    }

    #[test]
    fn partition_size_mismatch_is_error() {
        let g = two_triangles();
        let p = Partition::from_labels(vec![0, 0, 0]);
        assert!(matches!(
            build_community_graph(&g, &p),
            Err(GraphError::PartitionSize { .. })
        ));
    }

    #[test]
    fn dot_shapes() {
        let g = two_triangles();
        let one = build_community_graph(&g, &Partition::single_community(6)).unwrap();
        let dot = export_dot(&one);
        assert!(dot.starts_with("graph communities {"));
        assert_eq!(dot.matches(" -- ").count(), 0);
        assert_eq!(dot.matches("width=").count(), 1 + dot.matches("penwidth=").count());

        let two = build_community_graph(
            &bridged_triangles(),
            &Partition::from_labels(vec![0, 0, 0, 1, 1, 1]),
        )
        .unwrap();
        let dot = export_dot(&two);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("0 -- 1 [penwidth="));
    }
}
