//! Exhaustive modularity maximization over every set partition (Bell-number
//! many), for desk-size graphs only. Exact optimization is NP-complete, so
//! this exists purely as the ground truth the heuristics are checked against.

use satcomm_graph::{BipartiteGraph, Partition, WeightedGraph};

use crate::{modularity, modularity_bipartite, ModularityError, ModularityEval};

pub const DEFAULT_ORACLE_LIMIT: usize = 10;

/// Visits every restricted-growth labeling of n items, i.e. every set
/// partition exactly once, in a fixed order starting from all-in-one.
fn for_each_partition(n: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(labels: &mut Vec<u32>, next_free: u32, n: usize, visit: &mut impl FnMut(&[u32])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        for label in 0..=next_free {
            labels.push(label);
            rec(labels, next_free.max(label + 1), n, visit);
            labels.pop();
        }
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    rec(&mut Vec::with_capacity(n), 0, n, &mut visit);
}

fn argmax<E>(
    n: usize,
    max_nodes: usize,
    mut eval: impl FnMut(&Partition) -> Result<ModularityEval, E>,
) -> Result<(Partition, ModularityEval), E> {
    assert!(n <= max_nodes);
    let mut best: Option<(Partition, ModularityEval)> = None;
    let mut failed = None;
    for_each_partition(n, |labels| {
        if failed.is_some() {
            return;
        }
        let p = Partition::from_labels(labels.to_vec());
        match eval(&p) {
            Ok(e) => {
                if best.as_ref().is_none_or(|(_, b)| e.q > b.q) {
                    best = Some((p, e));
                }
            }
            Err(err) => failed = Some(err),
        }
    });
    match failed {
        Some(err) => Err(err),
        None => Ok(best.expect("at least one partition visited")),
    }
}

pub fn brute_force_optimal(
    g: &WeightedGraph,
    max_nodes: usize,
) -> Result<(Partition, ModularityEval), ModularityError> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(ModularityError::TooManyNodes { nodes: n, max: max_nodes });
    }
    if g.total_weight() <= 0.0 {
        return Ok((
            Partition::singletons(n),
            ModularityEval {
                q: 0.0,
                degenerate: true,
            },
        ));
    }
    argmax(n, max_nodes, |p| modularity(g, p))
}

pub fn brute_force_optimal_bipartite(
    g: &BipartiteGraph,
    max_nodes: usize,
) -> Result<(Partition, ModularityEval), ModularityError> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(ModularityError::TooManyNodes { nodes: n, max: max_nodes });
    }
    if g.total_weight() <= 0.0 {
        return Ok((
            Partition::singletons(n),
            ModularityEval {
                q: 0.0,
                degenerate: true,
            },
        ));
    }
    argmax(n, max_nodes, |p| modularity_bipartite(g, p))
}

#[cfg(test)]
mod tests {
    use satcomm_graph::{BipartiteBuilder, GraphBuilder};

    use super::*;

    #[test]
    fn partition_count_is_the_bell_number() {
        let mut count = 0usize;
        for_each_partition(5, |_| count += 1);
        assert_eq!(count, 52); // B(5)

        let mut singleton = 0usize;
        for_each_partition(1, |labels| {
            assert_eq!(labels, &[0]);
            singleton += 1;
        });
        assert_eq!(singleton, 1);
    }

    #[test]
    fn two_triangles_optimum_is_component_split() {
        let mut b = GraphBuilder::new(6);
        for &(u, v) in &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            b.add_edge(u, v, 1.0);
        }
        let g = b.build();
        let (p, eval) = brute_force_optimal(&g, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!((eval.q - 0.5).abs() < 1e-12);
        let (compact, k) = p.compact();
        assert_eq!(k, 2);
        assert_eq!(compact.labels(), &[0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn single_edge_optimum_is_one_community() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1, 1.0);
        let g = b.build();
        let (p, eval) = brute_force_optimal(&g, DEFAULT_ORACLE_LIMIT).unwrap();
        // splitting scores 0 - (1/2)^2 - (1/2)^2 < 0
        assert_eq!(eval.q, 0.0);
        assert_eq!(p.num_communities(), 1);
    }

    #[test]
    fn edgeless_graph_degenerate() {
        let g = GraphBuilder::new(4).build();
        let (p, eval) = brute_force_optimal(&g, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!(eval.degenerate);
        assert_eq!(eval.q, 0.0);
        assert_eq!(p.num_communities(), 4);
    }

    #[test]
    fn node_cap_enforced() {
        let g = GraphBuilder::new(11).build();
        assert!(matches!(
            brute_force_optimal(&g, DEFAULT_ORACLE_LIMIT),
            Err(ModularityError::TooManyNodes { nodes: 11, max: 10 })
        ));
    }

    #[test]
    fn bipartite_two_clause_optimum() {
        // CVIG of {(x1 v x2), (x3 v x4)}
        let mut b = BipartiteBuilder::new(4, 2);
        b.add_edge(0, 0, 0.5);
        b.add_edge(1, 0, 0.5);
        b.add_edge(2, 1, 0.5);
        b.add_edge(3, 1, 0.5);
        let g = b.build();
        let (p, eval) = brute_force_optimal_bipartite(&g, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!((eval.q - 0.5).abs() < 1e-12);
        let (compact, k) = p.compact();
        assert_eq!(k, 2);
        // {x1, x2, c1} and {x3, x4, c2}
        assert_eq!(compact.labels(), &[0, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn bipartite_single_clause_optimum_is_zero() {
        let mut b = BipartiteBuilder::new(2, 1);
        b.add_edge(0, 0, 0.5);
        b.add_edge(1, 0, 0.5);
        let g = b.build();
        let (_, eval) = brute_force_optimal_bipartite(&g, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!(eval.q.abs() < 1e-12);
    }
}
