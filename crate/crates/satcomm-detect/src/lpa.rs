//! Label propagation: every node repeatedly adopts the label with the
//! highest total edge weight among its neighbors, until each node already
//! holds a maximal label. Near linear per sweep, weaker bounds than Louvain.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcomm_graph::{Partition, WeightedGraph};
use satcomm_modularity::modularity;

use crate::{DetectOptions, ModularityReport};

pub fn label_propagation(g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport) {
    let n = g.node_count();
    if n == 0 || g.total_weight() <= 0.0 {
        let partition = Partition::singletons(n);
        let report = ModularityReport {
            q: 0.0,
            num_communities: n,
            largest_fraction: if n == 0 { 0.0 } else { 1.0 / n as f64 },
            iterations: 0,
            sweep_capped: false,
            degenerate: true,
        };
        return (partition, report);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut weight_to: Vec<f64> = vec![0.0; n];
    let mut seen: Vec<u32> = Vec::new();
    let mut winners: Vec<u32> = Vec::new();

    let mut sweeps = 0usize;
    let capped = loop {
        sweeps += 1;
        let mut changed = false;
        order.shuffle(&mut rng);
        for &i in &order {
            for (j, w) in g.neighbors(i) {
                if j == i || w <= 0.0 {
                    continue;
                }
                let l = labels[j as usize];
                if weight_to[l as usize] == 0.0 {
                    seen.push(l);
                }
                weight_to[l as usize] += w;
            }
            if seen.is_empty() {
                continue; // isolated node keeps its own label
            }
            let top = seen
                .iter()
                .map(|&l| weight_to[l as usize])
                .fold(f64::MIN, f64::max);
            winners.clear();
            winners.extend(seen.iter().copied().filter(|&l| weight_to[l as usize] == top));
            winners.sort_unstable();
            // a node keeps a label that is already maximal; ties between
            // other winners are broken at random
            if !winners.contains(&labels[i as usize]) {
                let pick = winners[rng.random_range(0..winners.len())];
                labels[i as usize] = pick;
                changed = true;
            }
            for &l in &seen {
                weight_to[l as usize] = 0.0;
            }
            seen.clear();
        }
        if !changed {
            break false;
        }
        if sweeps >= opts.max_sweeps {
            break true;
        }
    };

    let partition = Partition::from_labels(labels);
    let eval = modularity(g, &partition).expect("cover");
    let report = ModularityReport {
        q: eval.q,
        num_communities: partition.num_communities(),
        largest_fraction: partition.largest_fraction(),
        iterations: sweeps,
        sweep_capped: capped,
        degenerate: false,
    };
    (partition, report)
}

#[cfg(test)]
mod tests {
    use satcomm_graph::GraphBuilder;

    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> WeightedGraph {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v, 1.0);
        }
        b.build()
    }

    #[test]
    fn triangles_settle_into_two_communities_for_every_seed() {
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        for seed in 0..100 {
            let (p, report) = label_propagation(&g, &DetectOptions::seeded(seed));
            assert_eq!(report.num_communities, 2, "seed {seed}");
            let (compact, _) = p.compact();
            assert_eq!(compact.labels(), &[0, 0, 0, 1, 1, 1], "seed {seed}");
            assert!((report.q - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn complete_graph_collapses_to_one_label() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for seed in 0..100 {
            let (_, report) = label_propagation(&g, &DetectOptions::seeded(seed));
            assert_eq!(report.num_communities, 1, "seed {seed}");
        }
    }

    #[test]
    fn single_node_keeps_its_label() {
        let mut b = GraphBuilder::new(1);
        b.add_self_loop(0, 1.0);
        let (p, _) = label_propagation(&b.build(), &DetectOptions::default());
        assert_eq!(p.labels(), &[0]);

        // edgeless: degenerate path, identity partition
        let g = GraphBuilder::new(1).build();
        let (p, report) = label_propagation(&g, &DetectOptions::default());
        assert_eq!(p.labels(), &[0]);
        assert!(report.degenerate);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)]);
        let opts = DetectOptions::seeded(11);
        assert_eq!(label_propagation(&g, &opts), label_propagation(&g, &opts));
    }
}
